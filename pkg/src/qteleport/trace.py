"""|tr(U)| from preparing ``|delta>``, applying ``U (x) I`` and post-selecting
``<delta|``.

The raw amplitude ``<delta| U (x) I |delta>`` equals ``tr(U)``. With both
copies of ``|delta>`` normalized the amplitude is ``tr(U) / 2**n``, so one
trial succeeds with probability ``|tr(U)|**2 / 4**n``. That is always a valid
probability (it is 1 exactly when ``U`` is a phase times the identity), and
``2**n * sqrt(successes / shots)`` recovers ``|tr(U)|``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from .errors import InputError, PreconditionError, ShapeError
from .linalg import DEFAULT_TOL, as_matrix, is_unitary, num_qubits_for
from .states import delta_state, measurement_state_from_matrix, post_select


@dataclass(frozen=True)
class TraceEstimate:
    n: int
    shots: int
    successes: int
    estimate: float
    std_error: float
    exact_abs_trace: float
    seed: int
    std_error_is_upper_bound: bool = False

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _qubits(u: np.ndarray) -> int:
    if u.shape[0] != u.shape[1]:
        raise ShapeError(f"expected a square matrix, got {u.shape}")
    n = num_qubits_for(u.shape[0])
    if n < 1:
        raise ShapeError("gate must act on at least one qubit")
    return n


def exact_trace_amplitude(u: Any) -> complex:
    """``<delta| (u (x) I) |delta>`` with unnormalized ``|delta>``.

    Built from the state machinery rather than the diagonal, so it doubles as
    a check of it. ``u`` need not be unitary.
    """
    u = as_matrix(u)
    n = _qubits(u)
    delta = delta_state(n).ket
    evolved = delta.apply(np.kron(u, np.eye(2**n)))
    # <delta| has coefficient 1 on every |a, a>, i.e. the measurement state of I.
    return post_select(measurement_state_from_matrix(np.eye(2**n)), evolved).amplitude


def _check_unitary(u: Any) -> tuple[np.ndarray, int]:
    u = as_matrix(u)
    n = _qubits(u)
    if not is_unitary(u, DEFAULT_TOL):
        raise PreconditionError("gate is not unitary")
    return u, n


def success_probability(u: Any) -> float:
    """Probability that one trial post-selects ``<delta|``: ``|tr u|**2 / 4**n``."""
    u, n = _check_unitary(u)
    return min(1.0, abs(exact_trace_amplitude(u)) ** 2 / 4**n)


def estimate_abs_trace(u: Any, shots: int, seed: int) -> TraceEstimate:
    """Monte Carlo estimate of ``|tr u|`` from ``shots`` Bernoulli trials.

    The standard error propagates the binomial error of the success rate
    through ``2**n * sqrt(p)``. With no successes that derivative blows up, so
    the one-sided 95% bound ``2**n * sqrt(3 / shots)`` is reported instead and
    flagged.
    """
    if isinstance(shots, bool) or not isinstance(shots, (int, np.integer)) or shots < 1:
        raise InputError("shots must be a positive integer")
    if seed < 0:
        raise InputError("seed must be non-negative")
    u, n = _check_unitary(u)
    p = success_probability(u)
    rng = np.random.default_rng(seed)
    successes = int(np.count_nonzero(rng.random(int(shots)) < p))
    scale = 2.0**n
    p_hat = successes / shots
    bound = False
    if successes == 0:
        std_error = scale * math.sqrt(3.0 / shots)
        bound = True
    else:
        std_error = scale * math.sqrt(p_hat * (1.0 - p_hat) / shots) / (2.0 * math.sqrt(p_hat))
    return TraceEstimate(
        n=n,
        shots=int(shots),
        successes=successes,
        estimate=scale * math.sqrt(p_hat),
        std_error=std_error,
        exact_abs_trace=float(abs(np.trace(u))),
        seed=int(seed),
        std_error_is_upper_bound=bound,
    )
