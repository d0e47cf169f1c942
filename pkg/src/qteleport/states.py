"""Preparation states, measurement states and post-selection.

Raw amplitudes and residuals are computed on the unnormalized vectors exactly
as written (so ``<delta|delta> = 2**n``). Probabilities always normalize both
the measurement bra and the measured state first.

A matrix ``M`` on ``n`` qubits is turned into a measurement state on ``2n``
qubits so that post-selecting it on the first ``2n`` qubits of
``|psi> (x) |delta>`` leaves ``M |psi>`` on the last ``n``. With row-major
flattening that means the coefficient at index ``a * 2**n + b`` is
``M[b, a]``: the first measured register contracts against ``psi`` and so
plays the role of the column index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import BasisError, InputError, ShapeError, SizeError
from .linalg import (
    DEFAULT_TOL,
    MAX_AMPLITUDES,
    Bra,
    Ket,
    as_matrix,
    ket_from_json,
    ket_to_json,
    num_qubits_for,
)

BASIS_TOL = 1e-8


@dataclass(frozen=True)
class PreparedState:
    ket: Ket
    label: str

    def __post_init__(self):
        if not self.label:
            raise InputError("prepared state needs a non-empty label")

    def to_json(self) -> dict:
        return {"label": self.label, "ket": ket_to_json(self.ket)}

    @classmethod
    def from_json(cls, obj: Any) -> PreparedState:
        if not isinstance(obj, dict) or not isinstance(obj.get("label"), str):
            raise InputError("prepared state JSON needs a string 'label' and a 'ket'")
        return cls(ket_from_json(obj.get("ket")), obj["label"])


@dataclass(frozen=True, eq=False)
class MeasurementState:
    """A bra on ``2n`` qubits together with the ``2**n x 2**n`` operator it
    transmits through ``|delta>``.

    ``bra.coefficients[a * 2**n + b] == matrix[b, a]`` always holds.
    """

    bra: Bra
    matrix: np.ndarray

    @property
    def num_qubits(self) -> int:
        return self.bra.num_qubits


@dataclass(frozen=True, eq=False)
class PostSelectionResult:
    residual: Ket
    normalized_residual: Ket | None
    success_probability: float
    amplitude: complex | None = None

    @property
    def succeeded(self) -> bool:
        return self.normalized_residual is not None


def _square_qubits(m: np.ndarray) -> int:
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got {m.shape}")
    n = num_qubits_for(m.shape[0])
    if 4**n > MAX_AMPLITUDES:
        raise SizeError(f"a {2 * n}-qubit state exceeds the amplitude cap")
    return n


def delta_state(n: int) -> PreparedState:
    """``sum_a |a, a>`` over all ``n``-bit strings ``a``; squared norm ``2**n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if 4**n > MAX_AMPLITUDES:
        raise SizeError(f"delta state on {2 * n} qubits exceeds the amplitude cap")
    dim = 2**n
    v = np.zeros(dim * dim, dtype=np.complex128)
    v[np.arange(dim) * (dim + 1)] = 1.0
    return PreparedState(Ket(v, 2 * n), f"delta[{n}]")


def cup_state_from_matrix(m: Any) -> PreparedState:
    """``sum_ab m[a, b] |a>|b>``, the preparation attached to a minimum."""
    m = as_matrix(m)
    n = _square_qubits(m)
    return PreparedState(Ket(m.reshape(-1), 2 * n), "cup")


def measurement_state_from_matrix(m: Any) -> MeasurementState:
    """Measurement state that transmits ``m`` through ``|delta>``."""
    m = as_matrix(m)
    _square_qubits(m)
    return MeasurementState(Bra(np.ascontiguousarray(m.T).reshape(-1)), m)


def cap_state_from_matrix(m: Any) -> MeasurementState:
    """``sum_ab m[a, b] <a|<b|`` with coefficients placed as given.

    This is the bra attached to a maximum; it transmits ``m.T``.
    """
    return measurement_state_from_matrix(as_matrix(m).T)


def post_select(ms: MeasurementState, state: Ket) -> PostSelectionResult:
    """Post-select ``ms`` on the leading qubits of ``state``.

    ``residual[j] = sum_i bra[i] * state[i * 2**k + j]`` where ``k`` is the
    number of unmeasured qubits. The success probability uses the normalized
    bra and the normalized state. A zero residual is a valid outcome with
    probability 0 and no normalized residual.
    """
    m = ms.bra.num_qubits
    if state.num_qubits < m:
        raise ShapeError(f"cannot measure {m} qubits of a {state.num_qubits}-qubit state")
    snorm, bnorm = state.norm(), ms.bra.norm()
    if snorm == 0.0:
        raise InputError("cannot post-select on the zero state")
    k = state.num_qubits - m
    block = state.amplitudes.reshape(2**m, 2**k)
    raw = ms.bra.coefficients @ block
    residual = Ket(raw, k)
    rnorm = residual.norm()
    prob = 0.0 if bnorm == 0.0 else min(1.0, (rnorm / (bnorm * snorm)) ** 2)
    return PostSelectionResult(
        residual=residual,
        normalized_residual=residual.normalized() if rnorm > 0.0 else None,
        success_probability=prob,
        amplitude=complex(raw[0]) if k == 0 else None,
    )


def check_basis(basis: Sequence[MeasurementState], tol: float = BASIS_TOL) -> np.ndarray:
    """Return the normalized bras as rows; raise :class:`BasisError` unless they
    are pairwise orthogonal and resolve the identity on the measured qubits."""
    if not basis:
        raise BasisError("empty basis")
    dims = {ms.bra.dim for ms in basis}
    if len(dims) != 1:
        raise BasisError(f"basis bras act on different dimensions {sorted(dims)}")
    rows = np.array([ms.bra.coefficients for ms in basis])
    norms = np.linalg.norm(rows, axis=1)
    if np.any(norms == 0.0):
        raise BasisError("basis contains a zero bra")
    rows = rows / norms[:, None]
    gram = rows.conj() @ rows.T
    off = np.max(np.abs(gram - np.eye(len(basis))))
    if off > tol:
        raise BasisError(f"basis is not orthogonal (max overlap deviation {off:.3g})")
    completeness = rows.T @ rows.conj()
    gap = np.max(np.abs(completeness - np.eye(rows.shape[1])))
    if gap > tol:
        raise BasisError(f"basis is incomplete (projector sum deviates by {gap:.3g})")
    return rows


def born_distribution(basis: Sequence[MeasurementState], state: Ket) -> np.ndarray:
    """Outcome probabilities for measuring ``basis`` on the leading qubits."""
    rows = check_basis(basis)
    m = basis[0].bra.num_qubits
    if state.num_qubits < m:
        raise ShapeError(f"cannot measure {m} qubits of a {state.num_qubits}-qubit state")
    block = state.normalized().amplitudes.reshape(2**m, -1)
    probs = np.sum(np.abs(rows @ block) ** 2, axis=1)
    total = probs.sum()
    if abs(total - 1.0) > DEFAULT_TOL:
        raise BasisError(f"probabilities sum to {total!r}")
    return probs


def is_entangled_two_qubit(state: Ket, tol: float = DEFAULT_TOL) -> bool:
    """A two-qubit state is entangled exactly when its 2x2 amplitude matrix is
    invertible; tested as ``|det| > tol * norm**2``."""
    if state.num_qubits != 2:
        raise ShapeError(f"expected a two-qubit state, got {state.num_qubits} qubits")
    norm2 = state.norm() ** 2
    if norm2 == 0.0:
        raise InputError("the zero vector is not a state")
    (a, b), (c, d) = state.amplitudes.reshape(2, 2)
    return bool(abs(a * d - b * c) > tol * norm2)


def phase_equal(a: Ket, b: Ket, tol: float = DEFAULT_TOL) -> bool:
    """Same ray: ``|<a|b>| >= 1 - tol`` after normalizing both."""
    if a.num_qubits != b.num_qubits:
        raise ShapeError(f"{a.num_qubits} vs {b.num_qubits} qubits")
    if a.norm() == 0.0 or b.norm() == 0.0:
        raise InputError("phase comparison with the zero vector")
    overlap = abs(np.vdot(a.normalized().amplitudes, b.normalized().amplitudes))
    return bool(overlap >= 1.0 - tol)
