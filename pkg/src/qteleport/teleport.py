"""Gate teleportation over the real Pauli basis.

Alice holds ``|psi>`` on ``n`` qubits and shares ``|delta>`` with Bob. To
teleport a unitary ``U`` she measures the first ``2n`` qubits of
``|psi>|delta>`` in the basis of measurement states for ``T_L @ U``, where
``T_L`` ranges over the ``4**n`` Pauli words. Outcome ``L`` leaves Bob with
``T_L U |psi>``; she sends him the ``2n`` bits of ``L`` and he undoes ``T_L``.

The per-qubit Paulis are the real forms I, X, Y = [[0, 1], [-1, 0]] and Z.
Y squares to ``-I``, so Bob's correction uses the true inverse ``Y.T``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import ConsistencyError, InputError, PreconditionError, ShapeError, VerificationError
from .linalg import (
    DEFAULT_TOL,
    MAX_SIDE,
    Ket,
    as_matrix,
    is_unitary,
    ket_to_json,
    kron,
    matrix_to_json,
    num_qubits_for,
)
from .states import (
    BASIS_TOL,
    MeasurementState,
    born_distribution,
    check_basis,
    delta_state,
    measurement_state_from_matrix,
    phase_equal,
    post_select,
)


class PauliLabel(NamedTuple):
    """Bit pair selecting a real Pauli: 00=I, 01=X, 10=Y, 11=Z."""

    a: int
    b: int

    def __str__(self):
        return f"{self.a}{self.b}"

    @classmethod
    def parse(cls, s: str) -> PauliLabel:
        if len(s) != 2 or any(c not in "01" for c in s):
            raise InputError(f"bad Pauli label {s!r}")
        return cls(int(s[0]), int(s[1]))


I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
for _m in (I2, X, Y, Z):
    _m.setflags(write=False)

# Standard Hermitian Paulis, for reference and conversion.
SIGMA_1 = X
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_3 = Z

_PAULIS = {(0, 0): I2, (0, 1): X, (1, 0): Y, (1, 1): Z}
LABELS = tuple(PauliLabel(a, b) for a, b in _PAULIS)


def pauli(label: tuple[int, int]) -> np.ndarray:
    try:
        return _PAULIS[tuple(label)]
    except KeyError:
        raise InputError(f"Pauli label must be a pair of bits, got {label!r}") from None


def pauli_word(labels: Sequence[tuple[int, int]]) -> np.ndarray:
    """Kronecker product of the per-qubit Paulis, first label outermost."""
    if not labels:
        raise InputError("empty Pauli word")
    out = pauli(labels[0])
    for lab in labels[1:]:
        out = kron(out, pauli(lab), max_side=MAX_SIDE)
    return as_matrix(out)


def label_words(n: int) -> list[tuple[PauliLabel, ...]]:
    """All ``4**n`` Pauli words in lexicographic order of their bit pairs."""
    return list(itertools.product(LABELS, repeat=n))


def is_scaled_special_unitary(m: Any, tol: float = DEFAULT_TOL) -> bool:
    """Is ``m`` a complex multiple of ``[[z, w], [-conj(w), conj(z)]]``?

    Tested as ``m^dagger m = lam I`` and ``|det m| = lam`` with
    ``lam = ||m||_F**2 / 2``, both to relative tolerance ``tol``. The zero
    matrix is rejected.
    """
    m = as_matrix(m)
    if m.shape != (2, 2):
        raise ShapeError(f"expected 2x2, got {m.shape}")
    lam = float(np.sum(np.abs(m) ** 2)) / 2.0
    if lam == 0.0:
        return False
    gram_ok = np.max(np.abs(m.conj().T @ m - lam * np.eye(2))) <= tol * lam
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return bool(gram_ok and abs(abs(det) - lam) <= tol * lam)


def pauli_orbit_orthogonal(m: Any, tol: float = BASIS_TOL) -> bool:
    """Are the measurement states of ``m, Xm, Ym, Zm`` pairwise orthogonal?"""
    m = as_matrix(m)
    if m.shape != (2, 2):
        raise ShapeError(f"expected 2x2, got {m.shape}")
    rows = np.array([measurement_state_from_matrix(p @ m).bra.coefficients for p in (I2, X, Y, Z)])
    norms = np.linalg.norm(rows, axis=1)
    if np.any(norms == 0.0):
        return False
    rows = rows / norms[:, None]
    gram = rows.conj() @ rows.T
    return bool(np.max(np.abs(gram - np.diag(np.diag(gram)))) <= tol)


def measurement_basis_for(u: Any) -> list[MeasurementState]:
    """Measurement states for ``T_L @ u`` over every Pauli word ``L``, in
    :func:`label_words` order."""
    u = as_matrix(u)
    n = num_qubits_for(u.shape[0]) if u.shape[0] == u.shape[1] else -1
    if n < 1:
        raise ShapeError(f"gate must be square with side 2**n, n >= 1; got {u.shape}")
    if not is_unitary(u, DEFAULT_TOL):
        raise PreconditionError("gate is not unitary")
    basis = [measurement_state_from_matrix(pauli_word(w) @ u) for w in label_words(n)]
    try:
        check_basis(basis)
    except Exception as exc:
        raise ConsistencyError(f"Pauli-rotated basis failed its orthogonality check: {exc}") from exc
    return basis


def classical_bit_cost(n: int) -> int:
    """Bits Alice sends to name one of ``4**n`` outcomes."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2 * n


@dataclass(frozen=True)
class ClassicalMessage:
    """What crosses from Alice to Bob. A failed measurement is the empty word."""

    labels: tuple[PauliLabel, ...]
    success: bool = True

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(PauliLabel(*lab) for lab in self.labels))
        if not self.success and self.labels:
            raise InputError("a failure message carries no labels")
        if self.success and not self.labels:
            raise InputError("a success message needs at least one label")

    @classmethod
    def failure(cls) -> ClassicalMessage:
        return cls((), success=False)

    @property
    def bits(self) -> str:
        return "".join(str(lab) for lab in self.labels)

    @classmethod
    def from_bits(cls, bits: str) -> ClassicalMessage:
        if not bits:
            return cls.failure()
        if len(bits) % 2:
            raise InputError("message must have an even number of bits")
        return cls(tuple(PauliLabel.parse(bits[k:k + 2]) for k in range(0, len(bits), 2)))


@dataclass(frozen=True, eq=False)
class TeleportSession:
    n: int
    psi: Ket
    gate: np.ndarray
    outcome: tuple[PauliLabel, ...]
    message: ClassicalMessage
    bob_raw: Ket | None
    bob_corrected: Ket | None
    rng_seed: int
    probabilities: np.ndarray | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "psi": ket_to_json(self.psi),
            "gate": matrix_to_json(self.gate),
            "outcome": [str(lab) for lab in self.outcome],
            "message": {"success": self.message.success, "bits": self.message.bits},
            "bob_raw": None if self.bob_raw is None else ket_to_json(self.bob_raw),
            "bob_corrected": None if self.bob_corrected is None else ket_to_json(self.bob_corrected),
            "seed": self.rng_seed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def alice_measure(psi: Ket, u: Any, word: Sequence[tuple[int, int]]) -> Ket | None:
    """Bob's normalized state after Alice succeeds with outcome ``word``.

    Returns None if that outcome has zero amplitude.
    """
    u = as_matrix(u)
    n = psi.num_qubits
    ms = measurement_state_from_matrix(pauli_word(word) @ u)
    return post_select(ms, psi.tensor(delta_state(n).ket)).normalized_residual


def bob_correct(received: Ket, message: ClassicalMessage) -> Ket:
    """Undo the Pauli word named in ``message``.

    Real Paulis are orthogonal, so the transpose is the exact inverse.
    """
    if not message.success:
        raise InputError("nothing to correct after a failed measurement")
    if len(message.labels) != received.num_qubits:
        raise ShapeError(f"{len(message.labels)} labels for a {received.num_qubits}-qubit state")
    return received.apply(pauli_word(message.labels).T)


def _check_inputs(n: int, psi: Ket, u: Any) -> np.ndarray:
    if n < 1:
        raise PreconditionError("n must be positive")
    if psi.num_qubits != n:
        raise PreconditionError(f"psi has {psi.num_qubits} qubits, expected {n}")
    if psi.norm() == 0.0:
        raise PreconditionError("psi is the zero vector")
    u = as_matrix(u)
    if u.shape != (2**n, 2**n):
        raise PreconditionError(f"gate shape {u.shape} does not act on {n} qubits")
    if not is_unitary(u, DEFAULT_TOL):
        raise PreconditionError("gate is not unitary")
    return u


def sample_index(probs: np.ndarray, rng: np.random.Generator) -> int:
    """Inverse-CDF draw over ``probs`` in the given order."""
    cdf = np.cumsum(probs)
    return int(min(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"), len(probs) - 1))


def run_teleportation(n: int, psi: Ket, u: Any, seed: int, *, inject_failure: bool = False,
                      tol: float = DEFAULT_TOL) -> TeleportSession:
    """Teleport ``u`` applied to ``psi`` using a seeded PCG64 stream.

    Alice's side samples the outcome and produces a :class:`ClassicalMessage`;
    Bob's side sees only that message and his share of the state.
    ``inject_failure`` replaces the message with the failure word so harnesses
    can exercise Bob's failure path.
    """
    if seed < 0:
        raise InputError("seed must be non-negative")
    u = _check_inputs(n, psi, u)
    words = label_words(n)
    basis = measurement_basis_for(u)
    state = psi.tensor(delta_state(n).ket)
    probs = born_distribution(basis, state)
    rng = np.random.default_rng(seed)
    k = sample_index(probs, rng)
    outcome = tuple(words[k])

    if inject_failure:
        return TeleportSession(n, psi, u, outcome, ClassicalMessage.failure(), None, None, seed, probs)

    message = ClassicalMessage(outcome)
    bob_raw = post_select(basis[k], state).normalized_residual
    if bob_raw is None:
        raise ConsistencyError(f"sampled outcome {k} has zero amplitude")
    bob_corrected = bob_correct(bob_raw, message)
    if not phase_equal(bob_corrected, psi.normalized().apply(u), tol):
        raise VerificationError("Bob's corrected state differs from U|psi>")
    return TeleportSession(n, psi, u, outcome, message, bob_raw, bob_corrected, seed, probs)
