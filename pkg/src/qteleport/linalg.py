"""Dense complex linear algebra over qubit registers.

Matrices are plain two-dimensional ``complex128`` numpy arrays, checked on the
way in by :func:`as_matrix`. Kets and bras are small immutable wrappers that
carry their qubit count alongside the amplitude vector.

Index convention: a bit-string ``(b1, ..., bn)`` maps to the integer with
``b1`` as the most significant bit, so the leftmost tensor factor is the
high-order block and ``|a>|b>`` sits at index ``a * 2**len(b) + b``. This is
the same ordering ``np.kron`` uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import InputError, ShapeError, SizeError

DEFAULT_TOL = 1e-10
MAX_SIDE = 2**12
MAX_AMPLITUDES = 2**24


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_matrix(a: Any) -> np.ndarray:
    """Coerce ``a`` to a finite, read-only 2-D complex array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError("matrix has non-finite entries")
    return _frozen(m)


def num_qubits_for(dim: int) -> int:
    """Return ``n`` with ``2**n == dim``, or raise :class:`ShapeError`."""
    if dim < 1 or dim & (dim - 1):
        raise ShapeError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def kron(a: Any, b: Any, max_side: int = MAX_SIDE) -> np.ndarray:
    """Kronecker product with ``a`` as the outer (high-order) block."""
    a, b = as_matrix(a), as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > max_side:
        raise SizeError(f"kron result {rows}x{cols} exceeds {max_side} on a side")
    return _frozen(np.kron(a, b))


def matmul(a: Any, b: Any) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return _frozen(a @ b)


def dagger(a: Any) -> np.ndarray:
    """Conjugate transpose."""
    return _frozen(np.ascontiguousarray(as_matrix(a).conj().T))


def trace(a: Any) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"trace of non-square matrix {a.shape}")
    return complex(np.trace(a))


def approx_eq(a: Any, b: Any, tol: float = DEFAULT_TOL) -> bool:
    """True iff the largest entrywise modulus of ``a - b`` is at most ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return bool(np.max(np.abs(a - b)) <= tol)


def is_unitary(u: Any, tol: float = DEFAULT_TOL) -> bool:
    """``max |u^dagger u - I| <= tol`` for square ``u``."""
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def _as_amplitudes(amplitudes: Any) -> tuple[int, np.ndarray]:
    v = np.array(amplitudes, dtype=np.complex128)
    if v.ndim != 1:
        raise ShapeError(f"amplitudes must be 1-D, got shape {v.shape}")
    if v.size > MAX_AMPLITUDES:
        raise SizeError(f"{v.size} amplitudes exceeds cap of {MAX_AMPLITUDES}")
    n = num_qubits_for(v.size)
    if not np.all(np.isfinite(v)):
        raise InputError("amplitudes must be finite")
    return n, _frozen(v)


@dataclass(frozen=True, eq=False)
class Ket:
    """State vector over ``num_qubits`` qubits; normalization is not enforced."""

    amplitudes: np.ndarray
    num_qubits: int = -1

    def __post_init__(self):
        n, v = _as_amplitudes(self.amplitudes)
        if self.num_qubits not in (-1, n):
            raise ShapeError(f"{v.size} amplitudes do not match {self.num_qubits} qubits")
        object.__setattr__(self, "amplitudes", v)
        object.__setattr__(self, "num_qubits", n)

    @classmethod
    def basis(cls, bits: str) -> Ket:
        """Computational basis ket, e.g. ``Ket.basis("01")``."""
        v = np.zeros(2 ** len(bits), dtype=np.complex128)
        v[int(bits, 2) if bits else 0] = 1.0
        return cls(v)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> Ket:
        nrm = self.norm()
        if nrm == 0.0:
            raise InputError("cannot normalize the zero ket")
        return Ket(self.amplitudes / nrm)

    def tensor(self, other: Ket) -> Ket:
        return Ket(np.kron(self.amplitudes, other.amplitudes))

    def apply(self, m: Any) -> Ket:
        """Return ``m |self>``."""
        m = as_matrix(m)
        if m.shape[1] != self.dim:
            raise ShapeError(f"{m.shape} matrix cannot act on {self.dim} amplitudes")
        return Ket(m @ self.amplitudes)

    def dual(self) -> Bra:
        """The conjugated dual ``<self|``."""
        return Bra(self.amplitudes.conj())

    def __repr__(self):
        return f"Ket(num_qubits={self.num_qubits}, amplitudes={self.amplitudes.tolist()})"


@dataclass(frozen=True, eq=False)
class Bra:
    """Covector whose coefficients are stored exactly as given.

    ``Bra(c).pair(Ket(psi))`` is ``sum(c * psi)``; nothing is conjugated. Use
    :meth:`Ket.dual` to get the conjugate dual of a ket.
    """

    coefficients: np.ndarray
    num_qubits: int = -1

    def __post_init__(self):
        n, v = _as_amplitudes(self.coefficients)
        if self.num_qubits not in (-1, n):
            raise ShapeError(f"{v.size} coefficients do not match {self.num_qubits} qubits")
        object.__setattr__(self, "coefficients", v)
        object.__setattr__(self, "num_qubits", n)

    @property
    def dim(self) -> int:
        return self.coefficients.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def normalized(self) -> Bra:
        nrm = self.norm()
        if nrm == 0.0:
            raise InputError("cannot normalize the zero bra")
        return Bra(self.coefficients / nrm)

    def pair(self, ket: Ket) -> complex:
        if ket.dim != self.dim:
            raise ShapeError(f"bra on {self.num_qubits} qubits vs ket on {ket.num_qubits}")
        return complex(self.coefficients @ ket.amplitudes)

    def __repr__(self):
        return f"Bra(num_qubits={self.num_qubits}, coefficients={self.coefficients.tolist()})"


# -- JSON codecs ---------------------------------------------------------------


def _pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def _unpairs(entries: Any, expected: int, what: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != expected:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise InputError(f"{what}: expected {expected} entries, got {got}")
    out = np.empty(expected, dtype=np.complex128)
    for k, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise InputError(f"{what}: entry {k} is not a [re, im] pair of numbers")
        re, im = float(pair[0]), float(pair[1])
        if not (np.isfinite(re) and np.isfinite(im)):
            raise InputError(f"{what}: entry {k} is not finite")
        out[k] = complex(re, im)
    return out


def matrix_to_json(m: Any) -> dict:
    m = as_matrix(m)
    return {"rows": m.shape[0], "cols": m.shape[1], "entries": _pairs(m.ravel())}


def matrix_from_json(obj: Any) -> np.ndarray:
    if not isinstance(obj, dict):
        raise InputError("matrix JSON must be an object")
    rows, cols = obj.get("rows"), obj.get("cols")
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise InputError("matrix JSON needs positive integer 'rows' and 'cols'")
    if max(rows, cols) > MAX_SIDE:
        raise SizeError(f"matrix {rows}x{cols} exceeds {MAX_SIDE} on a side")
    flat = _unpairs(obj.get("entries"), rows * cols, "matrix")
    return as_matrix(flat.reshape(rows, cols))


def ket_to_json(ket: Ket) -> dict:
    return {"qubits": ket.num_qubits, "amplitudes": _pairs(ket.amplitudes)}


def ket_from_json(obj: Any) -> Ket:
    if not isinstance(obj, dict):
        raise InputError("ket JSON must be an object")
    n = obj.get("qubits")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError("ket JSON needs a non-negative integer 'qubits'")
    if 2**n > MAX_AMPLITUDES:
        raise SizeError(f"{n} qubits exceeds the amplitude cap")
    return Ket(_unpairs(obj.get("amplitudes"), 2**n, "ket"), n)
