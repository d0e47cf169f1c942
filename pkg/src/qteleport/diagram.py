"""Planar cup/cap diagrams and their evaluation to linear maps.

A diagram is a stack of horizontal slices read bottom to top. Each slice is a
left-to-right row of generators: an identity wire, a cup (minimum, two wires
created from nothing) or a cap (maximum, two wires annihilated). Every cup and
cap names a 2x2 matrix in the diagram's matrix table. For a cup matrix ``A``
the cup is the column vector with ``A[a, b]`` at index ``2a + b``; for a cap
matrix ``B`` the cap is the row vector with ``B[a, b]`` at the same index.

Evaluating a closed diagram gives a 1x1 matrix, the amplitude of the curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import InputError, ShapeError, ValidationError
from .linalg import DEFAULT_TOL, MAX_SIDE, as_matrix, kron, matrix_from_json, matrix_to_json

ID, CUP, CAP = "id", "cup", "cap"

_ARITY = {ID: (1, 1), CUP: (0, 2), CAP: (2, 0)}


@dataclass(frozen=True)
class Generator:
    kind: str
    matrix: str | None = None

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise InputError(f"unknown generator kind {self.kind!r}")
        if self.kind == ID and self.matrix is not None:
            raise InputError("identity wire takes no matrix")
        if self.kind != ID and not self.matrix:
            raise InputError(f"{self.kind} needs a matrix name")

    @property
    def inputs(self) -> int:
        return _ARITY[self.kind][0]

    @property
    def outputs(self) -> int:
        return _ARITY[self.kind][1]


def wire() -> Generator:
    return Generator(ID)


def cup(name: str) -> Generator:
    return Generator(CUP, name)


def cap(name: str) -> Generator:
    return Generator(CAP, name)


def slice_arity(generators: Sequence[Generator]) -> tuple[int, int]:
    return sum(g.inputs for g in generators), sum(g.outputs for g in generators)


@dataclass(frozen=True)
class Diagnostic:
    slice_index: int
    generator_index: int | None
    message: str

    def __str__(self):
        where = f"slice {self.slice_index}"
        if self.generator_index is not None:
            where += f", generator {self.generator_index}"
        return f"{where}: {self.message}"


@dataclass(frozen=True)
class Diagram:
    """Slices listed bottom first, plus the table of 2x2 cup/cap matrices."""

    slices: tuple[tuple[Generator, ...], ...]
    matrices: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(tuple(s) for s in self.slices))
        object.__setattr__(self, "matrices", {k: as_matrix(v) for k, v in self.matrices.items()})

    @property
    def input_arity(self) -> int:
        return slice_arity(self.slices[0])[0] if self.slices else 0

    @property
    def output_arity(self) -> int:
        return slice_arity(self.slices[-1])[1] if self.slices else 0


def validate(d: Diagram) -> list[Diagnostic]:
    """Return arity and name problems in ``d``; an empty list means valid.

    Diagnostics are reported in bottom-to-top, left-to-right order, so the
    first entry names the first offending slice or generator.
    """
    problems = []
    if not d.slices:
        problems.append(Diagnostic(0, None, "diagram has no slices"))
    for name, m in d.matrices.items():
        if m.shape != (2, 2):
            problems.append(Diagnostic(0, None, f"matrix {name!r} is {m.shape}, expected 2x2"))
    prev_out = None
    for k, gens in enumerate(d.slices):
        for j, g in enumerate(gens):
            if g.matrix is not None and g.matrix not in d.matrices:
                problems.append(Diagnostic(k, j, f"unknown matrix {g.matrix!r}"))
        n_in, n_out = slice_arity(gens)
        if prev_out is not None and n_in != prev_out:
            problems.append(
                Diagnostic(k, None, f"arity mismatch: slice consumes {n_in} wires, "
                                    f"slice below produces {prev_out}")
            )
        prev_out = n_out
    return sorted(problems, key=lambda p: (p.slice_index, -1 if p.generator_index is None else p.generator_index))


def _generator_map(g: Generator, matrices: Mapping[str, np.ndarray]) -> np.ndarray:
    if g.kind == ID:
        return np.eye(2, dtype=np.complex128)
    flat = matrices[g.matrix].reshape(4)
    return flat.reshape(4, 1) if g.kind == CUP else flat.reshape(1, 4)


def slice_map(gens: Sequence[Generator], matrices: Mapping[str, np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for g in gens:
        out = kron(out, _generator_map(g, matrices), max_side=MAX_SIDE)
    return out


def evaluate(d: Diagram) -> np.ndarray:
    """Compose the slices bottom to top into a ``2**out x 2**in`` matrix."""
    problems = validate(d)
    if problems:
        raise ValidationError(problems)
    total = np.eye(2**d.input_arity, dtype=np.complex128)
    for gens in d.slices:
        total = slice_map(gens, d.matrices) @ total
    return as_matrix(total)


def amplitude(d: Diagram) -> complex:
    """Scalar value of a closed diagram."""
    m = evaluate(d)
    if m.shape != (1, 1):
        raise ShapeError(f"diagram is open ({d.input_arity} in, {d.output_arity} out)")
    return complex(m[0, 0])


def _check_2x2(*ms: Any) -> list[np.ndarray]:
    out = [as_matrix(m) for m in ms]
    for m in out:
        if m.shape != (2, 2):
            raise ShapeError(f"expected 2x2, got {m.shape}")
    return out


def compose_min_max(m_cap: Any, m_cup: Any) -> np.ndarray:
    """``N[a, b] = sum_i m_cap[a, i] * m_cup[i, b]``, the matrix of a maximum
    concatenated with a minimum."""
    m_cap, m_cup = _check_2x2(m_cap, m_cup)
    return as_matrix(m_cap @ m_cup)


def is_topological(m_cap: Any, m_cup: Any, tol: float = DEFAULT_TOL) -> bool:
    """Both zig-zags straighten: ``cap @ cup == I`` and ``cup @ cap == I``."""
    m_cap, m_cup = _check_2x2(m_cap, m_cup)
    eye = np.eye(2)
    return bool(
        np.max(np.abs(m_cap @ m_cup - eye)) <= tol
        and np.max(np.abs(m_cup @ m_cap - eye)) <= tol
    )


# -- common shapes ---------------------------------------------------------------


def circle(cup_matrix: Any, cap_matrix: Any) -> Diagram:
    return Diagram(
        slices=[[cup("A")], [cap("B")]],
        matrices={"A": cup_matrix, "B": cap_matrix},
    )


def zigzag(cup_matrix: Any, cap_matrix: Any, left: bool = True) -> Diagram:
    """Single wire with a cup/cap kink.

    ``left=True`` is ``(1 x cup)`` then ``(cap x 1)``, which evaluates to
    ``(cap @ cup).T``; ``left=False`` mirrors it and evaluates to ``cup @ cap``.
    """
    if left:
        slices = [[wire(), cup("A")], [cap("B"), wire()]]
    else:
        slices = [[cup("A"), wire()], [wire(), cap("B")]]
    return Diagram(slices=slices, matrices={"A": cup_matrix, "B": cap_matrix})


def straighten(d: Diagram, slice_index: int, position: int, cup_name: str,
               cap_name: str) -> Diagram:
    """Replace one identity wire with a left zig-zag built from the named
    matrices; the value is unchanged when they are mutual inverses."""
    gens = list(d.slices[slice_index])
    if gens[position].kind != ID:
        raise InputError(f"generator {position} of slice {slice_index} is not a wire")
    before, after = gens[:position], gens[position + 1:]
    below = (
        [wire()] * sum(g.inputs for g in before)
        + [wire(), cup(cup_name)]
        + [wire()] * sum(g.inputs for g in after)
    )
    kinked = before + [cap(cap_name), wire()] + after
    slices = list(d.slices)
    slices[slice_index:slice_index + 1] = [below, kinked]
    return Diagram(slices=slices, matrices=d.matrices)


# -- JSON ------------------------------------------------------------------------


def _generator_from_json(obj: Any, k: int, j: int) -> Generator:
    if not isinstance(obj, dict) or "g" not in obj:
        raise InputError(f"slice {k}, generator {j}: expected an object with key 'g'")
    kind = obj["g"]
    if kind == ID:
        return wire()
    if kind in (CUP, CAP):
        name = obj.get("m")
        if not isinstance(name, str) or not name:
            raise InputError(f"slice {k}, generator {j}: {kind} needs a matrix name 'm'")
        return Generator(kind, name)
    raise InputError(f"slice {k}, generator {j}: unknown generator {kind!r}")


def diagram_from_json(obj: Any) -> Diagram:
    if not isinstance(obj, dict):
        raise InputError("diagram JSON must be an object")
    mats = obj.get("matrices", {})
    slices = obj.get("slices")
    if not isinstance(mats, dict):
        raise InputError("'matrices' must be an object")
    if not isinstance(slices, list) or not all(isinstance(s, list) for s in slices):
        raise InputError("'slices' must be a list of lists")
    return Diagram(
        slices=[[_generator_from_json(g, k, j) for j, g in enumerate(s)] for k, s in enumerate(slices)],
        matrices={name: matrix_from_json(m) for name, m in mats.items()},
    )


def diagram_to_json(d: Diagram) -> dict:
    def gen(g: Generator) -> dict:
        return {"g": g.kind} if g.kind == ID else {"g": g.kind, "m": g.matrix}

    return {
        "matrices": {k: matrix_to_json(v) for k, v in d.matrices.items()},
        "slices": [[gen(g) for g in s] for s in d.slices],
    }
