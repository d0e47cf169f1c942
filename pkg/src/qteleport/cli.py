"""Command-line front end over JSON files.

Exit codes: 0 success, 2 bad input or failed validation, 3 I/O failure,
4 ``--verify`` failure, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

import numpy as np

from . import diagram, states, teleport, trace
from .errors import (
    ConsistencyError,
    PreconditionError,
    QTeleportError,
    ValidationError,
    VerificationError,
)
from .linalg import DEFAULT_TOL, ket_from_json, matrix_from_json, matrix_to_json

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_VERIFY, EXIT_CONSISTENCY = 0, 2, 3, 4, 5


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


def _load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: invalid JSON: {exc}") from exc


def _reject_constant(name: str):
    raise ValueError(f"non-finite number {name}")


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def cmd_diagram_eval(args) -> dict:
    d = diagram.diagram_from_json(_load(args.diagram))
    problems = diagram.validate(d)
    if problems:
        raise ValidationError(problems)
    m = diagram.evaluate(d)
    if m.shape == (1, 1):
        z = complex(m[0, 0])
        return {"amplitude": [z.real, z.imag]}
    return matrix_to_json(m)


def cmd_teleport(args) -> dict:
    psi = ket_from_json(_load(args.psi))
    gate = matrix_from_json(_load(args.gate))
    session = teleport.run_teleportation(psi.num_qubits, psi, gate, args.seed, tol=args.tol)
    if args.verify:
        expected = psi.normalized().apply(gate)
        if session.bob_corrected is None or not states.phase_equal(session.bob_corrected, expected, args.tol):
            raise VerificationError("Bob's corrected state is not U|psi>")
    return session.to_json()


def cmd_trace(args) -> dict:
    gate = matrix_from_json(_load(args.gate))
    return trace.estimate_abs_trace(gate, args.shots, args.seed).to_json()


def cmd_basis_check(args) -> dict:
    m = matrix_from_json(_load(args.matrix))
    orthogonal = teleport.pauli_orbit_orthogonal(m, max(args.tol, states.BASIS_TOL))
    special = teleport.is_scaled_special_unitary(m, max(args.tol, states.BASIS_TOL))
    if orthogonal != special:
        raise ConsistencyError(
            f"orthogonality ({orthogonal}) and scaled-special-unitary form ({special}) disagree"
        )
    return {"orthogonal": orthogonal, "scaled_special_unitary": special}


def cmd_entangle_check(args) -> dict:
    ket = ket_from_json(_load(args.ket))
    (a, b), (c, d) = ket.amplitudes.reshape(2, 2) if ket.num_qubits == 2 else np.zeros((2, 2))
    det = complex(a * d - b * c)
    return {"entangled": states.is_entangled_two_qubit(ket, args.tol), "det": [det.real, det.imag]}


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be a non-negative integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _tol(text: str) -> float:
    value = float(text)
    if not (value > 0 and np.isfinite(value)):
        raise argparse.ArgumentTypeError("tol must be a positive finite number")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qteleport", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--tol", type=_tol, default=DEFAULT_TOL)
        p.add_argument("--output", help="write JSON here instead of standard output")
        return p

    p = add("diagram-eval", cmd_diagram_eval, "evaluate a cup/cap diagram")
    p.add_argument("diagram")

    p = add("teleport", cmd_teleport, "teleport a gate applied to a state")
    p.add_argument("--psi", required=True)
    p.add_argument("--gate", required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--verify", action="store_true")

    p = add("trace", cmd_trace, "estimate |tr U| by repeated trials")
    p.add_argument("--gate", required=True)
    p.add_argument("--shots", type=_positive, required=True)
    p.add_argument("--seed", type=_seed, required=True)

    p = add("basis-check", cmd_basis_check, "check the Pauli-orbit basis property of a 2x2 matrix")
    p.add_argument("matrix")

    p = add("entangle-check", cmd_entangle_check, "test a two-qubit ket for entanglement")
    p.add_argument("ket")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        text = _dumps(args.func(args))
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValidationError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (PreconditionError, QTeleportError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_IO
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
