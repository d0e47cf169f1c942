"""Exception hierarchy shared by every module."""


class QTeleportError(Exception):
    """Base class for all library errors."""


class ShapeError(QTeleportError, ValueError):
    """Operands have incompatible or unsupported shapes."""


class SizeError(QTeleportError, ValueError):
    """A register or matrix exceeds the configured dense-storage cap."""


class InputError(QTeleportError, ValueError):
    """Malformed input: non-finite numbers, zero states, bad JSON payloads."""


class ValidationError(QTeleportError, ValueError):
    """A diagram failed arity or name checks."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class PreconditionError(QTeleportError, ValueError):
    """An operation precondition (e.g. unitarity) does not hold."""


class BasisError(QTeleportError, ValueError):
    """A measurement basis is not orthonormal and complete."""


class ConsistencyError(QTeleportError, RuntimeError):
    """An internal cross-check failed; indicates a bug or numerical breakdown."""


class VerificationError(ConsistencyError):
    """A protocol run produced a state other than the one it promised."""
