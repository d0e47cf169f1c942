"""Cup/cap diagrams, post-selected measurement, gate teleportation and
trace estimation on dense state vectors."""

from .diagram import (
    Diagram,
    cap,
    circle,
    compose_min_max,
    cup,
    evaluate,
    is_topological,
    validate,
    wire,
    zigzag,
)
from .errors import (
    BasisError,
    ConsistencyError,
    InputError,
    PreconditionError,
    QTeleportError,
    ShapeError,
    SizeError,
    ValidationError,
    VerificationError,
)
from .linalg import Bra, Ket, approx_eq, dagger, kron, matmul, trace
from .states import (
    born_distribution,
    cap_state_from_matrix,
    cup_state_from_matrix,
    delta_state,
    is_entangled_two_qubit,
    measurement_state_from_matrix,
    phase_equal,
    post_select,
)
from .teleport import (
    ClassicalMessage,
    PauliLabel,
    classical_bit_cost,
    is_scaled_special_unitary,
    measurement_basis_for,
    pauli,
    pauli_word,
    run_teleportation,
)
from .trace import estimate_abs_trace, exact_trace_amplitude, success_probability

__version__ = "0.1.0"
