"""noonforge: multiport beam-splitter simulation for multiphoton interference.

Models four-port splitters given as near-unitary scattering matrices, evolves
Fock states through them via matrix permanents, and post-selects NOON and
path-entangled components with success probabilities and fidelities.
"""

from .errors import (
    BranchCutError,
    CapacityError,
    InputError,
    MatrixFileError,
    ModeNotFoundError,
    NoonforgeError,
    NotHermitianError,
    NotUnitaryError,
    NumericError,
    ShapeError,
    SingularMatrixError,
    SpecError,
    SubspaceError,
    ZeroProbabilityError,
)
from .evolve import (
    TransitionTable,
    evolution_operator,
    evolve_state,
    evolve_state_hamiltonian,
    fock_hamiltonian,
    permanent,
    transition_amplitude,
)
from .fock import (
    FockBasis,
    FockState,
    QuantumState,
    enumerate_basis,
    parse_occupations,
    state_from_spec,
)
from .modes import (
    Conflict,
    Mode,
    Polarization,
    Side,
    Subspace,
    build_subspace,
    check_independence,
    load_subspace,
    parse_mode,
    port_of,
)
from .noon import (
    NoonReport,
    apply_phase_shifts,
    extract_noon,
    fidelity_against,
    ideal_noon_state,
    post_select,
    sweep_inputs,
)
from .unitary import (
    MatrixFile,
    PolarEntry,
    SymmetryPattern,
    SymmetryViolation,
    effective_hamiltonian,
    from_polar,
    load_matrix,
    matrix_exp,
    save_matrix,
    unitarity_defect,
    unitarize,
    validate_symmetry,
)

__version__ = "0.1.0"

__all__ = [
    "BranchCutError",
    "CapacityError",
    "Conflict",
    "FockBasis",
    "FockState",
    "InputError",
    "MatrixFile",
    "MatrixFileError",
    "Mode",
    "ModeNotFoundError",
    "NoonReport",
    "NoonforgeError",
    "NotHermitianError",
    "NotUnitaryError",
    "NumericError",
    "Polarization",
    "PolarEntry",
    "QuantumState",
    "ShapeError",
    "Side",
    "SingularMatrixError",
    "SpecError",
    "Subspace",
    "SubspaceError",
    "SymmetryPattern",
    "SymmetryViolation",
    "TransitionTable",
    "ZeroProbabilityError",
    "apply_phase_shifts",
    "build_subspace",
    "check_independence",
    "effective_hamiltonian",
    "enumerate_basis",
    "evolution_operator",
    "evolve_state",
    "evolve_state_hamiltonian",
    "extract_noon",
    "fidelity_against",
    "fock_hamiltonian",
    "from_polar",
    "ideal_noon_state",
    "load_matrix",
    "load_subspace",
    "matrix_exp",
    "parse_mode",
    "parse_occupations",
    "permanent",
    "port_of",
    "post_select",
    "save_matrix",
    "state_from_spec",
    "sweep_inputs",
    "transition_amplitude",
    "unitarity_defect",
    "unitarize",
    "validate_symmetry",
]
