"""Minimum-energy entangled state generation toolkit.

Core model of finite bipartite systems, synthesis of the generating
unitaries with gate decompositions, the five zero-temperature
thermalization interaction Hamiltonians with efficiency accounting, and
seeded Monte-Carlo scatter experiments.
"""

from .errors import (
    DegenerateGround,
    DomainError,
    EmptySpectrum,
    InvalidLeak,
    MeasureMismatch,
    NonMonotone,
    NotHermitian,
    NotUnitary,
    OutOfRange,
    UnknownFixture,
    ZeroEntanglementTarget,
    ZeroLambda0,
    ZeroVector,
)
from .system import (
    BipartiteSystem,
    DensePureState,
    MeesSolution,
    SchmidtState,
    Spectrum,
    build_system,
    embed,
    energy_expectation,
    entanglement_entropy,
    load_system,
    mees_from_beta,
    partition_function,
    schmidt_entropy,
    solve_beta_g,
)
from .synthesis import (
    GatePlan,
    GramSchmidtBasis,
    RotationFactor,
    build_ua,
    build_ub,
    build_us,
    build_us_general,
    cnot_a,
    cnot_b,
    compose_tilde,
    decompose_rotations,
    gram_schmidt_basis,
    plan_matrix,
    verify_unitary,
)
from .thermalization import (
    ApproachKind,
    CouplingStrength,
    InteractionHamiltonian,
    ProtocolReport,
    build_interaction,
    ground_state,
    h_global_closed_form,
    h_modified_simple,
    h_mssg_closed_form,
    h_simple,
    h_unitary,
    minimize_expense_modified_simple,
    protocol_report_first_principles,
    report_global_unitary,
    report_mssg,
    report_simple,
    v_strength,
)

__version__ = "0.1.0"
