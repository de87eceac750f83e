"""Rydberg-ladder simulators, effective spin-1 chains, and parameter matching."""

from .basis import (
    RungConstraint,
    RydbergBasis,
    Spin1Basis,
    StateDictionary,
    enumerate_rydberg,
    project_to_spin1,
    sector_overlap,
)
from .effective import (
    EffectiveCoefficients,
    MatchingError,
    RabiPT,
    ResonanceError,
    coeffs_in_plane,
    coeffs_prism,
    coeffs_three_leg,
    coeffs_two_leg,
    diagonal_expansion_oracle,
    effective_rabi,
    ising_reduction,
    ising_reduction_critical_delta,
    match_forward,
    match_inverse,
    rabi_pt_matrix,
    rung_rabi_j,
)
from .geometry import (
    DEFAULT_C6,
    TWO_PI,
    AtomArray,
    CouplingMatrix,
    GeometryError,
    LadderKind,
    LadderSpec,
    blockade_radius,
    build_ladder,
    pairwise_couplings,
)
from .hamiltonians import (
    BoundaryCondition,
    Flavor,
    SparseOperator,
    TargetCouplings,
    cahm_hamiltonian,
    charge_kernel,
    effective_spin1_hamiltonian,
    ising_chain,
    rydberg_hamiltonian,
    sqed_charge_hamiltonian,
    sqed_field_hamiltonian,
)
from .observables import (
    OrderParameters,
    Phase,
    SiteProfile,
    classify_phase,
    order_parameters,
    reduced_density_matrix,
    renyi_entropy,
    site_profile,
    susceptibility_peak,
)
from .solvers import (
    ConvergenceError,
    SolverError,
    SpectrumResult,
    dense_eigs,
    ground_state,
    krylov_evolve,
    lanczos_ground_state,
    sector_eigenstates,
)

__version__ = "0.1.0"
