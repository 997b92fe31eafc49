"""Spin eigenbases over multi-mode bosonic and fermionic Fock sectors.

Builds complete (N, l, l_z, C)-labeled spin bases via the multi-mode
Jordan-Schwinger map, the associated degeneracy combinatorics and
Gaussian-polynomial identities, closed-form three-mode states, and spin
measurement distributions of generalized GHZ and W states.
"""

from .degeneracy import (
    DegeneracyTable,
    IdentityReport,
    ParityError,
    QPolynomial,
    csco_crossover,
    degeneracy_g,
    degeneracy_table,
    first_fermionic_crossover_mode,
    gamma_count,
    q_binomial,
    score_count_h,
    verify_qbinomial_degeneracy_identity,
)
from .entangle import (
    MultiSectorState,
    SpinDistribution,
    SupportMismatch,
    closed_form_distribution,
    ghz_state,
    lambda_ghz,
    lambda_w,
    majorization_check,
    rotate_to_axis,
    spin_distribution,
    w_state,
    wigner_small_d,
)
from .operators import (
    DimensionCap,
    DimensionMismatch,
    RepresentationMatrices,
    SparseOperator,
    StateVector,
    annihilation_map,
    basis_state,
    creation_map,
    identity_operator,
    jordan_schwinger,
    ladder_operators,
    lz_operator,
    matrix_exponential,
    number_operator,
    spin_component_operators,
    su2_matrices,
    total_spin,
    total_spin_from_ladders,
)
from .sector import (
    FermionOverfill,
    NotInSector,
    SectorBasis,
    Statistics,
    enumerate_sector,
    sector_dim,
)
from .spinbasis import (
    RankDeficiency,
    SpinBasis,
    SpinLabel,
    UnknownLabel,
    build_spin_basis,
    fock_to_spin,
    highest_weight,
    spin_to_fock,
)
from .threemode import (
    admissible_labels,
    lambda1,
    lambda2,
    lambda3,
    lambda4,
    lambda_coefficient,
    lowering_power_terms,
    spin_state_3mode,
)

__version__ = "0.1.0"
