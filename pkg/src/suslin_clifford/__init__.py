"""Exact Suslin matrices and the Clifford action on exterior algebras."""

from .clifford import (
    CliffordAction,
    HyperbolicElement,
    IdempotentModule,
    SignConventionError,
    clifford_endo,
    clifford_endo_projective,
    clifford_matrix,
    hyperbolic_q,
    phi_block_formula,
    phi_blocks,
    projector_matrix,
)
from .exterior import (
    GradedMatrix,
    Multivector,
    OrderedBasis,
    canonical_split,
    contract,
    exterior_power_map,
    lambda_parity_map,
    left_mul,
    wedge,
)
from .matrix import Matrix
from .ring import Ring, RingDescriptor, RingError, RingMismatchError, Scalar, ring_make, scalar_is_unit
from .suslin import (
    SuslinMatrix,
    build_suslin_bases,
    generalized_suslin,
    generalized_suslin_bar,
    represent,
    suslin_bar,
    suslin_bar_of,
    suslin_matrix,
    suslin_of,
)
from .verify import (
    SLSample,
    VerificationReport,
    check_key_corollary,
    check_key_lemma,
    det_division_free,
    random_sl,
    run_suite,
)

__version__ = "0.1.0"
