"""Robust orthogonal projection and l0 recovery under sparse adversarial corruption."""
from .ambiguity import (
    AmbiguityCertificate,
    SparsePairWitness,
    ambiguity_member,
    certify_linear_robust,
    robustness_witness,
    span_ambiguity,
    sparse_pair_witness,
)
from .decoder import DecodeResult, l0_decode, l0_residual_norm
from .errors import (
    BudgetExceeded,
    BudgetTooLarge,
    DimensionError,
    DimensionMismatch,
    NonFiniteEntry,
    NonSymmetricInput,
    NotAMember,
    ParseError,
)
from .numerics import (
    OrthonormalBasis,
    ToleranceConfig,
    kernel_basis,
    min_norm_solve,
    projector_onto_span,
    zero_eigenspace,
)
from .projector import (
    ProblemSpec,
    RobustProjector,
    robust_projector,
    robust_projector_oracle,
    subset_count,
)
from .recovery import RecoverySet, recover, set_member, sets_equal

__version__ = "0.1.0"
