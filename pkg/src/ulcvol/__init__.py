"""Exact ultra-logconcave sequences and Minkowski volume polynomials."""

from .counterexample import FamilyPoint, family_point, limit_scan
from .geomcore import (
    Body,
    DimensionMismatchError,
    VerificationError,
    VolPoly,
    box,
    cartesian_product,
    diag_simplex,
    make_body,
    minkowski_sum,
    mixed_volume,
    scale_body,
    standard_simplex,
    volume,
    volume_poly,
)
from .liggett import (
    TheoremVerdict,
    fuzz,
    product_construction,
    product_identity_check,
    theorem_check,
)
from .seqcore import (
    OrderTooSmallError,
    PreconditionError,
    ViolationReport,
    as_seq,
    binom,
    convolve,
    is_logconcave,
    is_ulc,
    newton_check,
    perturb_positive,
    random_ulc,
)
from .shephard import Realization, forward_coeffs, realize, verify_realization

__version__ = "0.1.0"
