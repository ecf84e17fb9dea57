"""Point configurations on hypersurfaces: exact membership, interpolation,
smooth/singular classification, and numeric hypersurface fitting."""

from .errors import CapExceededError, InvalidInputError, PreconditionError, VeroneseLabError
from .exactcore import (
    RATIONALS,
    ExactMatrix,
    FieldSpec,
    determinant,
    kernel_basis,
    minors_vanish,
    rank,
    solve,
)
from .veronese import (
    HypersurfaceForm,
    MonomialBasis,
    PointConfig,
    ProjPoint,
    gradient_eval,
    monomial_basis,
    multi_veronese,
    num_monomials,
    transform_config,
    veronese_eval,
)
from .variety import (
    LinearSystem,
    MembershipVerdict,
    expected_dimension,
    hypersurface_system,
    incidence_jacobian,
    line_restriction,
    line_restriction_degree,
    membership,
    membership_p1_oracle,
    multidegree_check,
    recover_coefficients_local,
    unique_hypersurface,
)
from .singular import (
    Capped,
    ClassificationReport,
    Criterion,
    Reason,
    SingularSupport,
    Verdict,
    classify,
    classify_plane,
    classify_quadric_p3,
    is_d_normal,
    k_generality,
    max_secant,
    regularity_of_points,
    singular_support,
    span_dimension,
)
from .fit import DegreeSearch, FitResult, FloatCloud, fit_hypersurface, minimal_degree

__version__ = "0.1.0"

__all__ = [
    "DegreeSearch",
    "FitResult",
    "FloatCloud",
    "fit_hypersurface",
    "minimal_degree",
    "CapExceededError",
    "Capped",
    "ClassificationReport",
    "Criterion",
    "ExactMatrix",
    "FieldSpec",
    "HypersurfaceForm",
    "InvalidInputError",
    "LinearSystem",
    "MembershipVerdict",
    "MonomialBasis",
    "PointConfig",
    "PreconditionError",
    "ProjPoint",
    "RATIONALS",
    "Reason",
    "SingularSupport",
    "Verdict",
    "VeroneseLabError",
    "classify",
    "classify_plane",
    "classify_quadric_p3",
    "determinant",
    "expected_dimension",
    "gradient_eval",
    "hypersurface_system",
    "incidence_jacobian",
    "is_d_normal",
    "k_generality",
    "kernel_basis",
    "line_restriction",
    "line_restriction_degree",
    "max_secant",
    "membership",
    "membership_p1_oracle",
    "minors_vanish",
    "monomial_basis",
    "multi_veronese",
    "multidegree_check",
    "num_monomials",
    "rank",
    "recover_coefficients_local",
    "regularity_of_points",
    "singular_support",
    "solve",
    "span_dimension",
    "transform_config",
    "unique_hypersurface",
    "veronese_eval",
    "__version__",
]
