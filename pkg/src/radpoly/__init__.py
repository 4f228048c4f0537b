"""Exact multivariate polynomial interpolation at scattered linear functionals.

Everything is computed over the rationals, so the structural identities the
package is built on (separated radial power expansions, block triangular
Gramians, projector laws, geometric invariances) hold as exact equalities
and are tested as such.
"""

from .errors import (
    DegreeCapError,
    DimensionMismatchError,
    RadpolyError,
    RankDeficientError,
    SingularGramianError,
    SingularMatrixError,
)
from .functionals import (
    Functional,
    MomentFunctional,
    PointFunctional,
    RadialExpansionTerm,
    combine,
    expansion_polynomial,
    from_derivative,
    inner_product,
    least_part,
    order,
    point_evaluation,
    radial_image,
    radial_monomial,
    radial_power_expansion,
    tensor_apply_radial,
)
from .graded import GradedBasis, build_graded_basis, verify_graded
from .interpolation import (
    AffineProjection,
    ComparisonReport,
    InterpolantReport,
    LeastBasis,
    SchabackBasis,
    compare_interpolants,
    flat_projector,
    four_point_radial_moment,
    least_basis,
    least_interpolate,
    polynomial_span_equal,
    range_basis,
    schaback_basis,
    schaback_interpolate,
    span_dimension_below,
)
from .polynomials import (
    Polynomial,
    as_fraction,
    graded_key,
    monomial_sequence,
    monomials_of_degree,
    multi_factorial,
    total_degree,
)

__version__ = "0.1.0"

__all__ = [
    "AffineProjection",
    "ComparisonReport",
    "DegreeCapError",
    "DimensionMismatchError",
    "Functional",
    "GradedBasis",
    "InterpolantReport",
    "LeastBasis",
    "MomentFunctional",
    "PointFunctional",
    "Polynomial",
    "RadialExpansionTerm",
    "RadpolyError",
    "RankDeficientError",
    "SchabackBasis",
    "SingularGramianError",
    "SingularMatrixError",
    "as_fraction",
    "build_graded_basis",
    "combine",
    "compare_interpolants",
    "expansion_polynomial",
    "flat_projector",
    "four_point_radial_moment",
    "from_derivative",
    "graded_key",
    "inner_product",
    "least_basis",
    "least_interpolate",
    "least_part",
    "monomial_sequence",
    "monomials_of_degree",
    "multi_factorial",
    "order",
    "point_evaluation",
    "polynomial_span_equal",
    "radial_image",
    "radial_monomial",
    "radial_power_expansion",
    "range_basis",
    "schaback_basis",
    "schaback_interpolate",
    "span_dimension_below",
    "tensor_apply_radial",
    "total_degree",
    "verify_graded",
]
