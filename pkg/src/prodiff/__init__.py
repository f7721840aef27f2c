"""Exact arithmetic for the group of formal diffeomorphisms of the line.

The group elements are truncations of x + a2 x^2 + a3 x^3 + ... with
rational coefficients and composition as the product; its Lie algebra is
spanned by the fields x^(n+1) d/dx. The package computes the group law,
compositional inverses, flows and logarithms, the triangular substitution
representation, weighted coefficient/operator norms with certified upper
and lower bounds, and exact quotient norms on the universal enveloping
algebra via rational linear programming. The `prodiff` CLI exposes all of
it plus seeded verification suites and table/figure reports.
"""

from .errors import (
    InputFormatError,
    InvariantViolation,
    LPInfeasibleError,
    LPUnboundedError,
    PreconditionError,
    ProdiffError,
)
from .freealg import (
    EnvelopingElement,
    NCPolynomial,
    QuotientLowerBound,
    QuotientNormResult,
    QuotientUpperBound,
    basis_norm_table,
    basis_quotient_upper,
    element_matrix,
    field_quotient_upper,
    free_norm,
    pbw_basis,
    pbw_straighten,
    project,
    project_word,
    quotient_lower_bound,
    quotient_norm,
    quotient_norm_result,
    quotient_norm_scaled,
    words_of_degree,
)
from .lie import bch, bracket, exp_field, exp_field_flow, log_diffeo
from .norms import (
    NormValue,
    diffeo_norm,
    enumerate_weight_tuples,
    exp_upper_bound,
    field_norm_bound,
    inversion_norm_bound,
    inversion_weight,
    membership_report,
    multiplier_norm_bound,
    operator_norm_trunc,
    selector_norm,
)
from .series import (
    FormalDiffeo,
    FormalVectorField,
    TruncatedSeries,
    compose,
    invert_lagrange,
    invert_recursive,
    scale_automorphism,
    scale_field,
)
from .simplex import l1_minimize, solve_lp
from .triangular import (
    TaylorDecomposition,
    TriangularOperator,
    exp_strict,
    field_matrix,
    field_matrix_padded,
    h_multiplier,
    log_unitriangular,
    monomial_selector,
    substitution_matrix,
    taylor_decomposition,
    weighted_derivative,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "EnvelopingElement",
    "FormalDiffeo",
    "FormalVectorField",
    "InputFormatError",
    "InvariantViolation",
    "LPInfeasibleError",
    "LPUnboundedError",
    "NCPolynomial",
    "NormValue",
    "PreconditionError",
    "ProdiffError",
    "QuotientLowerBound",
    "QuotientNormResult",
    "QuotientUpperBound",
    "TaylorDecomposition",
    "TriangularOperator",
    "TruncatedSeries",
    "basis_norm_table",
    "basis_quotient_upper",
    "bch",
    "bracket",
    "compose",
    "diffeo_norm",
    "element_matrix",
    "enumerate_weight_tuples",
    "exp_field",
    "exp_field_flow",
    "exp_strict",
    "exp_upper_bound",
    "field_matrix",
    "field_matrix_padded",
    "field_norm_bound",
    "field_quotient_upper",
    "free_norm",
    "h_multiplier",
    "inversion_norm_bound",
    "inversion_weight",
    "invert_lagrange",
    "invert_recursive",
    "l1_minimize",
    "log_diffeo",
    "log_unitriangular",
    "membership_report",
    "monomial_selector",
    "multiplier_norm_bound",
    "operator_norm_trunc",
    "pbw_basis",
    "pbw_straighten",
    "project",
    "project_word",
    "quotient_lower_bound",
    "quotient_norm",
    "quotient_norm_result",
    "quotient_norm_scaled",
    "run_suite",
    "scale_automorphism",
    "scale_field",
    "selector_norm",
    "solve_lp",
    "substitution_matrix",
    "taylor_decomposition",
    "weighted_derivative",
    "words_of_degree",
    "__version__",
]
