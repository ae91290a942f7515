"""Gauss-type quadrature rules, higher-order convexity and certified error bounds."""

from .bounds import ErrorCertificate, alpha, certified_integrate, classical_error_constant, error_bound, min_points
from .convexity import (
    DividedDiffNode,
    NewtonPolynomial,
    Side,
    SupportCertificate,
    SupportKind,
    certify_support,
    divided_difference,
    hermite_divided_difference,
    integrate_polynomial,
    is_n_convex_on_grid,
    support_polynomial,
    verify_support,
)
from .errors import DomainError, EvaluationError, HypothesisError, QuadError, RangeError, RootFindingError
from .expr import differentiate, parse
from .extremality import (
    Parity,
    SandwichReport,
    check_even_sandwich,
    check_midpoint_trapezoid,
    check_odd_sandwich,
    hadamard_chain,
    reference_integral,
)
from .operators import PositiveLinearOperator, apply_operator, combine, from_rule, hybrid_example, verify_exactness
from .orthopoly import legendre_eval, legendre_roots, lobatto_interior_roots, radau_roots
from .rules import (
    Family,
    QuadratureRule,
    apply,
    apply_on_interval,
    composite,
    exactness_check,
    gauss_legendre,
    lobatto,
    radau_left,
    radau_right,
)

__version__ = "0.1.0"
