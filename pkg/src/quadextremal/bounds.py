"""Error constants and certified enclosures.

For a positive operator ``T`` exact on polynomials of degree ``k`` (k >= 2)
and ``f`` in ``C^k[-1, 1]``::

    |I(f) - T(f)| <= alpha_k * sup |f^(k)|

with

    alpha_{2n}   = 4^(n+1) (n!)^4 / ((2n+1) ((2n)!)^3)
    alpha_{2n+1} = 4^(n+1) (n+1) (n!)^4 / ((2n+1)!)^3

All constants are exact ``Fraction`` values; floats appear only in the final
enclosure, which is rounded outward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .errors import DomainError, HypothesisError
from .operators import PositiveLinearOperator, from_rule, verify_exactness
from .rules import Family, apply, build

HYPOTHESIS_TOL = 1e-10
ESTIMATE_POINTS = 1000
ESTIMATE_INFLATION = Fraction(11, 10)


def alpha(k: int) -> Fraction:
    if k < 2:
        raise DomainError(f"alpha_k is defined for k >= 2, got {k}")
    f = math.factorial
    n, odd = divmod(k, 2)
    if odd:
        return Fraction(4 ** (n + 1) * (n + 1) * f(n) ** 4, f(2 * n + 1) ** 3)
    return Fraction(4 ** (n + 1) * f(n) ** 4, (2 * n + 1) * f(2 * n) ** 3)


class ClassicalConstant(NamedTuple):
    """Signed ``c`` in ``I(f) - T(f) = c * f^(order)(xi)``."""

    value: Fraction
    order: int


def classical_error_constant(family: Family | str, n: int) -> ClassicalConstant:
    family = Family.parse(family)
    f = math.factorial
    if family is Family.GAUSS_LEGENDRE:
        if n < 1:
            raise DomainError(f"Gauss error term needs n >= 1, got {n}")
        return ClassicalConstant(
            Fraction(2 ** (2 * n + 1) * f(n) ** 4, (2 * n + 1) * f(2 * n) ** 3), 2 * n
        )
    if n < 2:
        raise DomainError(f"{family.value} error term needs n >= 2, got {n}")
    if family is Family.LOBATTO:
        c = Fraction(n * (n - 1) ** 3 * 2 ** (2 * n - 1) * f(n - 2) ** 4, (2 * n - 1) * f(2 * n - 2) ** 3)
        return ClassicalConstant(-c, 2 * n - 2)
    c = Fraction(2 ** (2 * n - 1) * n * f(n - 1) ** 4, f(2 * n - 1) ** 3)
    return ClassicalConstant(c if family is Family.RADAU_LEFT else -c, 2 * n - 1)


def min_points(family: Family | str, k: int) -> int:
    """Fewest nodes for which the family's rule is exact on degree ``k``."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    family = Family.parse(family)
    if family is Family.GAUSS_LEGENDRE:
        return k // 2 + 1
    if family is Family.LOBATTO:
        return k // 2 + 2
    return (k + 1) // 2 + 1


def _round_up(q: Fraction) -> float:
    v = float(q)
    return math.nextafter(v, math.inf) if Fraction(v) < q else v


def _round_down(q: Fraction) -> float:
    v = float(q)
    return math.nextafter(v, -math.inf) if Fraction(v) > q else v


def _check_bound(derivative_bound: float) -> Fraction:
    if not (derivative_bound >= 0.0 and math.isfinite(derivative_bound)):
        raise DomainError(f"derivative bound must be finite and nonnegative, got {derivative_bound!r}")
    return Fraction(derivative_bound)


def error_bound(T: PositiveLinearOperator, k: int, derivative_bound: float) -> float:
    """``alpha_k * derivative_bound``, rounded up, after checking exactness to degree ``k``."""
    a = alpha(k)
    b = _check_bound(derivative_bound)
    report = verify_exactness(T, k, HYPOTHESIS_TOL)
    if not report.passed:
        j = report.first_failure
        raise HypothesisError(
            f"{T.name} is not exact on polynomials of degree <= {k} "
            f"(defect {report.defects[j]:.3e} at degree {j}); the alpha_{k} bound does not apply",
            report=report,
        )
    return _round_up(a * b)


@dataclass(frozen=True)
class ErrorCertificate:
    operator_id: str
    k: int
    alpha_k: Fraction
    derivative_bound: float
    estimate: float
    enclosure: tuple[float, float]
    certified: bool

    @property
    def bound(self) -> float:
        return _round_up(self.alpha_k * Fraction(self.derivative_bound))

    def contains(self, value: float) -> bool:
        return self.enclosure[0] <= value <= self.enclosure[1]

    def to_dict(self) -> dict:
        return {
            "operator_id": self.operator_id,
            "k": self.k,
            "alpha": f"{self.alpha_k.numerator}/{self.alpha_k.denominator}",
            "derivative_bound": self.derivative_bound,
            "bound": self.bound,
            "estimate": self.estimate,
            "enclosure": list(self.enclosure),
            "certified": self.certified,
        }


def estimate_derivative_bound(expr, k: int, points: int = ESTIMATE_POINTS) -> float:
    """Sampled ``max |f^(k)|`` on [-1, 1] inflated by 10%. Not a proof of anything."""
    from .expr import differentiate

    d = differentiate(expr, k)
    peak = max(abs(d(-1.0 + 2.0 * i / (points - 1))) for i in range(points))
    return _round_up(Fraction(peak) * ESTIMATE_INFLATION)


def certified_integrate(
    f: Callable[[float], float],
    k: int,
    derivative_bound: float | None,
    family: Family | str,
    *,
    expr=None,
) -> ErrorCertificate:
    """Integrate with the smallest rule of ``family`` exact on degree ``k``.

    ``derivative_bound`` must dominate ``sup |f^(k)|`` on [-1, 1]; that claim
    is the caller's. If it is ``None`` the bound is estimated from ``expr``
    and the certificate is marked ``certified=False``.
    """
    a = alpha(k)
    certified = derivative_bound is not None
    if not certified:
        if expr is None:
            raise DomainError("without a derivative bound an expression is needed to estimate one")
        derivative_bound = estimate_derivative_bound(expr, k)
    b = _check_bound(derivative_bound)
    rule = build(family, min_points(family, k))
    # the rule is exact on degree k by construction; keep the hypothesis explicit
    error_bound(from_rule(rule), k, derivative_bound)
    est = apply(rule, f)
    radius = a * b
    lo = _round_down(Fraction(est) - radius)
    hi = _round_up(Fraction(est) + radius)
    return ErrorCertificate(rule.name, k, a, float(derivative_bound), est, (lo, hi), certified)
