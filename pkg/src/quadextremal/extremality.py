"""Sandwich checks: a positive operator pinned between two canonical rules.

For a positive operator ``T`` exact on polynomials of degree ``2n - 1`` and a
(2n-1)-convex ``f``::

    G_n(f) <= T(f) <= Lob_{n+1}(f)

and for ``T`` exact to degree ``2n`` and a 2n-convex ``f``::

    RadL_{n+1}(f) <= T(f) <= RadR_{n+1}(f)

An operator that misses the exactness hypothesis raises
:class:`~quadextremal.errors.HypothesisError`; that is reported separately
from an inequality that fails.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, HypothesisError
from .operators import PositiveLinearOperator, apply_operator, verify_exactness
from .rules import apply, apply_on_interval, gauss_legendre, lobatto, radau_left, radau_right

Func = Callable[[float], float]

DEFAULT_TOL = 1e-10
HYPOTHESIS_TOL = 1e-10


class Parity(str, enum.Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass
class SandwichReport:
    lower_name: str
    middle_name: str
    upper_name: str
    lower_value: float
    middle_value: float
    upper_value: float
    tol: float

    @property
    def margins(self) -> tuple[float, float]:
        return (self.middle_value - self.lower_value, self.upper_value - self.middle_value)

    @property
    def passed(self) -> bool:
        lo, hi = self.margins
        return lo >= -self.tol and hi >= -self.tol

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "lower_name": self.lower_name,
            "middle_name": self.middle_name,
            "upper_name": self.upper_name,
            "lower": self.lower_value,
            "middle": self.middle_value,
            "upper": self.upper_value,
            "margins": list(self.margins),
            "tol": self.tol,
            "pass": self.passed,
        }

    def to_table(self) -> str:
        rows = [
            ("lower", self.lower_name, self.lower_value),
            ("middle", self.middle_name, self.middle_value),
            ("upper", self.upper_name, self.upper_value),
        ]
        w = max(len(r[1]) for r in rows)
        lines = [f"{role:<6}  {name:<{w}}  {value:.17g}" for role, name, value in rows]
        lo, hi = self.margins
        lines.append(f"margins {lo:.17g} {hi:.17g}  tol {self.tol:g}  {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def reference_integral(f: Func, order: int = 12, panels: int = 16) -> float:
    """Composite Gauss approximation of the integral over [-1, 1] (not certified)."""
    rule = gauss_legendre(order)
    edges = [-1.0 + 2.0 * i / panels for i in range(panels)] + [1.0]
    return math.fsum(apply_on_interval(rule, f, a, b) for a, b in zip(edges, edges[1:]))


def check_midpoint_trapezoid(
    T: PositiveLinearOperator, f: Func, a: float = -1.0, b: float = 1.0, tol: float = DEFAULT_TOL
) -> SandwichReport:
    """``f((a+b)/2) <= sum l_i f(x_i) <= (f(a) + f(b))/2`` for convex ``f``.

    Requires point terms only, ``sum l_i = 1``, ``x_i`` in ``[a, b]`` and
    barycenter ``sum l_i x_i = (a + b)/2``.
    """
    if T.integral_terms:
        raise DomainError("midpoint/trapezoid check takes point terms only")
    if not a < b:
        raise DomainError(f"interval needs a < b, got [{a}, {b}]")
    lam = [c for c, _ in T.point_terms]
    xs = [x for _, x in T.point_terms]
    if abs(math.fsum(lam) - 1.0) > 1e-12:
        raise DomainError(f"coefficients must sum to 1, got {math.fsum(lam)!r}")
    if any(not a <= x <= b for x in xs):
        raise DomainError("abscissas must lie in [a, b]")
    center = math.fsum(l * x for l, x in zip(lam, xs))
    if abs(center - (a + b) / 2) > 1e-12:
        raise DomainError(f"barycenter {center!r} differs from the midpoint {(a + b) / 2!r}")
    return SandwichReport(
        "midpoint",
        T.name,
        "trapezoid",
        f((a + b) / 2),
        apply_operator(T, f),
        (f(a) + f(b)) / 2,
        tol,
    )


def _require_exact(T: PositiveLinearOperator, degree: int, theorem: str, raw: SandwichReport):
    report = verify_exactness(T, degree, HYPOTHESIS_TOL)
    if not report.passed:
        j = report.first_failure
        raise HypothesisError(
            f"{T.name} is not exact on polynomials of degree <= {degree} "
            f"(defect {report.defects[j]:.3e} at degree {j}); {theorem} does not apply",
            report=report,
            raw=raw,
        )


def check_odd_sandwich(T: PositiveLinearOperator, f: Func, n: int, tol: float = DEFAULT_TOL) -> SandwichReport:
    """``G_n(f) <= T(f) <= Lob_{n+1}(f)`` for ``T`` exact to degree ``2n - 1``."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    g, lob = gauss_legendre(n), lobatto(n + 1)
    raw = SandwichReport(g.name, T.name, lob.name, apply(g, f), apply_operator(T, f), apply(lob, f), tol)
    _require_exact(T, 2 * n - 1, "the Gauss/Lobatto sandwich", raw)
    return raw


def check_even_sandwich(T: PositiveLinearOperator, f: Func, n: int, tol: float = DEFAULT_TOL) -> SandwichReport:
    """``RadL_{n+1}(f) <= T(f) <= RadR_{n+1}(f)`` for ``T`` exact to degree ``2n``."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    left, right = radau_left(n + 1), radau_right(n + 1)
    raw = SandwichReport(left.name, T.name, right.name, apply(left, f), apply_operator(T, f), apply(right, f), tol)
    _require_exact(T, 2 * n, "the Radau sandwich", raw)
    return raw


def hadamard_chain(f: Func, n: int, parity: Parity | str, tol: float = DEFAULT_TOL) -> SandwichReport:
    """Sandwich with the integral itself in the middle.

    The middle value is a composite Gauss rule of order ``n + 10`` over 8
    panels: a reference value, not a certified one.
    """
    parity = Parity(parity)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    middle = reference_integral(f, order=min(n + 10, 30), panels=8)
    if parity is Parity.ODD:
        lo_rule, hi_rule = gauss_legendre(n), lobatto(n + 1)
    else:
        lo_rule, hi_rule = radau_left(n + 1), radau_right(n + 1)
    return SandwichReport(
        lo_rule.name, "reference (non-certified)", hi_rule.name, apply(lo_rule, f), middle, apply(hi_rule, f), tol
    )
