"""Positive linear functionals on functions over [-1, 1].

An operator is a conical combination of point evaluations ``c * f(a)`` and
subinterval integrals ``c * int_lo^hi f``. Integrals are resolved with a fixed
Gauss rule, which is exact for the polynomial moments used in exactness
checks; for other integrands that resolution error is not certified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, EvaluationError
from .rules import (
    ExactnessReport,
    Integrand,
    QuadratureRule,
    apply_on_interval,
    gauss_legendre,
    moment_report,
    pairwise_sum,
)

RESOLUTION_ORDER = 12
# claimed exactness is checked against moments on construction
CLAIM_TOL = 1e-10


@dataclass(frozen=True)
class IntegralTerm:
    coefficient: float
    lo: float
    hi: float
    rule: QuadratureRule


class PositiveLinearOperator:
    """``T(f) = sum c_i f(a_i) + sum c_j * int_{lo_j}^{hi_j} f``, all ``c >= 0``.

    ``claimed_exactness`` is the degree ``d`` such that ``T`` integrates every
    polynomial of degree ``<= d`` exactly over [-1, 1]; it is verified on
    construction unless ``check=False``. Use ``claimed_exactness=-1`` for an
    operator that claims nothing.
    """

    def __init__(
        self,
        point_terms: Iterable[tuple[float, float]],
        integral_terms: Iterable = (),
        claimed_exactness: int = -1,
        *,
        name: str | None = None,
        check: bool = True,
    ):
        points = tuple((float(c), float(a)) for c, a in point_terms)
        integrals = []
        resolution = None
        for term in integral_terms:
            if isinstance(term, IntegralTerm):
                integrals.append(term)
                continue
            c, lo, hi, *rest = term
            if rest:
                rule = rest[0]
            else:
                resolution = resolution or gauss_legendre(RESOLUTION_ORDER)
                rule = resolution
            integrals.append(IntegralTerm(float(c), float(lo), float(hi), rule))
        for c, a in points:
            if not c >= 0.0:
                raise DomainError(f"point coefficient {c} is negative")
            if not -1.0 <= a <= 1.0:
                raise DomainError(f"abscissa {a} outside [-1, 1]")
        for t in integrals:
            if not t.coefficient >= 0.0:
                raise DomainError(f"integral coefficient {t.coefficient} is negative")
            if not -1.0 <= t.lo < t.hi <= 1.0:
                raise DomainError(f"integral range [{t.lo}, {t.hi}] not inside [-1, 1]")
        self.point_terms = points
        self.integral_terms = tuple(integrals)
        self.claimed_exactness = int(claimed_exactness)
        self.name = name or "T"
        if check and self.claimed_exactness >= 0:
            report = verify_exactness(self, self.claimed_exactness, CLAIM_TOL)
            if not report.passed:
                raise DomainError(
                    f"{self.name}: claimed exactness degree {self.claimed_exactness} fails "
                    f"at degree {report.first_failure} (defect {report.defects[report.first_failure]:.3e})"
                )

    def __call__(self, f: Integrand) -> float:
        return apply_operator(self, f)

    def __repr__(self):
        return (
            f"PositiveLinearOperator({self.name!r}, points={len(self.point_terms)}, "
            f"integrals={len(self.integral_terms)}, exactness={self.claimed_exactness})"
        )

    def total_mass(self) -> float:
        """Value on the constant 1, computed from the coefficients alone."""
        return pairwise_sum(
            [c for c, _ in self.point_terms]
            + [t.coefficient * (t.hi - t.lo) for t in self.integral_terms]
        )

    def to_dict(self) -> dict:
        return {
            "points": [[c, a] for c, a in self.point_terms],
            "integrals": [[t.coefficient, t.lo, t.hi] for t in self.integral_terms],
            "exactness": self.claimed_exactness,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict, *, name: str | None = None) -> "PositiveLinearOperator":
        try:
            return cls(
                [tuple(p) for p in data.get("points", [])],
                [tuple(t) for t in data.get("integrals", [])],
                int(data.get("exactness", -1)),
                name=name,
            )
        except (TypeError, ValueError, KeyError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed operator description: {exc}") from exc

    @classmethod
    def from_json(cls, text: str, *, name: str | None = None) -> "PositiveLinearOperator":
        return cls.from_dict(json.loads(text), name=name)


def from_rule(rule: QuadratureRule) -> PositiveLinearOperator:
    return PositiveLinearOperator(
        zip(rule.weights, rule.nodes), (), rule.exactness_degree, name=rule.name, check=False
    )


def hybrid_example() -> PositiveLinearOperator:
    """``3/11 [f(-1) + f(1)] + 16/11 int_{-1/2}^{1/2} f``: not a quadrature, exact on cubics."""
    return PositiveLinearOperator(
        [(3 / 11, -1.0), (3 / 11, 1.0)],
        [(16 / 11, -0.5, 0.5)],
        3,
        name="hybrid",
    )


def combine(parts: Sequence[tuple[float, PositiveLinearOperator]], *, name: str | None = None) -> PositiveLinearOperator:
    """Conical combination ``sum lambda_k T_k`` with ``lambda_k >= 0``.

    The combination claims the smallest exactness degree among the parts,
    and only when the multipliers sum to 1.
    """
    points: list[tuple[float, float]] = []
    integrals: list[IntegralTerm] = []
    total = 0.0
    for lam, op in parts:
        if not lam >= 0.0:
            raise DomainError(f"combination multiplier {lam} is negative")
        total += lam
        points += [(lam * c, a) for c, a in op.point_terms]
        integrals += [IntegralTerm(lam * t.coefficient, t.lo, t.hi, t.rule) for t in op.integral_terms]
    exact = min(op.claimed_exactness for _, op in parts) if abs(total - 1.0) <= 1e-12 else -1
    label = name or " + ".join(f"{lam:g}*{op.name}" for lam, op in parts)
    return PositiveLinearOperator(points, integrals, exact, name=label)


def apply_operator(T: PositiveLinearOperator, f: Integrand) -> float:
    values = []
    for i, (c, a) in enumerate(T.point_terms):
        try:
            values.append(c * f(a))
        except Exception as exc:
            raise EvaluationError(f"{T.name}: point term {i} (x={a!r}) failed: {exc}", index=i) from exc
    for j, t in enumerate(T.integral_terms):
        try:
            values.append(t.coefficient * apply_on_interval(t.rule, f, t.lo, t.hi))
        except EvaluationError as exc:
            raise EvaluationError(
                f"{T.name}: integral term {j} over [{t.lo}, {t.hi}] failed: {exc}", index=j
            ) from exc
    return pairwise_sum(values)


def verify_exactness(T: PositiveLinearOperator, k: int, tol: float, basis: str = "monomial") -> ExactnessReport:
    return moment_report(T, k, tol, basis)

