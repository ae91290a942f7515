"""Gauss-Legendre, Lobatto and Radau rules on [-1, 1].

Weights come straight from the closed-form expressions in terms of Legendre
polynomials evaluated at the nodes; no linear solves are involved.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import DomainError, EvaluationError, RangeError
from .orthopoly import legendre_eval, legendre_roots, lobatto_interior_roots, radau_roots

MAX_ORDER = 30

Integrand = Callable[[float], float]


class Family(str, enum.Enum):
    GAUSS_LEGENDRE = "gauss"
    LOBATTO = "lobatto"
    RADAU_LEFT = "radau-left"
    RADAU_RIGHT = "radau-right"

    @classmethod
    def parse(cls, name: "str | Family") -> "Family":
        if isinstance(name, Family):
            return name
        key = name.strip().lower().replace("_", "-")
        aliases = {
            "gauss-legendre": "gauss",
            "gl": "gauss",
            "radau": "radau-left",
            "radauleft": "radau-left",
            "radauright": "radau-right",
            "gausslegendre": "gauss",
        }
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown rule family {name!r}") from None


@dataclass(frozen=True)
class QuadratureRule:
    family: Family
    order: int
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    exactness_degree: int

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise DomainError("nodes and weights differ in length")
        if any(w <= 0.0 for w in self.weights):
            raise DomainError("quadrature weights must be positive")
        if any(b <= a for a, b in zip(self.nodes, self.nodes[1:])):
            raise DomainError("nodes must be strictly increasing")

    @property
    def name(self) -> str:
        return f"{self.family.value}({self.order})"

    def __call__(self, f: Integrand) -> float:
        return apply(self, f)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "n": self.order,
            "nodes": list(self.nodes),
            "weights": list(self.weights),
            "exactness_degree": self.exactness_degree,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "QuadratureRule":
        return cls(
            Family.parse(data["family"]),
            int(data["n"]),
            tuple(float(v) for v in data["nodes"]),
            tuple(float(v) for v in data["weights"]),
            int(data["exactness_degree"]),
        )

    def to_table(self) -> str:
        """Aligned two-column text table, 17 significant digits."""
        rows = [(f"{x:.17g}", f"{w:.17g}") for x, w in zip(self.nodes, self.weights)]
        width = max(len("node"), *(len(r[0]) for r in rows))
        lines = [
            f"# {self.name}  exact on polynomials of degree <= {self.exactness_degree}",
            f"{'node':>{width}}  weight",
        ]
        lines += [f"{x:>{width}}  {w}" for x, w in rows]
        return "\n".join(lines)


def _check_order(n: int, low: int, label: str) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise RangeError(f"{label}: order must be an integer, got {n!r}")
    if not low <= n <= MAX_ORDER:
        raise RangeError(f"{label}: order {n} outside supported range [{low}, {MAX_ORDER}]")


def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule, exact on polynomials of degree 2n - 1."""
    _check_order(n, 1, "gauss_legendre")
    nodes = legendre_roots(n)
    weights = []
    for x in nodes:
        p_next = legendre_eval(n + 1, x).value
        weights.append(2.0 * (1.0 - x * x) / ((n + 1) ** 2 * p_next * p_next))
    return QuadratureRule(Family.GAUSS_LEGENDRE, n, tuple(nodes), tuple(weights), 2 * n - 1)


def lobatto(n: int) -> QuadratureRule:
    """n-point Lobatto rule (both endpoints as nodes), exact to degree 2n - 3."""
    _check_order(n, 2, "lobatto")
    end = 2.0 / (n * (n - 1))
    if n == 2:
        return QuadratureRule(Family.LOBATTO, 2, (-1.0, 1.0), (1.0, 1.0), 1)
    interior = lobatto_interior_roots(n)
    weights = [end]
    for x in interior:
        p = legendre_eval(n - 1, x).value
        weights.append(end / (p * p))
    weights.append(end)
    return QuadratureRule(
        Family.LOBATTO, n, (-1.0, *interior, 1.0), tuple(weights), 2 * n - 3
    )


def radau_left(n: int) -> QuadratureRule:
    """n-point Radau rule with the fixed node -1, exact to degree 2n - 2."""
    _check_order(n, 2, "radau_left")
    free = radau_roots(n)
    weights = [2.0 / (n * n)]
    for x in free:
        d = legendre_eval(n - 1, x).derivative
        weights.append(1.0 / ((1.0 - x) * d * d))
    return QuadratureRule(Family.RADAU_LEFT, n, (-1.0, *free), tuple(weights), 2 * n - 2)


def radau_right(n: int) -> QuadratureRule:
    """Mirror image of :func:`radau_left`: fixed node at +1."""
    _check_order(n, 2, "radau_right")
    left = radau_left(n)
    return QuadratureRule(
        Family.RADAU_RIGHT,
        n,
        tuple(-x for x in reversed(left.nodes)),
        tuple(reversed(left.weights)),
        left.exactness_degree,
    )


_BUILDERS = {
    Family.GAUSS_LEGENDRE: gauss_legendre,
    Family.LOBATTO: lobatto,
    Family.RADAU_LEFT: radau_left,
    Family.RADAU_RIGHT: radau_right,
}


def build(family: "Family | str", n: int) -> QuadratureRule:
    return _BUILDERS[Family.parse(family)](n)


def pairwise_sum(values: Sequence[float]) -> float:
    """Tree summation whose result does not change when ``values`` is reversed.

    An odd-length block sets its middle element aside and adds it last, so a
    reversed input produces the mirror-image tree, which rounds identically.
    """
    n = len(values)
    if n == 0:
        return 0.0
    if n == 1:
        return values[0]
    h = n // 2
    if n % 2 == 0:
        return pairwise_sum(values[:h]) + pairwise_sum(values[h:])
    return (pairwise_sum(values[:h]) + pairwise_sum(values[h + 1 :])) + values[h]


def _evaluate(f: Integrand, x: float, index: int) -> float:
    try:
        return f(x)
    except Exception as exc:
        raise EvaluationError(f"integrand failed at node {index} (x={x!r}): {exc}", index=index) from exc


def apply(rule: QuadratureRule, f: Integrand) -> float:
    """``sum_i w_i f(x_i)`` with pairwise summation."""
    return pairwise_sum([w * _evaluate(f, x, i) for i, (x, w) in enumerate(zip(rule.nodes, rule.weights))])


def apply_on_interval(rule: QuadratureRule, f: Integrand, a: float, b: float) -> float:
    """Transfer ``rule`` affinely to ``[a, b]`` and apply it to ``f``."""
    if not a < b:
        raise DomainError(f"interval needs a < b, got [{a}, {b}]")
    half = (b - a) / 2
    mid = (a + b) / 2
    terms = [w * _evaluate(f, half * x + mid, i) for i, (x, w) in enumerate(zip(rule.nodes, rule.weights))]
    return half * pairwise_sum(terms)


def monomial_moment(j: int) -> float:
    """Integral of ``x**j`` over [-1, 1]."""
    return 0.0 if j % 2 else 2.0 / (j + 1)


BASES = ("monomial", "legendre")


def _basis(kind: str, j: int) -> tuple[Integrand, float]:
    if kind == "monomial":
        return (lambda x: x**j), monomial_moment(j)
    if kind == "legendre":
        # I(P_j) = 0 for j >= 1; the defects stay O(1) at every degree, whereas
        # the x**j defects shrink like (2n)! times the error constant
        return (lambda x: legendre_eval(j, x).value), (2.0 if j == 0 else 0.0)
    raise DomainError(f"unknown moment basis {kind!r}; expected one of {BASES}")


@dataclass
class ExactnessReport:
    """Moment defects ``T(b_j) - I(b_j)`` for ``j = 0..degree``."""

    degree: int
    tol: float
    defects: list[float] = field(default_factory=list)
    basis: str = "monomial"

    @property
    def passed(self) -> bool:
        return all(abs(d) <= self.tol for d in self.defects)

    @property
    def worst_degree(self) -> int:
        return max(range(len(self.defects)), key=lambda j: abs(self.defects[j]))

    @property
    def worst_defect(self) -> float:
        return self.defects[self.worst_degree]

    @property
    def first_failure(self) -> int | None:
        for j, d in enumerate(self.defects):
            if abs(d) > self.tol:
                return j
        return None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "tol": self.tol,
            "basis": self.basis,
            "pass": self.passed,
            "worst_degree": self.worst_degree,
            "worst_defect": self.worst_defect,
            "defects": list(self.defects),
        }


def moment_report(
    functional: Callable[[Integrand], float], degree: int, tol: float, basis: str = "monomial"
) -> ExactnessReport:
    if degree < 0:
        raise DomainError(f"degree must be nonnegative, got {degree}")
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    defects = []
    for j in range(degree + 1):
        g, moment = _basis(basis, j)
        defects.append(functional(g) - moment)
    return ExactnessReport(degree, tol, defects, basis)


def exactness_check(
    rule: QuadratureRule, degree: int, tol: float, basis: str = "monomial"
) -> ExactnessReport:
    """Check ``rule`` against the exact moments of degrees ``0..degree``.

    ``basis="monomial"`` compares ``rule(x**j)`` with ``2/(j+1)`` (even j) or
    0. ``basis="legendre"`` uses ``P_j`` instead, which keeps a defect at high
    degree well above rounding level.
    """
    return moment_report(rule, degree, tol, basis)


def composite(rule: QuadratureRule, breakpoints: Sequence[float]):
    """Compound ``rule`` over the panels given by ``breakpoints``.

    Returns a :class:`~quadextremal.operators.PositiveLinearOperator` made of
    point terms only; its exactness degree equals the rule's.
    """
    from .operators import PositiveLinearOperator

    bps = [float(b) for b in breakpoints]
    if len(bps) < 2 or bps[0] != -1.0 or bps[-1] != 1.0:
        raise DomainError("breakpoints must start at -1, end at 1 and have length >= 2")
    if any(b <= a for a, b in zip(bps, bps[1:])):
        raise DomainError("breakpoints must be strictly increasing")
    points = []
    for a, b in zip(bps, bps[1:]):
        half = (b - a) / 2
        mid = (a + b) / 2
        points += [(half * w, half * x + mid) for x, w in zip(rule.nodes, rule.weights)]
    return PositiveLinearOperator(
        points, (), rule.exactness_degree, name=f"composite[{len(bps) - 1}]({rule.name})"
    )
