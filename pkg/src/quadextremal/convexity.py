"""Divided differences, grid tests of n-convexity and support polynomials.

A function is n-convex when every divided difference over n + 2 distinct
points is nonnegative (1-convex is ordinary convexity). The support
polynomials built here interpolate ``f`` with doubled (value and slope)
nodes at the interior abscissas of a Gauss, Lobatto or Radau rule; for an
n-convex ``f`` of the matching order they lie entirely on one side of ``f``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError
from .rules import gauss_legendre, lobatto, monomial_moment, radau_left, radau_right

Func = Callable[[float], float]

FD_STEP = 1e-6
DEFAULT_SAMPLES = 10_000
DEFAULT_TOL = 1e-9


def divided_difference(xs: Sequence[float], fs: Sequence[float]) -> float:
    """``[x_1, ..., x_k; f]`` for pairwise distinct abscissas.

    The points are sorted first, so the result does not depend on the order
    in which they are given.
    """
    if len(xs) != len(fs) or not xs:
        raise DomainError("divided_difference needs equally long, nonempty xs and fs")
    pairs = sorted(zip(map(float, xs), map(float, fs)))
    x = [p[0] for p in pairs]
    if any(b == a for a, b in zip(x, x[1:])):
        raise DomainError("repeated abscissa; use hermite_divided_difference for confluent nodes")
    col = [p[1] for p in pairs]
    for j in range(1, len(x)):
        col = [(col[i + 1] - col[i]) / (x[i + j] - x[i]) for i in range(len(col) - 1)]
    return col[0]


@dataclass(frozen=True)
class DividedDiffNode:
    abscissa: float
    multiplicity: int
    values: tuple[float, ...]

    def __post_init__(self):
        if self.multiplicity not in (1, 2):
            raise DomainError(f"multiplicity must be 1 or 2, got {self.multiplicity}")
        if len(self.values) != self.multiplicity:
            raise DomainError(
                f"node at {self.abscissa}: multiplicity {self.multiplicity} needs "
                f"{self.multiplicity} values (f and f'), got {len(self.values)}"
            )


@dataclass(frozen=True)
class NewtonPolynomial:
    """``c_0 + c_1 (x - z_0) + ... + c_m (x - z_0)...(x - z_{m-1})``.

    ``centers`` lists every interpolation node with repetition, so it is one
    longer than the products need; the last center only records the node.
    """

    centers: tuple[float, ...]
    coefficients: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: float) -> float:
        c, z = self.coefficients, self.centers
        p = c[-1]
        for j in range(len(c) - 2, -1, -1):
            p = c[j] + (x - z[j]) * p
        return p

    def value_and_slope(self, x: float) -> tuple[float, float]:
        c, z = self.coefficients, self.centers
        p, dp = c[-1], 0.0
        for j in range(len(c) - 2, -1, -1):
            dp = p + (x - z[j]) * dp
            p = c[j] + (x - z[j]) * p
        return p, dp

    def monomial_coefficients(self) -> list[float]:
        """Coefficients in the power basis, lowest degree first."""
        poly = [self.coefficients[-1]]
        for j in range(len(self.coefficients) - 2, -1, -1):
            z = self.centers[j]
            shifted = [0.0] + poly
            for i, a in enumerate(poly):
                shifted[i] -= z * a
            shifted[0] += self.coefficients[j]
            poly = shifted
        return poly

    def to_dict(self) -> dict:
        return {"centers": list(self.centers), "coefficients": list(self.coefficients)}


def hermite_divided_difference(nodes: Sequence[DividedDiffNode]) -> NewtonPolynomial:
    """Newton form of the Hermite interpolant for simple and doubled nodes.

    On a repeated center the first divided difference is the supplied slope,
    ``[x, x; f] = f'(x)``.
    """
    if not nodes:
        raise DomainError("need at least one node")
    nodes = sorted(nodes, key=lambda nd: nd.abscissa)
    if any(b.abscissa == a.abscissa for a, b in zip(nodes, nodes[1:])):
        raise DomainError("abscissas must be distinct across nodes; use multiplicity instead")
    z: list[float] = []
    vals: list[float] = []
    slopes: list[float | None] = []
    for nd in nodes:
        for _ in range(nd.multiplicity):
            z.append(float(nd.abscissa))
            vals.append(float(nd.values[0]))
            slopes.append(float(nd.values[1]) if nd.multiplicity == 2 else None)
    m = len(z)
    col = vals[:]
    coefs = [col[0]]
    for j in range(1, m):
        nxt = []
        for i in range(m - j):
            if z[i + j] == z[i]:
                nxt.append(slopes[i])
            else:
                nxt.append((col[i + 1] - col[i]) / (z[i + j] - z[i]))
        col = nxt
        coefs.append(col[0])
    return NewtonPolynomial(tuple(z), tuple(coefs))


@dataclass
class ConvexityReport:
    n: int
    tol: float
    passed: bool
    min_value: float
    window_start: int
    window: tuple[float, ...]
    windows_checked: int

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tol": self.tol,
            "pass": self.passed,
            "min_divided_difference": self.min_value,
            "window_start": self.window_start,
            "window": list(self.window),
            "windows_checked": self.windows_checked,
        }


def is_n_convex_on_grid(f: Func, n: int, grid: Sequence[float], tol: float = 1e-10) -> ConvexityReport:
    """Check ``[x_i, ..., x_{i+n+1}; f] >= -tol`` on every consecutive window.

    This is a necessary condition only: it looks at the grid's consecutive
    windows, not at all subsets of n + 2 points.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if tol < 0:
        raise DomainError("tol must be nonnegative")
    g = [float(x) for x in grid]
    if len(g) < n + 2:
        raise DomainError(f"grid needs at least {n + 2} points for n={n}, got {len(g)}")
    if any(b <= a for a, b in zip(g, g[1:])):
        raise DomainError("grid must be strictly increasing")
    fv = [f(x) for x in g]
    best, where = math.inf, 0
    count = len(g) - n - 1
    for i in range(count):
        d = divided_difference(g[i : i + n + 2], fv[i : i + n + 2])
        if d < best:
            best, where = d, i
    return ConvexityReport(n, tol, best >= -tol, best, where, tuple(g[where : where + n + 2]), count)


def uniform_grid(count: int, a: float = -1.0, b: float = 1.0) -> list[float]:
    if count < 2:
        raise DomainError("a grid needs at least two points")
    return [a + (b - a) * i / (count - 1) for i in range(count - 1)] + [b]


class Side(str, enum.Enum):
    BELOW = "below"
    ABOVE = "above"


class SupportKind(str, enum.Enum):
    GAUSS_LOWER = "gauss-lower"
    LOBATTO_UPPER = "lobatto-upper"
    RADAU_LEFT_LOWER = "radau-left-lower"
    RADAU_RIGHT_UPPER = "radau-right-upper"

    @property
    def side(self) -> Side:
        return Side.BELOW if self.name.endswith("LOWER") else Side.ABOVE

    def rule(self, n: int):
        """The rule whose abscissas carry the interpolation conditions."""
        if self is SupportKind.GAUSS_LOWER:
            return gauss_legendre(n)
        if self is SupportKind.LOBATTO_UPPER:
            return lobatto(n + 1)
        if self is SupportKind.RADAU_LEFT_LOWER:
            return radau_left(n + 1)
        return radau_right(n + 1)

    @property
    def required_convexity(self) -> str:
        return "2n-1" if self in (SupportKind.GAUSS_LOWER, SupportKind.LOBATTO_UPPER) else "2n"


def support_nodes(kind: SupportKind, n: int) -> list[tuple[float, int]]:
    """``(abscissa, multiplicity)``: endpoints simple, interior nodes doubled."""
    kind = SupportKind(kind)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return [(x, 1 if abs(x) == 1.0 else 2) for x in kind.rule(n).nodes]


def finite_difference_slope(f: Func, x: float, h: float = FD_STEP) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def support_polynomial(
    f: Func,
    fprime: Func | None,
    kind: SupportKind | str,
    n: int,
    *,
    allow_estimated_derivative: bool = False,
) -> NewtonPolynomial:
    """Double-node Hermite interpolant touching ``f`` at the nodes of ``kind``.

    Degrees: ``2n - 1`` for the Gauss and Lobatto kinds, ``2n`` for Radau.
    Without ``fprime`` a central difference (step 1e-6) is used, but only when
    ``allow_estimated_derivative`` is set, since the result is then not
    certified.
    """
    kind = SupportKind(kind)
    if fprime is None:
        if not allow_estimated_derivative:
            raise DomainError("doubled nodes need f'; pass fprime or allow_estimated_derivative=True")

        def fprime(x):
            return finite_difference_slope(f, x)

    nodes = []
    for x, mult in support_nodes(kind, n):
        vals = (f(x), fprime(x)) if mult == 2 else (f(x),)
        nodes.append(DividedDiffNode(x, mult, vals))
    return hermite_divided_difference(nodes)


@dataclass
class SupportCertificate:
    kind: SupportKind | None
    side: Side
    polynomial: NewtonPolynomial
    sample_count: int
    worst_violation: float
    worst_at: float
    node_residual: float
    tol: float
    derivative_certified: bool = True

    @property
    def passed(self) -> bool:
        return self.worst_violation >= -self.tol and self.node_residual <= self.tol

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value if self.kind else None,
            "side": self.side.value,
            "degree": self.polynomial.degree,
            "polynomial": self.polynomial.to_dict(),
            "monomial": self.polynomial.monomial_coefficients(),
            "sample_count": self.sample_count,
            "worst_violation": self.worst_violation,
            "worst_at": self.worst_at,
            "node_residual": self.node_residual,
            "tol": self.tol,
            "derivative_certified": self.derivative_certified,
            "pass": self.passed,
        }


def verify_support(
    p: NewtonPolynomial,
    f: Func,
    side: Side | str,
    samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
    *,
    kind: SupportKind | None = None,
    fprime: Func | None = None,
) -> SupportCertificate:
    """Sample ``f - p`` on a uniform grid over [-1, 1].

    ``worst_violation`` is ``min(f - p)`` for ``Side.BELOW`` and
    ``min(p - f)`` for ``Side.ABOVE``, so a valid support has it ``>= -tol``.
    ``node_residual`` is the largest mismatch of value (and slope, on doubled
    centers when ``fprime`` is given) at the interpolation nodes.
    """
    side = Side(side)
    if samples < 100:
        raise DomainError("verify_support needs at least 100 samples")
    sign = 1.0 if side is Side.BELOW else -1.0
    worst, worst_at = math.inf, -1.0
    for x in uniform_grid(samples):
        gap = sign * (f(x) - p(x))
        if gap < worst:
            worst, worst_at = gap, x
    residual = 0.0
    for x in sorted(set(p.centers)):
        v, s = p.value_and_slope(x)
        residual = max(residual, abs(v - f(x)))
        if fprime is not None and p.centers.count(x) == 2:
            residual = max(residual, abs(s - fprime(x)))
    return SupportCertificate(kind, side, p, samples, worst, worst_at, residual, tol)


def certify_support(
    f: Func,
    fprime: Func | None,
    kind: SupportKind | str,
    n: int,
    samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
    *,
    allow_estimated_derivative: bool = False,
) -> SupportCertificate:
    kind = SupportKind(kind)
    estimated = fprime is None
    p = support_polynomial(f, fprime, kind, n, allow_estimated_derivative=allow_estimated_derivative)
    cert = verify_support(p, f, kind.side, samples, tol, kind=kind, fprime=fprime)
    cert.derivative_certified = not estimated
    return cert


def integrate_polynomial(p: NewtonPolynomial) -> float:
    """Exact integral over [-1, 1] via the power-basis moments."""
    return math.fsum(c * monomial_moment(j) for j, c in enumerate(p.monomial_coefficients()))
