"""Legendre polynomials and the root sets behind the Gauss-type rules.

Everything here is evaluated by the three-term recurrence

    (k + 1) P_{k+1}(x) = (2k + 1) x P_k(x) - k P_{k-1}(x),  P_0 = 1, P_1 = x

and roots are located by Newton iteration kept inside a bracket that is known
to contain exactly one root (bisection takes over when Newton jumps out).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, RootFindingError

STEP_TOL = 1e-15
MAX_ITER = 100
# below this distance from -1 the Radau quotient switches to its Taylor form
RADAU_GUARD = 1e-8


@dataclass(frozen=True)
class LegendreEval:
    n: int
    value: float
    derivative: float


def _pair(n: int, x: float) -> tuple[float, float]:
    """Return ``(P_n(x), P_{n-1}(x))``; ``P_{-1}`` is taken as 0."""
    if n == 0:
        return 1.0, 0.0
    p_prev, p = 1.0, x
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p, p_prev


def _derivative_by_recurrence(n: int, x: float) -> float:
    # P'_{k+1} = P'_{k-1} + (2k + 1) P_k; has no 1/(1 - x^2) factor
    if n == 0:
        return 0.0
    p_prev, p = 1.0, x
    d_prev, d = 0.0, 1.0
    for k in range(1, n):
        p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        d_next = d_prev + (2 * k + 1) * p
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return d


def legendre_eval(n: int, x: float) -> LegendreEval:
    """Evaluate ``P_n`` and ``P_n'`` at ``x``.

    Away from the endpoints the derivative comes from
    ``(1 - x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x))``; at (and extremely
    close to) ``x = +-1`` that identity degenerates and the derivative
    recurrence is used instead.
    """
    if n < 0:
        raise DomainError(f"Legendre degree must be nonnegative, got {n}")
    p, p_prev = _pair(n, x)
    one_minus = 1.0 - x * x
    if n == 0:
        d = 0.0
    elif one_minus < 1e-10:
        d = _derivative_by_recurrence(n, x)
    else:
        d = n * (p_prev - x * p) / one_minus
    return LegendreEval(n, p, d)


def legendre_second_derivative(n: int, x: float, value: float, derivative: float) -> float:
    """``P_n''`` from the Legendre differential equation (interior points only)."""
    return (2.0 * x * derivative - n * (n + 1) * value) / (1.0 - x * x)


def radau_quotient(m: int, x: float) -> tuple[float, float]:
    """Evaluate ``Q_m(x) = (P_m(x) + P_{m+1}(x)) / (x + 1)`` and its derivative.

    The quotient has a removable singularity at ``x = -1``; within
    ``RADAU_GUARD`` of it a second-order Taylor expansion of the numerator
    about -1 is used, built from the exact endpoint derivatives of ``P_k``.
    """
    if m < 0:
        raise DomainError(f"Radau quotient degree must be nonnegative, got {m}")
    h = x + 1.0
    if abs(h) < RADAU_GUARD:
        # P_k'(-1) = (-1)^(k+1) k(k+1)/2, P_k''(-1) = (-1)^k (k-1)k(k+1)(k+2)/8
        def d1(k):
            return (-1) ** (k + 1) * k * (k + 1) / 2.0

        def d2(k):
            return (-1) ** k * (k - 1) * k * (k + 1) * (k + 2) / 8.0

        def d3(k):
            return (-1) ** (k + 1) * (k - 2) * (k - 1) * k * (k + 1) * (k + 2) * (k + 3) / 48.0

        f1 = d1(m) + d1(m + 1)
        f2 = d2(m) + d2(m + 1)
        f3 = d3(m) + d3(m + 1)
        return f1 + 0.5 * f2 * h, 0.5 * f2 + f3 * h / 3.0
    a = legendre_eval(m, x)
    b = legendre_eval(m + 1, x)
    q = (a.value + b.value) / h
    dq = (a.derivative + b.derivative - q) / h
    return q, dq


def _refine(
    g: Callable[[float], tuple[float, float]],
    lo: float,
    hi: float,
    x0: float,
    label: str,
) -> float:
    """Newton iteration on ``g`` safeguarded by the sign-change bracket ``[lo, hi]``."""
    g_lo = g(lo)[0]
    if g_lo == 0.0:
        return lo
    if g(hi)[0] == 0.0:
        return hi
    x = x0 if lo < x0 < hi else 0.5 * (lo + hi)
    for _ in range(MAX_ITER):
        v, d = g(x)
        if v == 0.0:
            return x
        if (v > 0.0) == (g_lo > 0.0):
            lo = x
        else:
            hi = x
        x_new = x - v / d if d != 0.0 else math.inf
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= STEP_TOL or hi - lo <= 2.0 * math.ulp(x_new):
            return x_new
        x = x_new
    raise RootFindingError(
        f"{label}: no convergence after {MAX_ITER} iterations from initial guess {x0!r}"
    )


def _symmetrize(roots: list[float]) -> list[float]:
    n = len(roots)
    out = list(roots)
    for i in range(n // 2):
        r = 0.5 * (out[n - 1 - i] - out[i])
        out[i], out[n - 1 - i] = -r, r
    if n % 2:
        out[n // 2] = 0.0
    return out


def legendre_roots(n: int) -> list[float]:
    """The ``n`` roots of ``P_n`` in increasing order.

    Each root is bracketed by Bruns' inequality on its angle
    ``(k - 1/2) pi / (n + 1/2) < theta_k < k pi / (n + 1/2)``.
    """
    if n < 1:
        raise DomainError(f"legendre_roots needs n >= 1, got {n}")

    def g(x):
        e = legendre_eval(n, x)
        return e.value, e.derivative

    roots = []
    for k in range(1, n + 1):
        lo = math.cos(k * math.pi / (n + 0.5))
        hi = math.cos((k - 0.5) * math.pi / (n + 0.5))
        seed = math.cos(math.pi * (4 * k - 1) / (4 * n + 2))
        roots.append(_refine(g, lo, hi, seed, f"legendre_roots(n={n})"))
    roots.reverse()
    return _symmetrize(roots)


def lobatto_interior_roots(n: int) -> list[float]:
    """Roots of ``P'_{n-1}``: the interior nodes of the ``n``-point Lobatto rule.

    By Rolle's theorem each root sits between two consecutive roots of
    ``P_{n-1}``, which gives the brackets.
    """
    if n < 3:
        raise DomainError(f"lobatto_interior_roots needs n >= 3, got {n}")
    m = n - 1

    def g(x):
        e = legendre_eval(m, x)
        return e.derivative, legendre_second_derivative(m, x, e.value, e.derivative)

    brackets = legendre_roots(m)
    roots = []
    for k in range(1, m):
        seed = -math.cos(math.pi * k / m)
        roots.append(
            _refine(g, brackets[k - 1], brackets[k], seed, f"lobatto_interior_roots(n={n})")
        )
    return _symmetrize(roots)


def radau_roots(n: int) -> list[float]:
    """Roots of ``Q_{n-1} = (P_{n-1} + P_n) / (x + 1)``, the free Radau nodes.

    ``P_{n-1}`` alternates in sign over the roots of ``P_n``, so each gap
    between consecutive roots of ``P_n`` holds exactly one root.
    """
    if n < 2:
        raise DomainError(f"radau_roots needs n >= 2, got {n}")
    m = n - 1

    def g(x):
        return radau_quotient(m, x)

    brackets = legendre_roots(n)
    roots = []
    for k in range(1, n):
        seed = -math.cos(2.0 * math.pi * k / (2 * n - 1))
        roots.append(_refine(g, brackets[k - 1], brackets[k], seed, f"radau_roots(n={n})"))
    return roots
