import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quadextremal.convexity import (
    DividedDiffNode,
    NewtonPolynomial,
    Side,
    SupportKind,
    certify_support,
    divided_difference,
    hermite_divided_difference,
    integrate_polynomial,
    is_n_convex_on_grid,
    support_nodes,
    support_polynomial,
    uniform_grid,
    verify_support,
)
from quadextremal.corpus import convex_corpus
from quadextremal.errors import DomainError
from quadextremal.rules import apply, gauss_legendre, lobatto, radau_left, radau_right

S3 = math.sqrt(3) / 3


def exact_divided_difference(xs, fs):
    """Rational recurrence on unsorted input, as an independent oracle."""
    col = [Fraction(v) for v in fs]
    x = [Fraction(v) for v in xs]
    for j in range(1, len(x)):
        col = [(col[i + 1] - col[i]) / (x[i + j] - x[i]) for i in range(len(col) - 1)]
    return col[0]


def test_divided_difference_examples():
    assert divided_difference([0], [5]) == 5
    assert divided_difference([0, 1], [0, 1]) == 1
    assert divided_difference([0, 1, 2], [0, 1, 4]) == 1


def test_divided_difference_rejects_duplicates():
    with pytest.raises(DomainError, match="hermite"):
        divided_difference([0.0, 1.0, 0.0], [1.0, 2.0, 1.0])
    with pytest.raises(DomainError):
        divided_difference([0.0, 1.0], [1.0])
    with pytest.raises(DomainError):
        divided_difference([], [])


def test_matches_rational_oracle(rng):
    for _ in range(100):
        k = rng.randint(1, 7)
        xs = rng.sample(range(-50, 50), k)
        xs = [x / 37 for x in xs]
        fs = [rng.uniform(-2, 2) for _ in xs]
        want = float(exact_divided_difference(xs, fs))
        got = divided_difference(xs, fs)
        assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=2, max_size=7, unique=True), st.randoms(use_true_random=False))
def test_permutation_invariance(xs, r):
    if min(abs(a - b) for i, a in enumerate(xs) for b in xs[i + 1 :]) < 1e-3:
        return
    fs = [math.exp(x) for x in xs]
    base = divided_difference(xs, fs)
    pairs = list(zip(xs, fs))
    r.shuffle(pairs)
    other = divided_difference([p[0] for p in pairs], [p[1] for p in pairs])
    assert other == base


def test_polynomials_have_vanishing_high_divided_differences(rng):
    for n in range(1, 7):
        coefs = [rng.uniform(-1, 1) for _ in range(n + 1)]
        xs = sorted(rng.uniform(-1, 1) for _ in range(n + 2))
        fs = [sum(c * x**j for j, c in enumerate(coefs)) for x in xs]
        scale = max(abs(c) for c in coefs) / min(b - a for a, b in zip(xs, xs[1:])) ** (n + 1)
        assert abs(divided_difference(xs, fs)) <= 1e-10 * max(1.0, scale)


def test_hermite_taylor_line():
    p = hermite_divided_difference([DividedDiffNode(0.0, 2, (1.0, 3.0))])
    assert p.degree == 1
    assert p.monomial_coefficients() == [1.0, 3.0]


def test_hermite_recovers_quadratic():
    nodes = [DividedDiffNode(x, 2, (x * x, 2 * x)) for x in (-S3, S3)]
    p = hermite_divided_difference(nodes)
    c = p.monomial_coefficients()
    assert p.degree == 3
    for got, want in zip(c, [0.0, 0.0, 1.0, 0.0]):
        assert abs(got - want) <= 1e-14


def test_hermite_mixed_nodes():
    nodes = [DividedDiffNode(-1.0, 1, (math.exp(-1),)), DividedDiffNode(0.0, 2, (1.0, 1.0)), DividedDiffNode(1.0, 1, (math.e,))]
    p = hermite_divided_difference(nodes)
    assert p.degree == 3
    assert p(0.0) == 1.0
    assert p.value_and_slope(0.0)[1] == pytest.approx(1.0, abs=1e-15)
    assert p(-1.0) == pytest.approx(math.exp(-1), abs=1e-15)
    assert p(1.0) == pytest.approx(math.e, abs=1e-15)


def test_hermite_errors():
    with pytest.raises(DomainError, match="needs 2 values"):
        DividedDiffNode(0.0, 2, (1.0,))
    with pytest.raises(DomainError):
        DividedDiffNode(0.0, 3, (1.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        hermite_divided_difference([DividedDiffNode(0.0, 1, (1.0,)), DividedDiffNode(0.0, 1, (2.0,))])
    with pytest.raises(DomainError):
        hermite_divided_difference([])


def test_newton_polynomial_evaluation_and_expansion(rng):
    for _ in range(30):
        m = rng.randint(1, 8)
        centers = tuple(rng.uniform(-1, 1) for _ in range(m))
        coefs = tuple(rng.uniform(-1, 1) for _ in range(m))
        p = NewtonPolynomial(centers, coefs)
        mono = p.monomial_coefficients()
        for _ in range(5):
            x = rng.uniform(-1, 1)
            assert abs(p(x) - sum(c * x**j for j, c in enumerate(mono))) <= 1e-12
            h = 1e-6
            assert abs(p.value_and_slope(x)[1] - (p(x + h) - p(x - h)) / (2 * h)) <= 1e-6


def test_grid_convexity_examples():
    rep = is_n_convex_on_grid(math.exp, 3, uniform_grid(50), 1e-10)
    assert rep.passed and rep.windows_checked == 50 - 5 + 1
    rep = is_n_convex_on_grid(lambda x: x**3, 1, uniform_grid(40), 1e-10)
    assert not rep.passed
    assert max(rep.window) <= 0.0
    assert is_n_convex_on_grid(abs, 1, uniform_grid(41), 1e-10).passed


def test_grid_errors():
    with pytest.raises(DomainError):
        is_n_convex_on_grid(math.exp, 3, uniform_grid(4))
    with pytest.raises(DomainError):
        is_n_convex_on_grid(math.exp, 1, [0.0, 0.5, 0.2])
    with pytest.raises(DomainError):
        is_n_convex_on_grid(math.exp, 1, uniform_grid(5), -1.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_discrete_consistency_with_derivative_sign(n):
    # members with f^(n+1) >= 0
    for f in convex_corpus(n, size=25, seed=3):
        rep = is_n_convex_on_grid(f, n, uniform_grid(200), 1e-10)
        assert rep.passed, (f.text, rep.min_value)


def test_support_node_layout():
    g = support_nodes(SupportKind.GAUSS_LOWER, 2)
    assert [m for _, m in g] == [2, 2] and abs(g[1][0] - S3) <= 1e-15
    lob = support_nodes(SupportKind.LOBATTO_UPPER, 2)
    assert [m for _, m in lob] == [1, 2, 1] and lob[1][0] == 0.0
    rl = support_nodes(SupportKind.RADAU_LEFT_LOWER, 2)
    assert rl[0] == (-1.0, 1) and [m for _, m in rl[1:]] == [2, 2]
    rr = support_nodes(SupportKind.RADAU_RIGHT_UPPER, 2)
    assert rr[-1] == (1.0, 1) and [m for _, m in rr[:-1]] == [2, 2]


@pytest.mark.parametrize("kind", list(SupportKind))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_support_degrees(kind, n):
    p = support_polynomial(math.exp, math.exp, kind, n)
    assert p.degree == (2 * n - 1 if kind in (SupportKind.GAUSS_LOWER, SupportKind.LOBATTO_UPPER) else 2 * n)


def test_tangent_line_of_exp():
    p = support_polynomial(math.exp, math.exp, SupportKind.GAUSS_LOWER, 1)
    assert p.monomial_coefficients() == [1.0, 1.0]
    cert = verify_support(p, math.exp, Side.BELOW, 10_000, 1e-12)
    assert cert.passed and cert.worst_violation >= -1e-12


def test_gauss_cubic_for_exp():
    cert = certify_support(math.exp, math.exp, SupportKind.GAUSS_LOWER, 2)
    assert cert.passed
    assert abs(integrate_polynomial(cert.polynomial) - apply(gauss_legendre(2), math.exp)) <= 1e-10


def test_lobatto_cubic_for_exp():
    cert = certify_support(math.exp, math.exp, "lobatto-upper", 2)
    assert cert.passed and cert.side is Side.ABOVE
    assert sorted(set(cert.polynomial.centers)) == [-1.0, 0.0, 1.0]
    assert abs(integrate_polynomial(cert.polynomial) - apply(lobatto(3), math.exp)) <= 1e-10


def test_quartic_interpolant_integral():
    p = support_polynomial(lambda x: x**4, lambda x: 4 * x**3, SupportKind.GAUSS_LOWER, 2)
    assert integrate_polynomial(p) == pytest.approx(2 / 9, abs=1e-14)


def test_wrong_side_fails():
    p = support_polynomial(math.exp, math.exp, SupportKind.GAUSS_LOWER, 2)
    cert = verify_support(p, math.exp, Side.ABOVE)
    assert not cert.passed and cert.worst_violation < -1e-3


def test_missing_derivative_is_refused():
    with pytest.raises(DomainError):
        support_polynomial(math.exp, None, SupportKind.GAUSS_LOWER, 2)
    cert = certify_support(math.exp, None, SupportKind.GAUSS_LOWER, 2, allow_estimated_derivative=True)
    assert not cert.derivative_certified
    assert cert.passed


def test_too_few_samples():
    p = support_polynomial(math.exp, math.exp, SupportKind.GAUSS_LOWER, 1)
    with pytest.raises(DomainError):
        verify_support(p, math.exp, Side.BELOW, samples=50)


def test_integrate_polynomial_examples():
    assert integrate_polynomial(NewtonPolynomial((0.0,), (1.0,))) == 2.0
    assert integrate_polynomial(NewtonPolynomial((0.0, 0.0, 0.0, 0.0), (0.0, 0.0, 0.0, 1.0))) == 0.0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_corpus_support_certificates(n):
    odd, even = convex_corpus(2 * n - 1, size=12, seed=1), convex_corpus(2 * n, size=12, seed=1)
    kinds = [(odd, SupportKind.GAUSS_LOWER), (odd, SupportKind.LOBATTO_UPPER),
             (even, SupportKind.RADAU_LEFT_LOWER), (even, SupportKind.RADAU_RIGHT_UPPER)]
    for corpus, kind in kinds:
        for f in corpus:
            cert = certify_support(f, f.derivative(1), kind, n, samples=10_000, tol=1e-9)
            assert cert.passed, (f.text, kind, cert.worst_violation, cert.node_residual)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_support_integral_equals_gauss(n):
    g = gauss_legendre(n)
    for f in convex_corpus(2 * n - 1, size=10, seed=2):
        p = support_polynomial(f, f.derivative(1), SupportKind.GAUSS_LOWER, n)
        assert abs(integrate_polynomial(p) - apply(g, f)) <= 1e-9 * max(1.0, abs(apply(g, f)))
