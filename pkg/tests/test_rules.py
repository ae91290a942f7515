import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadextremal.errors import DomainError, EvaluationError, RangeError
from quadextremal.rules import (
    Family,
    QuadratureRule,
    apply,
    apply_on_interval,
    build,
    composite,
    exactness_check,
    gauss_legendre,
    lobatto,
    pairwise_sum,
    radau_left,
    radau_right,
)

# mpmath, 30 digits
G2_EXP = 2.34269608790973057778
LOB3_EXP = 2.36205375654349585232
RAD3L_EXP = 2.34950631089015486781
I_EXP = math.e - 1 / math.e

ALL = [(Family.GAUSS_LEGENDRE, n) for n in range(1, 21)] + [
    (fam, n) for fam in (Family.LOBATTO, Family.RADAU_LEFT, Family.RADAU_RIGHT) for n in range(2, 21)
]


def test_gauss_1_is_midpoint():
    r = gauss_legendre(1)
    assert r.nodes == (0.0,)
    assert r.weights == (2.0,)
    assert r.exactness_degree == 1


def test_gauss_2_and_3_closed_forms():
    g2 = gauss_legendre(2)
    assert g2.nodes == pytest.approx((-math.sqrt(3) / 3, math.sqrt(3) / 3), abs=1e-15)
    assert g2.weights == pytest.approx((1.0, 1.0), abs=1e-15)
    g3 = gauss_legendre(3)
    assert g3.weights == pytest.approx((5 / 9, 8 / 9, 5 / 9), abs=1e-15)


def test_lobatto_small():
    l2 = lobatto(2)
    assert l2.nodes == (-1.0, 1.0) and l2.weights == (1.0, 1.0)
    assert l2.exactness_degree == 1
    l3 = lobatto(3)
    assert l3.nodes == (-1.0, 0.0, 1.0)
    assert l3.weights == pytest.approx((1 / 3, 4 / 3, 1 / 3), abs=1e-15)
    l4 = lobatto(4)
    assert l4.weights[0] == l4.weights[-1] == pytest.approx(1 / 6, abs=1e-16)


def test_radau_left_small():
    r2 = radau_left(2)
    assert r2.nodes == pytest.approx((-1.0, 1 / 3), abs=1e-15)
    assert r2.weights == pytest.approx((0.5, 1.5), abs=1e-15)
    r3 = radau_left(3)
    s6 = math.sqrt(6)
    assert r3.nodes == pytest.approx((-1.0, (1 - s6) / 5, (1 + s6) / 5), abs=1e-15)
    assert r3.weights == pytest.approx((2 / 9, (16 + s6) / 18, (16 - s6) / 18), abs=1e-15)


def test_radau_right_is_reflection():
    r2 = radau_right(2)
    assert r2.nodes == pytest.approx((-1 / 3, 1.0), abs=1e-15)
    assert r2.weights == pytest.approx((1.5, 0.5), abs=1e-15)
    r3 = radau_right(3)
    s6 = math.sqrt(6)
    assert r3.nodes == pytest.approx((-(1 + s6) / 5, (s6 - 1) / 5, 1.0), abs=1e-15)
    assert r3.weights == pytest.approx(((16 - s6) / 18, (16 + s6) / 18, 2 / 9), abs=1e-15)
    assert apply(r3, lambda x: x) == -apply(radau_left(3), lambda x: x)


@pytest.mark.parametrize("family,n", ALL)
def test_rule_invariants(family, n):
    r = build(family, n)
    assert all(w > 0 for w in r.weights)
    assert abs(math.fsum(r.weights) - 2.0) <= 1e-12
    assert all(a < b for a, b in zip(r.nodes, r.nodes[1:]))
    assert all(-1 <= x <= 1 for x in r.nodes)
    if family is Family.LOBATTO:
        assert r.nodes[0] == -1.0 and r.nodes[-1] == 1.0
    if family is Family.RADAU_LEFT:
        assert r.nodes[0] == -1.0
    if family is Family.RADAU_RIGHT:
        assert r.nodes[-1] == 1.0
    expected = {"gauss": 2 * n - 1, "lobatto": 2 * n - 3}.get(family.value, 2 * n - 2)
    assert r.exactness_degree == expected


@pytest.mark.parametrize("family,n", ALL)
def test_exactness_and_first_defect(family, n):
    r = build(family, n)
    d = r.exactness_degree
    assert exactness_check(r, d, 1e-10).passed
    assert exactness_check(r, d, 1e-10, basis="legendre").passed
    bad = exactness_check(r, d + 2, 1e-10, basis="legendre")
    assert bad.first_failure == d + 1
    assert abs(bad.defects[d + 1]) > 1e-6


def test_g2_fails_on_x4():
    rep = exactness_check(gauss_legendre(2), 4, 1e-12)
    assert not rep.passed
    assert rep.first_failure == 4
    assert rep.defects[4] == pytest.approx(2 / 9 - 2 / 5, abs=1e-15)
    assert exactness_check(gauss_legendre(2), 3, 1e-12).passed
    assert exactness_check(radau_left(3), 4, 1e-12).passed


@pytest.mark.parametrize("n", [0, 31, 2.0])
def test_gauss_range(n):
    with pytest.raises(RangeError):
        gauss_legendre(n)


@pytest.mark.parametrize("builder", [lobatto, radau_left, radau_right])
def test_other_ranges(builder):
    with pytest.raises(RangeError):
        builder(1)
    with pytest.raises(RangeError):
        builder(31)


def test_apply_values():
    assert apply(gauss_legendre(2), math.exp) == pytest.approx(G2_EXP, abs=1e-15)
    assert apply(lobatto(3), lambda x: x * x) == pytest.approx(2 / 3, abs=1e-15)
    assert apply(radau_left(3), math.exp) > apply(gauss_legendre(2), math.exp)
    assert apply(radau_left(3), math.exp) == pytest.approx(RAD3L_EXP, abs=1e-15)


def test_apply_propagates_with_index():
    def f(x):
        if x > 0:
            raise ZeroDivisionError("boom")
        return x

    with pytest.raises(EvaluationError) as info:
        apply(gauss_legendre(3), f)
    assert info.value.index == 2


def test_apply_on_interval():
    f = math.cos
    assert apply_on_interval(gauss_legendre(1), f, 0.2, 0.7) == pytest.approx(0.5 * f(0.45), abs=1e-16)
    assert apply_on_interval(lobatto(2), math.exp, 0, 1) == pytest.approx((1 + math.e) / 2, abs=1e-15)
    assert abs(apply_on_interval(gauss_legendre(5), math.exp, 0, 1) - (math.e - 1)) <= 1e-12
    with pytest.raises(DomainError):
        apply_on_interval(gauss_legendre(2), f, 1, 1)


@pytest.mark.parametrize("family,n", [(Family.GAUSS_LEGENDRE, 7), (Family.RADAU_LEFT, 4), (Family.LOBATTO, 6)])
def test_interval_minus_one_one_is_bitwise_apply(family, n):
    r = build(family, n)
    for f in (math.exp, math.sin, lambda x: 1 / (2 + x)):
        assert apply_on_interval(r, f, -1.0, 1.0) == apply(r, f)


@settings(max_examples=100, deadline=None)
@given(
    n=st.integers(2, 12),
    coefs=st.lists(st.floats(-3, 3), min_size=1, max_size=4),
    shift=st.floats(-0.5, 0.5),
)
def test_radau_right_equals_reflected_left(n, coefs, shift):
    def f(x):
        return sum(c * math.sin((k + 1) * x + shift) for k, c in enumerate(coefs)) + math.exp(shift * x)

    assert apply(radau_right(n), f) == apply(radau_left(n), lambda x: f(-x))


@settings(max_examples=200)
@given(st.lists(st.floats(-1e6, 1e6), max_size=40))
def test_pairwise_sum_reversal_invariant(values):
    assert pairwise_sum(values) == pairwise_sum(values[::-1])
    assert pairwise_sum(values) == pytest.approx(math.fsum(values), abs=1e-6)


def test_composite():
    op = composite(gauss_legendre(2), [-1.0, 0.0, 1.0])
    assert op(lambda x: x**3) == pytest.approx(0.0, abs=1e-16)
    assert op(lambda x: x**2) == pytest.approx(2 / 3, abs=1e-15)
    assert op.claimed_exactness == 3
    trap = composite(lobatto(2), [-1, -0.5, 0, 0.5, 1])
    # direct summation of the composite trapezoid rule
    xs = [-1, -0.5, 0, 0.5, 1]
    direct = 0.25 * (math.exp(-1) + 2 * sum(math.exp(x) for x in xs[1:-1]) + math.exp(1))
    assert trap(math.exp) == pytest.approx(direct, abs=1e-14)
    assert trap(math.exp) >= I_EXP


@pytest.mark.parametrize("bps", [[-1], [-1, 0.5], [0, 1], [-1, 0.2, 0.1, 1]])
def test_composite_rejects_bad_breakpoints(bps):
    with pytest.raises(DomainError):
        composite(gauss_legendre(2), bps)


def test_json_round_trip():
    r = radau_left(5)
    data = json.loads(r.to_json())
    assert set(data) == {"family", "n", "nodes", "weights", "exactness_degree"}
    assert QuadratureRule.from_dict(data) == r


def test_table_has_17_digits():
    t = gauss_legendre(3).to_table().splitlines()
    assert t[0].startswith("# gauss(3)")
    node, weight = t[-1].split()
    assert float(node) == gauss_legendre(3).nodes[-1]
    assert float(weight) == gauss_legendre(3).weights[-1]


def test_nonpositive_weights_rejected():
    with pytest.raises(DomainError):
        QuadratureRule(Family.GAUSS_LEGENDRE, 1, (0.0,), (0.0,), 1)


def test_family_parse():
    assert Family.parse("Gauss_Legendre") is Family.GAUSS_LEGENDRE
    assert Family.parse("radau") is Family.RADAU_LEFT
    with pytest.raises(DomainError):
        Family.parse("simpson")
