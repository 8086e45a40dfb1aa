from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from octavics.binary_forms import Matrix2, from_hyperelliptic, gl2_action, make_form, parse_polynomial
from octavics.errors import InputError
from octavics.shioda import moduli_point
from octavics.wps import (
    HeightValue,
    WeightedPoint,
    absolute_minimal,
    act,
    box_bounds,
    height,
    height_leq,
    is_twist,
    minimal_tuple,
    normalization_trace,
    normalize_convention,
    normalized_absolute_minimal,
    parse_rational,
    reduce_to_integral,
    sign_diagnostic,
    unit_twists,
)

X8 = (-280, 0, 2458624, 0, 3855122432, 0, -15112079933440)

coords = st.lists(st.integers(-2000, 2000), min_size=7, max_size=7).filter(any)
points = coords.map(WeightedPoint)
scales = st.integers(-12, 12).filter(lambda v: v not in (0,))


def test_parse_rational_exact():
    assert parse_rational("3/2") == parse_rational("1.5") == Fraction(3, 2)
    assert parse_rational("1") == 1
    with pytest.raises(InputError):
        parse_rational(1.5)
    with pytest.raises(InputError):
        parse_rational("abc")


def test_box_bounds():
    assert box_bounds(1) == (1,) * 7
    assert box_bounds("3/2") == (2, 3, 5, 7, 11, 17, 25)


def test_x7_chain():
    tr = normalization_trace(WeightedPoint([0, 0, 0, 0, 0, -395300640, 0]))
    assert tr.absolute.ints() == (0, 0, 0, 0, 0, -1, 0)
    assert tr.normalized.ints() == (0, 0, 0, 0, 0, 1, 0)
    assert height(tr.normalized).same_as(HeightValue(7, 1))


def test_x8_chain_magnitudes():
    p = WeightedPoint(X8)
    # lambda = 1/2
    assert minimal_tuple(p).ints() == (-70, 0, 153664, 0, 60236288, 0, -59031562240)
    assert minimal_tuple(p) == act(Fraction(1, 2), p)
    # lambda^2 = -1/2 on the even support, then lambda^2 = 1/7
    step = WeightedPoint(c * Fraction(-1, 2) ** (w // 2) for w, c in zip(p.weights, minimal_tuple(p).coords))
    assert [abs(c) for c in step.ints()] == [35, 0, 2**4 * 7**4, 0, 2**6 * 7**6, 0, 2**7 * 5 * 7**8]
    am = absolute_minimal(p)
    assert [abs(c) for c in am.ints()] == [5, 0, 2**4 * 7**2, 0, 2**6 * 7**3, 0, 2**7 * 5 * 7**4]


def test_x8_printed_signs_are_flagged():
    am = absolute_minimal(WeightedPoint(X8))
    diag = sign_diagnostic([5, 0, 784, 0, 21952, 0, -1536640], am)
    assert diag.magnitudes_match and not diag.reachable
    assert "not reachable" in diag.message


def test_reduce_to_integral():
    p = reduce_to_integral(WeightedPoint([Fraction(1, 2), Fraction(1, 27), 0, 0, 0, 0, 0]))
    assert p.ints() == (18, 8, 0, 0, 0, 0, 0)


def test_height_examples():
    assert height(WeightedPoint([0, 0, 0, 0, 0, 1, 0])).same_as(HeightValue(7, 1))
    h = height(WeightedPoint([-2, -3, 0, 1, 0, 0, 0]))
    assert h.same_as(HeightValue(3, 3))
    assert h.leq("3/2") and not h.leq("1")
    assert h.decimal() == "1.442250"
    assert height_leq(WeightedPoint([-2, -3, 0, 1, 0, 0, 0]), "3/2")


def test_height_comparisons_exact():
    # 2^(1/2) < 3^(1/3)? 2^3 = 8 < 9 = 3^2
    assert HeightValue(2, 2) < HeightValue(3, 3)
    assert HeightValue(2, 4).same_as(HeightValue(4, 16))
    assert HeightValue(2, 16, 2).same_as(HeightValue(2, 4))


def test_requires_integral():
    with pytest.raises(InputError):
        minimal_tuple(WeightedPoint([Fraction(1, 2), 0, 0, 0, 0, 0, 0]))


@settings(max_examples=200)
@given(points)
def test_normalizers_idempotent(p):
    m = minimal_tuple(p)
    assert minimal_tuple(m) == m
    a = absolute_minimal(p)
    assert absolute_minimal(a) == a
    n = normalize_convention(a)
    assert normalize_convention(n) == n
    assert normalized_absolute_minimal(n) == n


@settings(max_examples=200)
@given(points)
def test_normalizers_do_not_raise_height(p):
    hp = height(p)
    assert height(minimal_tuple(p)) <= hp
    a = absolute_minimal(p)
    assert height(a) <= height(minimal_tuple(p))
    assert height(normalize_convention(a)).same_as(height(a))


@settings(max_examples=200)
@given(points, scales)
def test_height_consistency(p, lam):
    # the divisor accounts exactly for what minimal_tuple strips off
    q = act(lam, p)
    sign = 1 if lam > 0 else -1
    assert minimal_tuple(q) == act(sign, minimal_tuple(p))
    assert height(q).same_as(height(minimal_tuple(q)))
    assert height(q).same_as(height(p))


@settings(max_examples=200)
@given(points, scales)
def test_twist_invariance_rational(p, lam):
    assert normalized_absolute_minimal(act(lam, p)) == normalized_absolute_minimal(p)


@settings(max_examples=100)
@given(points, st.integers(1, 6), st.sampled_from([2, 3, 5, 7]))
def test_twist_invariance_radical(p, a, q):
    # multiply by q^(a/g), which keeps the tuple integral
    g = 0
    from math import gcd

    for w in p.support:
        g = gcd(g, w)
    lifted = WeightedPoint(c * q ** (a * w // g) for w, c in zip(p.weights, p.coords))
    assert is_twist(lifted, p)


@settings(max_examples=200)
@given(points)
def test_unit_twists_share_normal_form(p):
    target = normalize_convention(p)
    for t in unit_twists(p):
        assert normalize_convention(t) == target
        assert height(t).same_as(height(p))


@given(points)
def test_json_round_trip(p):
    assert WeightedPoint.from_json(p.to_json()) == p


def test_trace_reports_sign_flips():
    tr = normalization_trace(WeightedPoint([0, 0, 0, 0, 0, -395300640, 0]))
    assert tr.sign_changes == (7,) and tr.support_gcd == 7 and tr.twist_exponent == 1


octavics_ = st.lists(st.integers(-3, 3), min_size=9, max_size=9).map(lambda c: make_form(8, c))
matrices = st.tuples(*[st.integers(-3, 3)] * 4).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0
).map(lambda t: Matrix2(*t))


@settings(max_examples=30)
@given(octavics_, matrices)
def test_equivalent_curves_same_normal_form(f, M):
    from octavics.binary_forms import discriminant

    assume(discriminant(f) != 0)
    p = moduli_point(f)
    q = moduli_point(gl2_action(f, M))
    assert is_twist(p, q)


def test_x7_from_curve():
    p = moduli_point(from_hyperelliptic(parse_polynomial("x^7-1")))
    assert normalized_absolute_minimal(p).ints() == (0, 0, 0, 0, 0, 1, 0)
