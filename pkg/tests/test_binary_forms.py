from fractions import Fraction
from math import comb, factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from octavics.binary_forms import (
    BinaryForm,
    Matrix2,
    discriminant,
    form_from_json,
    form_to_json,
    from_hyperelliptic,
    gl2_action,
    make_form,
    parse_polynomial,
    random_form,
    resultant,
    transvectant,
)
from octavics.errors import InputError, UnsupportedModelError

X, Y = sp.symbols("X Y")


def to_sympy(f: BinaryForm):
    return sum(sp.Rational(a.numerator, a.denominator) * X**i * Y ** (f.degree - i)
               for i, a in enumerate(f.coeffs))


def from_sympy(expr, degree):
    poly = sp.Poly(sp.expand(expr), X, Y)
    coeffs = [Fraction(0)] * (degree + 1)
    for (i, j), c in poly.terms():
        if c == 0:
            continue
        assert i + j == degree
        coeffs[i] = Fraction(int(c.p), int(c.q))
    return BinaryForm(degree, tuple(coeffs))


def transvectant_oracle(f, g, r):
    # symbolic differentiation, independent of the coefficient bookkeeping
    m, n = f.degree, g.degree
    F, G = to_sympy(f), to_sympy(g)
    acc = 0
    for k in range(r + 1):
        fd = sp.diff(F, X, r - k, Y, k) if r else F
        gd = sp.diff(G, X, k, Y, r - k) if r else G
        acc += (-1) ** k * comb(r, k) * fd * gd
    pre = sp.Rational(factorial(m - r) * factorial(n - r), factorial(m) * factorial(n))
    return from_sympy(pre * acc, m + n - 2 * r)


ints = st.integers(-6, 6)


@st.composite
def forms(draw, degree=None, max_degree=8):
    d = draw(st.integers(0, max_degree)) if degree is None else degree
    coeffs = draw(st.lists(ints, min_size=d + 1, max_size=d + 1))
    return make_form(d, coeffs)


matrices = st.tuples(*[st.integers(-3, 3)] * 4).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0
).map(lambda t: Matrix2(*t))


def test_transvectant_of_squares():
    x2 = make_form(2, [0, 0, 1])
    y2 = make_form(2, [1, 0, 0])
    assert transvectant(x2, y2, 2).coeffs == (Fraction(1),)


def test_transvectant_level_zero_is_product():
    f = make_form(2, [1, 2, 3])
    g = make_form(1, [-1, 1])
    assert transvectant(f, g, 0) == f * g


def test_transvectant_out_of_range():
    with pytest.raises(InputError):
        transvectant(make_form(2, [1, 0, 1]), make_form(1, [1, 1]), 3)


@settings(max_examples=40)
@given(forms(max_degree=6), forms(max_degree=6), st.integers(0, 6))
def test_transvectant_matches_symbolic(f, g, r):
    r = min(r, f.degree, g.degree)
    assert transvectant(f, g, r) == transvectant_oracle(f, g, r)


@settings(max_examples=30)
@given(forms(max_degree=6), forms(max_degree=6), st.integers(0, 6))
def test_transvectant_symmetry(f, g, r):
    r = min(r, f.degree, g.degree)
    assert transvectant(g, f, r) == transvectant(f, g, r).scale((-1) ** r)


@settings(max_examples=40)
@given(forms(max_degree=6), matrices)
def test_gl2_action_matches_substitution(f, M):
    expr = to_sympy(f).subs({X: M.a * X + M.b * Y, Y: M.c * X + M.d * Y}, simultaneous=True)
    assert gl2_action(f, M) == from_sympy(expr, f.degree)


@settings(max_examples=30)
@given(forms(max_degree=5), forms(max_degree=5), st.integers(0, 5), matrices)
def test_transvectant_equivariance(f, g, r, M):
    r = min(r, f.degree, g.degree)
    lhs = transvectant(gl2_action(f, M), gl2_action(g, M), r)
    rhs = gl2_action(transvectant(f, g, r), M).scale(M.det**r)
    assert lhs == rhs


def test_discriminant_pinned():
    f = from_hyperelliptic(parse_polynomial("x^8-1"))
    assert discriminant(f) == -(2**24)
    assert discriminant(from_hyperelliptic(parse_polynomial("x^7-1"))) == -823543


@settings(max_examples=25)
@given(forms(degree=8))
def test_discriminant_matches_univariate(f):
    x = sp.symbols("x")
    p = sum(int(a) * x**i for i, a in enumerate(f.coeffs))
    if f.coeffs[8] == 0:
        # degree drop: the univariate oracle only sees the affine part
        return
    assert discriminant(f) == sp.discriminant(p, x)


def test_discriminant_vanishes_on_double_root():
    f = make_form(2, [1, -2, 1])  # (X - Y)^2
    g = f * random_form(6, 3, 11)
    assert discriminant(g) == 0


def test_resultant_of_coprime_linear_forms():
    # Res(X - 2Y, X + Y) = det [[1, -2], [1, 1]] up to ordering
    r = resultant(make_form(1, [-2, 1]), make_form(1, [1, 1]))
    assert abs(r) == 3


def test_parse_polynomial():
    assert parse_polynomial("x^7-1") == [-1, 0, 0, 0, 0, 0, 0, 1]
    assert parse_polynomial("3*x^2 + x - 1/2") == [Fraction(-1, 2), 1, 3]
    assert parse_polynomial("-x") == [0, -1]
    with pytest.raises(InputError):
        parse_polynomial("x^^2")
    with pytest.raises(InputError):
        parse_polynomial("")


def test_from_hyperelliptic_degrees():
    f = from_hyperelliptic(parse_polynomial("x^7-1"))
    assert f.degree == 8 and f.coeffs[8] == 0 and f.coeffs[7] == 1
    with pytest.raises(UnsupportedModelError):
        from_hyperelliptic(parse_polynomial("x^5+1"))
    with pytest.raises(UnsupportedModelError):
        from_hyperelliptic(parse_polynomial("x^9+1"))


def test_random_form_is_deterministic():
    assert random_form(8, 4, 7) == random_form(8, 4, 7)
    assert not random_form(8, 1, 3).is_zero()


@given(forms(max_degree=8))
def test_json_round_trip(f):
    assert form_from_json(form_to_json(f)) == f


def test_make_form_length_check():
    with pytest.raises(InputError):
        make_form(3, [1, 2])
