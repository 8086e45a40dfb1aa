"""Exact binary forms over Q.

A form of degree d is stored as the coefficient tuple (a_0, ..., a_d) with

    f(X, Y) = sum_i a_i X^i Y^(d-i).

Everything here is exact (``fractions.Fraction``); forms are immutable.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import InputError, UnsupportedModelError
from .linalg import det_bareiss

__all__ = [
    "BinaryForm",
    "Matrix2",
    "make_form",
    "from_hyperelliptic",
    "parse_polynomial",
    "transvectant",
    "gl2_action",
    "discriminant",
    "resultant",
    "random_form",
    "form_to_json",
    "form_from_json",
]


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise InputError("degree must be non-negative")
        if len(self.coeffs) != self.degree + 1:
            raise InputError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if other.degree != self.degree:
            raise InputError("cannot add forms of different degrees")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BinaryForm:
        return BinaryForm(self.degree, tuple(-a for a in self.coeffs))

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return self + (-other)

    def scale(self, c) -> BinaryForm:
        c = _q(c)
        return BinaryForm(self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: BinaryForm) -> BinaryForm:
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    def __call__(self, x, y=1) -> Fraction:
        x, y = _q(x), _q(y)
        d = self.degree
        return sum((a * x**i * y ** (d - i) for i, a in enumerate(self.coeffs)), Fraction(0))

    def constant(self) -> Fraction:
        """Value of a degree-0 form."""
        if self.degree != 0:
            raise InputError(f"expected a degree-0 form, got degree {self.degree}")
        return self.coeffs[0]

    def dehomogenize(self) -> list[Fraction]:
        """Coefficients of f(x, 1), ascending in x."""
        return list(self.coeffs)

    def __str__(self) -> str:
        d = self.degree
        terms = []
        for i in range(d, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("X" if i == 1 else f"X^{i}"),
                    "" if d - i == 0 else ("Y" if d - i == 1 else f"Y^{d - i}"),
                ) if s
            )
            terms.append(f"({a})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class Matrix2:
    """The substitution (X, Y) -> (aX + bY, cX + dY)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _q(getattr(self, name)))

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> Matrix2:
        return cls(1, 0, 0, 1)


def make_form(degree: int, coeffs: Sequence) -> BinaryForm:
    coeffs = tuple(_q(c) for c in coeffs)
    if len(coeffs) != degree + 1:
        raise InputError(f"degree {degree} form needs {degree + 1} coefficients, got {len(coeffs)}")
    return BinaryForm(degree, coeffs)


def from_hyperelliptic(poly: Sequence) -> BinaryForm:
    """Octavic attached to y^2 = poly(x), poly given by ascending coefficients.

    A degree-7 polynomial gets a branch point at infinity (a_8 = 0).
    """
    coeffs = [_q(c) for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg not in (7, 8):
        raise UnsupportedModelError(f"genus 3 needs a polynomial of degree 7 or 8, got degree {deg}")
    coeffs += [Fraction(0)] * (9 - len(coeffs))
    return BinaryForm(8, tuple(coeffs))


def parse_polynomial(text: str) -> list[Fraction]:
    """Parse a univariate polynomial in x, e.g. ``"x^7-1"`` or ``"3*x^8 + x - 1/2"``.

    Returns ascending coefficients.
    """
    import re

    s = text.replace(" ", "").replace("**", "^").lower()
    if not s:
        raise InputError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    term_re = re.compile(r"([+-])((?:\d+(?:/\d+)?)?)(\*?)(x(?:\^(\d+))?)?")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(4)):
            raise InputError(f"cannot parse polynomial {text!r} near position {pos}")
        if m.group(3) and not m.group(4):
            raise InputError(f"cannot parse polynomial {text!r} near position {pos}")
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            c = -c
        e = 0 if not m.group(4) else int(m.group(5) or 1)
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
        pos = m.end()
    n = max(coeffs) + 1
    return [coeffs.get(i, Fraction(0)) for i in range(n)]


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def _partial(f: BinaryForm, nx: int, ny: int) -> BinaryForm:
    """d^(nx+ny) f / dX^nx dY^ny."""
    d = f.degree
    e = d - nx - ny
    out = []
    for i in range(nx, nx + e + 1):
        a = f.coeffs[i]
        out.append(a * _falling(i, nx) * _falling(d - i, ny) if a else Fraction(0))
    return BinaryForm(e, tuple(out))


def transvectant(f: BinaryForm, g: BinaryForm, r: int) -> BinaryForm:
    """The r-th transvectant (f, g)^r.

    ((m-r)!(n-r)!/(m!n!)) * sum_k (-1)^k C(r,k) f_{X^(r-k) Y^k} g_{X^k Y^(r-k)}
    """
    m, n = f.degree, g.degree
    if r < 0 or r > min(m, n):
        raise InputError(f"transvectant level {r} out of range for degrees {m}, {n}")
    deg = m + n - 2 * r
    acc = [Fraction(0)] * (deg + 1)
    for k in range(r + 1):
        fd = _partial(f, r - k, k)
        gd = _partial(g, k, r - k)
        sign_binom = (-1) ** k * comb(r, k)
        for i, a in enumerate(fd.coeffs):
            if not a:
                continue
            a = a * sign_binom
            for j, b in enumerate(gd.coeffs):
                if b:
                    acc[i + j] += a * b
    pre = Fraction(factorial(m - r) * factorial(n - r), factorial(m) * factorial(n))
    return BinaryForm(deg, tuple(pre * c for c in acc))


def gl2_action(f: BinaryForm, M: Matrix2) -> BinaryForm:
    """f^M(X, Y) = f(aX + bY, cX + dY)."""
    if M.det == 0:
        raise InputError("singular matrix")
    d = f.degree
    # powers of the linear forms aX+bY and cX+dY
    lx = BinaryForm(1, (M.b, M.a))
    ly = BinaryForm(1, (M.d, M.c))
    px = [BinaryForm(0, (Fraction(1),))]
    py = [BinaryForm(0, (Fraction(1),))]
    for _ in range(d):
        px.append(px[-1] * lx)
        py.append(py[-1] * ly)
    out = BinaryForm(d, tuple(Fraction(0) for _ in range(d + 1)))
    for i, a in enumerate(f.coeffs):
        if a:
            out = out + (px[i] * py[d - i]).scale(a)
    return out


def _sylvester(p: Sequence, q: Sequence) -> list[list]:
    """Sylvester matrix of p, q given by descending coefficient lists."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(p) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(q) + [0] * (size - n - 1 - i))
    return rows


def resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Resultant of two binary forms (Sylvester determinant, X-leading order)."""
    p = list(reversed(f.coeffs))
    q = list(reversed(g.coeffs))
    if f.degree == 0 and g.degree == 0:
        return Fraction(1)
    return det_bareiss(_sylvester(p, q))


def discriminant(f: BinaryForm) -> Fraction:
    """J14 = Res(df/dX, df/dY) / 8^6 for an octavic.

    This is the classical discriminant of f (integral for integral f)."""
    if f.degree != 8:
        raise InputError(f"discriminant is defined here for octavics only, got degree {f.degree}")
    if f.is_zero():
        raise InputError("zero form")
    return resultant(_partial(f, 1, 0), _partial(f, 0, 1)) / Fraction(8**6)


def random_form(degree: int, bound: int, seed: int) -> BinaryForm:
    """Deterministic random form with integer coefficients in [-bound, bound], never zero."""
    if bound < 1:
        raise InputError("bound must be at least 1")
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(degree + 1)]
        if any(coeffs):
            return make_form(degree, coeffs)


def _qstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def form_to_json(f: BinaryForm) -> str:
    return json.dumps([_qstr(a) for a in f.coeffs])


def form_from_json(text: str) -> BinaryForm:
    data = json.loads(text)
    return make_form(len(data) - 1, [Fraction(s) for s in data])
