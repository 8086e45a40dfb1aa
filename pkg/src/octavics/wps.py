"""Points of the weighted projective space P(2,3,4,5,6,7,8) over Q.

A point is stored by a representative tuple (J2, ..., J8); lambda acts as
J_i -> lambda^i J_i.  Everything that decides membership, divisibility or a
height comparison is exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import factorint

from .errors import DegenerateTupleError, InputError

__all__ = [
    "WEIGHTS",
    "WeightedPoint",
    "HeightValue",
    "NormalizationTrace",
    "act",
    "reduce_to_integral",
    "minimal_tuple",
    "height",
    "height_leq",
    "absolute_minimal",
    "unit_twists",
    "normalize_convention",
    "normalized_absolute_minimal",
    "normalization_trace",
    "is_twist",
    "SignDiagnostic",
    "sign_diagnostic",
    "box_bounds",
    "parse_rational",
]

WEIGHTS = (2, 3, 4, 5, 6, 7, 8)


def parse_rational(text) -> Fraction:
    """Exact rational from "3/2", "1.5", 2, or a Fraction; rejects floats."""
    if isinstance(text, float):
        raise InputError("pass heights as exact strings or fractions, not floats")
    try:
        return Fraction(str(text).strip()) if not isinstance(text, Fraction) else text
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


@dataclass(frozen=True)
class WeightedPoint:
    coords: tuple[Fraction, ...]
    weights: tuple[int, ...] = WEIGHTS

    def __init__(self, coords: Iterable, weights: Sequence[int] = WEIGHTS):
        cs = []
        for c in coords:
            if isinstance(c, float):
                raise InputError("floating point coordinates are not allowed")
            cs.append(c if isinstance(c, Fraction) else Fraction(c))
        if len(cs) != len(weights):
            raise InputError(f"expected {len(weights)} coordinates, got {len(cs)}")
        if not any(cs):
            raise DegenerateTupleError("the all-zero tuple is not a point")
        object.__setattr__(self, "coords", tuple(cs))
        object.__setattr__(self, "weights", tuple(weights))

    @property
    def support(self) -> frozenset[int]:
        """Weights i with J_i != 0."""
        return frozenset(w for w, c in zip(self.weights, self.coords) if c)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def ints(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise InputError(f"{self} is not integral")
        return tuple(int(c) for c in self.coords)

    def __getitem__(self, i: int) -> Fraction:
        """Coordinate J_i (by weight, not by position)."""
        return self.coords[self.weights.index(i)]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"

    def to_json(self) -> str:
        return json.dumps(list(self.ints()))

    @classmethod
    def from_json(cls, text: str) -> WeightedPoint:
        return cls(json.loads(text))


def act(lam, p: WeightedPoint) -> WeightedPoint:
    """lambda * p for rational lambda."""
    lam = Fraction(lam)
    if lam == 0:
        raise InputError("lambda must be nonzero")
    return WeightedPoint((lam**w * c for w, c in zip(p.weights, p.coords)), p.weights)


def _scale_by_root(p: WeightedPoint, q: int, a: int, g: int) -> tuple[Fraction, ...]:
    """Divide coordinate i by q^(a*i/g); assumes g divides every supported weight."""
    out = []
    for w, c in zip(p.weights, p.coords):
        out.append(c / Fraction(q) ** (a * w // g) if c else c)
    return tuple(out)


def _vp(n: int, q: int) -> int:
    n = abs(n)
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


@lru_cache(maxsize=65536)
def _prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(abs(n)))) if abs(n) > 1 else ()


def _common_primes(values: Iterable[int]) -> tuple[int, ...]:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return _prime_factors(g)


def reduce_to_integral(p: WeightedPoint) -> WeightedPoint:
    """Smallest positive rational lambda making lambda * p integral."""
    lam = Fraction(1)
    dens = [c.denominator for c in p.coords if c]
    primes = _prime_factors(lcm(*dens)) if dens else ()
    for q in primes:
        # need e with e*w >= v_q(denominator of J_w) for every w
        need = 0
        for w, c in zip(p.weights, p.coords):
            if c:
                v = _vp(c.denominator, q) - _vp(c.numerator, q)
                if v > 0:
                    need = max(need, -(-v // w))
        lam *= Fraction(q) ** need
    return act(lam, p)


def _require_integral(p: WeightedPoint):
    if not p.is_integral:
        raise InputError("expected an integral tuple; use reduce_to_integral first")


def minimal_tuple(p: WeightedPoint) -> WeightedPoint:
    """Divide out every prime q with q^i | J_i for all i."""
    _require_integral(p)
    coords = p.coords
    pt = p
    for q in _common_primes(pt.ints()):
        a = min(_vp(int(c), q) // w for w, c in zip(p.weights, coords) if c)
        if a:
            pt = WeightedPoint(_scale_by_root(pt, q, a, 1), p.weights)
            coords = pt.coords
    return pt


def _removed_product(p: WeightedPoint) -> int:
    """The lambda that minimal_tuple divides out: prod q^a over q^(a*i) | J_i.

    Agrees with the product of the primes q with q^i | J_i whenever no q^(2i)
    divides every J_i, and keeps height(p) == height(minimal_tuple(p)) when one does.
    """
    prod = 1
    for q in _common_primes(p.ints()):
        a = min(_vp(int(c), q) // w for w, c in zip(p.weights, p.coords) if c)
        prod *= q**a
    return prod


@dataclass(frozen=True, order=False)
class HeightValue:
    """The height  |J_index|^(1/index) / divisor, kept exactly."""

    index: int
    value: int
    divisor: int = 1

    def __float__(self) -> float:
        from mpmath import mp, mpf, root

        with mp.workdps(30):
            return float(root(mpf(self.value), self.index) / self.divisor)

    def decimal(self, digits: int = 6) -> str:
        from mpmath import mp, mpf, nstr, root

        with mp.workdps(digits + 20):
            x = root(mpf(self.value), self.index) / self.divisor
            return f"{float(x):.{digits}f}" if digits <= 15 else nstr(x, digits + 1)

    def _cmp(self, other: HeightValue) -> int:
        # a^(1/i)/d  vs  b^(1/j)/e   <=>   a^j e^(ij)  vs  b^i d^(ij)
        i, j = self.index, other.index
        lhs = self.value**j * other.divisor ** (i * j)
        rhs = other.value**i * self.divisor ** (i * j)
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def same_as(self, other: HeightValue) -> bool:
        return self._cmp(other) == 0

    def leq(self, h) -> bool:
        """height <= h for rational h, exactly."""
        h = parse_rational(h)
        if h < 0:
            return False
        # value <= (h*divisor)^index
        return self.value * h.denominator**self.index <= (h.numerator * self.divisor) ** self.index

    def sort_key(self):
        return _HeightKey(self)

    def to_dict(self) -> dict:
        return {"index": self.index, "value": str(self.value), "divisor": str(self.divisor),
                "decimal": self.decimal()}


class _HeightKey:
    __slots__ = ("h",)

    def __init__(self, h):
        self.h = h

    def __lt__(self, other):
        return self.h._cmp(other.h) < 0

    def __eq__(self, other):
        return self.h._cmp(other.h) == 0


def height(p: WeightedPoint) -> HeightValue:
    """Weighted moduli height max|J_i|^(1/i), divided by the lambda removed by minimal_tuple."""
    _require_integral(p)
    best = None
    for w, c in zip(p.weights, p.coords):
        if not c:
            continue
        cand = HeightValue(w, abs(int(c)))
        if best is None or cand > best:
            best = cand
    return HeightValue(best.index, best.value, _removed_product(p))


def height_leq(p: WeightedPoint, h) -> bool:
    """|J_i| <= h^i for every i (exact)."""
    _require_integral(p)
    h = parse_rational(h)
    return all(
        abs(int(c)) * h.denominator**w <= h.numerator**w for w, c in zip(p.weights, p.coords)
    )


def _support_gcd(p: WeightedPoint) -> int:
    g = 0
    for w in p.support:
        g = gcd(g, w)
    return g


def absolute_minimal(p: WeightedPoint) -> WeightedPoint:
    """Strip every reduction lambda = q^(a/g) with lambda^i | J_i on the support.

    g is the gcd of the supported weights.  Signs are left alone; choosing
    among the unit twists is :func:`normalize_convention`'s job.
    """
    pt = minimal_tuple(p)
    g = _support_gcd(pt)
    for q in _common_primes(pt.ints()):
        a = min(_vp(int(c), q) * g // w for w, c in zip(pt.weights, pt.coords) if c)
        if a:
            pt = WeightedPoint(_scale_by_root(pt, q, a, g), pt.weights)
    return pt


def _twist(p: WeightedPoint, s: int, g: int) -> WeightedPoint:
    """exp(i*pi*s/g) * p: J_i -> (-1)^(s*i/g) J_i on the support."""
    return WeightedPoint(
        (-c if c and (s * w // g) % 2 else c for w, c in zip(p.weights, p.coords)), p.weights
    )


def unit_twists(p: WeightedPoint) -> list[WeightedPoint]:
    """Distinct members of the orbit of p under lambda = exp(i*pi*s/g), s = 0..2g-1."""
    g = _support_gcd(p)
    seen = []
    for s in range(2 * g):
        t = _twist(p, s, g)
        if t not in seen:
            seen.append(t)
    return seen


@dataclass(frozen=True)
class NormalizationTrace:
    """What the normalization chain did to a tuple."""

    start: WeightedPoint
    minimal: WeightedPoint
    absolute: WeightedPoint
    normalized: WeightedPoint
    twist_exponent: int  # s in lambda = exp(i*pi*s/g)
    support_gcd: int
    tie: bool = False
    sign_changes: tuple[int, ...] = field(default=())  # weights whose sign flipped


def _convention_key(t: WeightedPoint):
    positives = sum(1 for c in t.coords if c > 0)
    weighted_sum = sum(w * c for w, c in zip(t.weights, t.coords))
    return positives, weighted_sum


def _normalize(p: WeightedPoint) -> tuple[WeightedPoint, int, bool]:
    g = _support_gcd(p)
    best = None
    for s in range(2 * g):
        t = _twist(p, s, g)
        key = _convention_key(t)
        if best is None or key > best[0] or (key == best[0] and t.coords > best[1].coords):
            best = (key, t, s)
    # residual tie: distinct tuples agreeing on both convention keys
    tie = any(
        _convention_key(t) == best[0] and t != best[1] for t in unit_twists(p)
    )
    return best[1], best[2], tie


def normalize_convention(p: WeightedPoint) -> WeightedPoint:
    """Pick the unit twist with the most positive coordinates, then the largest sum(i*J_i).

    Remaining ties go to the lexicographically largest tuple.
    """
    return _normalize(p)[0]


def normalized_absolute_minimal(p: WeightedPoint) -> WeightedPoint:
    return normalize_convention(absolute_minimal(p))


def normalization_trace(p: WeightedPoint) -> NormalizationTrace:
    """Run the whole chain and report the intermediate tuples and the twist used."""
    if not p.is_integral:
        p = reduce_to_integral(p)
    mt = minimal_tuple(p)
    am = absolute_minimal(mt)
    norm, s, tie = _normalize(am)
    flips = tuple(w for w, a, b in zip(am.weights, am.coords, norm.coords) if a != b)
    return NormalizationTrace(p, mt, am, norm, s, _support_gcd(am), tie, flips)


def is_twist(p: WeightedPoint, q: WeightedPoint) -> bool:
    """True iff p and q lie in the same lambda-orbit (lambda complex)."""
    if not p.is_integral:
        p = reduce_to_integral(p)
    if not q.is_integral:
        q = reduce_to_integral(q)
    return normalized_absolute_minimal(p) == normalized_absolute_minimal(q)


@dataclass(frozen=True)
class SignDiagnostic:
    """How a reference tuple relates to a computed one when only signs may differ."""

    magnitudes_match: bool
    reachable: bool  # reference is a unit twist of the computed tuple
    differing_weights: tuple[int, ...]
    message: str


def sign_diagnostic(reference, computed: WeightedPoint) -> SignDiagnostic:
    """Compare a quoted tuple with a computed one coordinatewise and up to unit twists.

    A reference with the right magnitudes but a sign pattern outside the
    twist orbit cannot be reached by any lambda; it is reported, never
    adopted.
    """
    ref = reference if isinstance(reference, WeightedPoint) else WeightedPoint(reference)
    mags = all(abs(a) == abs(b) for a, b in zip(ref.coords, computed.coords))
    reachable = ref in unit_twists(computed)
    diff = tuple(w for w, a, b in zip(ref.weights, ref.coords, computed.coords) if a != b)
    if ref == computed:
        msg = "identical"
    elif reachable:
        msg = f"unit twist of the computed tuple (signs differ at weights {list(diff)})"
    elif mags:
        msg = (f"magnitudes agree but the sign pattern is not reachable by any unit twist "
               f"(signs differ at weights {list(diff)})")
    else:
        msg = "magnitudes differ"
    return SignDiagnostic(mags, reachable, diff, msg)


def box_bounds(h) -> tuple[int, ...]:
    """floor(h^i) for i = 2..8."""
    h = parse_rational(h)
    return tuple(h.numerator**w // h.denominator**w for w in WEIGHTS)
