"""Root-difference invariants I2..I10 of a binary octavic (numeric, experimental).

Each I_k is a sum over S_8 of a fixed product of root differences
(ij) = xi_i - xi_j.  We sum over all 8! relabelings and divide by the order of
the pattern's stabilizer, i.e. every distinct summand is counted once.  The
leading-coefficient factors that would make these honest invariants of the
form are not included.

Nothing in the exact pipeline consumes these values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .binary_forms import BinaryForm
from .errors import ConditionError, InputError

__all__ = [
    "PATTERNS",
    "RootConfiguration",
    "roots_of_octavic",
    "tsuyumine_invariants",
    "pattern_value",
    "pattern_magnitude",
    "stabilizer_order",
    "binomial_form",
    "difference_degree",
]


def _pairs(text: str, power: int = 1) -> list[tuple[int, int, int]]:
    out = []
    for tok in text.split():
        out.append((int(tok[0]) - 1, int(tok[1]) - 1, power))
    return out


# (345,678) and (1234,5678)
_TRI = "34 35 45 67 68 78"
_QUAD = "12 13 14 23 24 34 56 57 58 67 68 78"

# factor lists (i, j, exponent), 0-based roots
PATTERNS: dict[int, list[tuple[int, int, int]]] = {
    2: _pairs("13 14 23 24 57 58 67 68"),
    3: _pairs("12 34 56 78", 2) + _pairs("13 24 57 68"),
    4: _pairs("12", 4) + _pairs(_TRI, 2),
    5: _pairs("12", 4) + _pairs(_TRI, 2) + _pairs("15 26 37 48"),
    6: _pairs(_QUAD, 2),
    7: _pairs(_QUAD, 2) + _pairs("15 26 37 48"),
    8: _pairs(_QUAD, 2) + _pairs("15 16 25 26 37 38 47 48"),
    9: _pairs(_QUAD, 2) + _pairs("15 16 17 26 27 28 35 36 38 45 46 48"),
    10: _pairs(_QUAD, 2) + _pairs("15 26 37 48", 2) + _pairs("16 17 25 28 35 38 46 47"),
}


def _canonical(pattern, perm):
    """Pattern after relabeling, as (sign, sorted factor tuple)."""
    sign = 1
    factors = {}
    for i, j, e in pattern:
        a, b = perm[i], perm[j]
        if a > b:
            a, b = b, a
            if e % 2:
                sign = -sign
        factors[(a, b)] = factors.get((a, b), 0) + e
    return sign, tuple(sorted(factors.items()))


@lru_cache(maxsize=None)
def stabilizer_order(k: int) -> int:
    """Number of relabelings fixing the k-th summand (sign included)."""
    pattern = PATTERNS[k]
    ident = _canonical(pattern, tuple(range(8)))
    return sum(1 for perm in itertools.permutations(range(8)) if _canonical(pattern, perm) == ident)


@lru_cache(maxsize=1)
def _all_perms() -> np.ndarray:
    return np.array(list(itertools.permutations(range(8))), dtype=np.int64)


@dataclass(frozen=True)
class RootConfiguration:
    roots: tuple[complex, ...]
    source: BinaryForm | None = None

    def __post_init__(self):
        if len(self.roots) != 8:
            raise InputError("need exactly 8 roots")

    def translated(self, c: complex) -> RootConfiguration:
        return RootConfiguration(tuple(r + c for r in self.roots), None)

    def scaled(self, c: complex) -> RootConfiguration:
        return RootConfiguration(tuple(r * c for r in self.roots), None)

    def permuted(self, perm) -> RootConfiguration:
        return RootConfiguration(tuple(self.roots[i] for i in perm), None)


def binomial_form(poly) -> BinaryForm:
    """Octavic in the binomial convention whose dehomogenization is ``poly``.

    ``poly`` holds ascending coefficients c_0..c_8 of a polynomial in x; the
    result has a_i = c_(8-i) / C(8, i), so that sum_i C(8,i) a_i x^(8-i) = poly.
    """
    from fractions import Fraction

    c = [Fraction(x) for x in poly]
    if len(c) > 9 or any(c[9:]):
        raise InputError("degree above 8")
    c += [Fraction(0)] * (9 - len(c))
    return BinaryForm(8, tuple(c[8 - i] / math.comb(8, i) for i in range(9)))


def roots_of_octavic(f: BinaryForm, tol: float = 1e-10, dps: int | None = None) -> RootConfiguration:
    """Roots of sum_i C(8,i) a_i x^(8-i).

    Coefficients are read in the binomial convention, where a_0 leads.
    ``dps`` switches to mpmath polyroots at that many digits (the roots are
    still returned as Python complex numbers).
    """
    if f.degree != 8:
        raise InputError("expected an octavic")
    # descending powers of x
    desc = [math.comb(8, i) * f.coeffs[i] for i in range(9)]
    if desc[0] == 0:
        raise ConditionError("leading coefficient vanishes: a root sits at infinity")
    if dps is None:
        roots = np.roots(np.array([float(c) for c in desc]))
    else:
        import mpmath

        with mpmath.mp.workdps(dps):
            roots = np.array(
                [complex(r) for r in mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in desc],
                                                      maxsteps=200, extraprec=4 * dps)]
            )
    roots = sorted((complex(r) for r in roots), key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    scale = max(1.0, max(abs(r) for r in roots))
    for a, b in itertools.combinations(roots, 2):
        if abs(a - b) < 1e-7 * scale:
            raise ConditionError("repeated (or nearly repeated) roots")
    coeffs = np.array([float(c) for c in desc])
    norm = np.sum(np.abs(coeffs))
    for r in roots:
        resid = abs(np.polyval(coeffs, r)) / (norm * max(1.0, abs(r)) ** 8)
        if resid > tol:
            raise ConditionError(f"root residual {resid:.3g} above tolerance {tol:g}")
    return RootConfiguration(tuple(roots), f)


def _terms(rc: RootConfiguration, k: int) -> np.ndarray:
    xi = np.array(rc.roots, dtype=np.complex128)
    diff = xi[:, None] - xi[None, :]
    perms = _all_perms()
    terms = np.ones(perms.shape[0], dtype=np.complex128)
    for i, j, e in PATTERNS[k]:
        terms *= diff[perms[:, i], perms[:, j]] ** e
    return terms


def pattern_value(rc: RootConfiguration, k: int) -> complex:
    """Orbit sum of the k-th pattern over S_8, divided by the stabilizer order."""
    terms = _terms(rc, k)
    # fsum makes the result independent of the order the summands arrive in
    total = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return total / stabilizer_order(k)


def pattern_magnitude(rc: RootConfiguration, k: int) -> float:
    """Same orbit sum with every summand replaced by its modulus.

    This is the scale against which rounding error in :func:`pattern_value`
    should be judged; it stays positive when cancellation makes I_k vanish.
    """
    return math.fsum(np.abs(_terms(rc, k))) / stabilizer_order(k)


def tsuyumine_invariants(rc: RootConfiguration) -> dict[int, complex]:
    return {k: pattern_value(rc, k) for k in sorted(PATTERNS)}


def difference_degree(k: int) -> int:
    """Number of difference factors in the k-th pattern (the scaling exponent)."""
    return sum(e for _, _, e in PATTERNS[k])
