import cmath
import itertools
import random

import pytest

from octavics.binary_forms import parse_polynomial
from octavics.errors import ConditionError
from octavics.tsuyumine import (
    PATTERNS,
    RootConfiguration,
    binomial_form,
    difference_degree,
    pattern_magnitude,
    pattern_value,
    roots_of_octavic,
    stabilizer_order,
    tsuyumine_invariants,
)

REL = 1e-9

# x^8 - 1, from the distinct-summand oracle below
X8_BASELINE = {2: -2520, 3: 0, 4: 229376, 5: 0, 6: -215040, 7: 0, 8: 16343040, 9: 0, 10: -233963520}


def distinct_summand_oracle(roots, k):
    """Sum each distinct relabeled product once (no stabilizer division)."""
    seen = {}
    for perm in itertools.permutations(range(8)):
        sign = 1
        factors = {}
        for i, j, e in PATTERNS[k]:
            a, b = perm[i], perm[j]
            if a > b:
                a, b = b, a
                sign = -sign if e % 2 else sign
            factors[(a, b)] = factors.get((a, b), 0) + e
        key = (sign, tuple(sorted(factors.items())))
        seen[key] = None
    total = 0
    for sign, factors in seen:
        term = sign
        for (a, b), e in factors:
            term *= (roots[a] - roots[b]) ** e
        total += term
    return total


def close(a, b, scale):
    return abs(a - b) <= REL * scale


def random_squarefree(seed):
    rng = random.Random(seed)
    while True:
        poly = [rng.randint(-5, 5) for _ in range(8)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        try:
            return roots_of_octavic(binomial_form(poly))
        except ConditionError:
            continue


def test_roots_of_unity():
    rc = roots_of_octavic(binomial_form(parse_polynomial("x^8-1")))
    for k in range(8):
        z = cmath.exp(2j * cmath.pi * k / 8)
        assert min(abs(z - r) for r in rc.roots) < 1e-12


def test_degree_drop_is_a_condition_error():
    with pytest.raises(ConditionError):
        roots_of_octavic(binomial_form(parse_polynomial("x^7-1")))


def test_repeated_root_is_a_condition_error():
    with pytest.raises(ConditionError):
        roots_of_octavic(binomial_form(parse_polynomial("x^8-2*x^4+1")))


def test_mpmath_roots_agree():
    f = binomial_form(parse_polynomial("3*x^8 - x^5 + 2*x - 7"))
    a = roots_of_octavic(f)
    b = roots_of_octavic(f, dps=40)
    for r in a.roots:
        assert min(abs(r - s) for s in b.roots) < 1e-10


def test_stabilizers_match_distinct_summand_count():
    for k in PATTERNS:
        x = random_squarefree(k)
        # 8! / |stab| distinct summands; compare sum/|stab| with the oracle
        assert close(pattern_value(x, k), distinct_summand_oracle(x.roots, k), pattern_magnitude(x, k))


def test_x8_baseline():
    rc = roots_of_octavic(binomial_form(parse_polynomial("x^8-1")))
    vals = tsuyumine_invariants(rc)
    for k, v in vals.items():
        scale = pattern_magnitude(rc, k)
        assert close(v, X8_BASELINE[k], scale), (k, v)
        assert close(distinct_summand_oracle(rc.roots, k), X8_BASELINE[k], scale)


@pytest.mark.parametrize("seed", range(5))
def test_translation_and_permutation(seed):
    rc = random_squarefree(100 + seed)
    base = tsuyumine_invariants(rc)
    moved = tsuyumine_invariants(rc.translated(0.7 - 0.4j))
    perm = list(range(8))
    random.Random(seed).shuffle(perm)
    shuffled = tsuyumine_invariants(rc.permuted(perm))
    for k in PATTERNS:
        scale = pattern_magnitude(rc, k)
        assert close(moved[k], base[k], scale)
        assert close(shuffled[k], base[k], scale)


@pytest.mark.parametrize("k", sorted(PATTERNS))
def test_scaling(k):
    rc = random_squarefree(7)
    c = 1.3 - 0.2j
    n = difference_degree(k)
    scaled = pattern_value(rc.scaled(c), k)
    assert close(scaled, c**n * pattern_value(rc, k), abs(c) ** n * pattern_magnitude(rc, k))


def test_root_configuration_needs_eight():
    with pytest.raises(Exception):
        RootConfiguration((1, 2, 3))


def test_stabilizer_orders():
    assert stabilizer_order(2) == 128
    assert stabilizer_order(6) == 1152
