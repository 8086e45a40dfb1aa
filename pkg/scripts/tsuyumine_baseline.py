"""Print I2..I10 for a few octavics, with the summand-magnitude scale of each."""

import sys

from octavics.binary_forms import parse_polynomial
from octavics.tsuyumine import binomial_form, pattern_magnitude, roots_of_octavic, tsuyumine_invariants


def main(polys):
    for text in polys:
        rc = roots_of_octavic(binomial_form(parse_polynomial(text)))
        vals = tsuyumine_invariants(rc)
        print(text)
        for k, v in vals.items():
            print(f"  I{k:<2} {v.real:+.12e} {v.imag:+.3e}j   scale {pattern_magnitude(rc, k):.3e}")


if __name__ == "__main__":
    main(sys.argv[1:] or ["x^8-1", "x^8+x+1", "2*x^8-3*x^5+x^2-7"])
