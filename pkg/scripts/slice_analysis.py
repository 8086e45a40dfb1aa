"""Restrict the syzygy to J2 = J3 = J5 = J7 = 0 and factor it.

On this slice F has a squared factor (5 J4^2 + 9 J8)^2, so every tuple
(0, 0, +-3, 0, J6, 0, -5) is a zero of F whatever J6 is.  This accounts for
the height-3/2 tuples outside the reference table.
"""

import sympy as sp

from octavics.database import build_database
from octavics.relations import disc_value, get_relations


def main():
    rs = get_relations()
    J4, J6, J8 = sp.symbols("J4 J6 J8")
    expr = 0
    for m, c in rs.syzygy.coeffs.items():
        if m[0] == m[1] == m[3] == m[5] == 0:
            expr += sp.Rational(c.numerator, c.denominator) * J4 ** m[2] * J6 ** m[4] * J8 ** m[6]
    print("F on the slice:", sp.factor(expr))
    db = build_database("3/2", rs)
    on_slice = [t for t in db.syzygy_set if t[0] == t[1] == t[3] == t[5] == 0 and t[6] == -5]
    print(f"{len(on_slice)} syzygy zeros with J4 = +-3, J8 = -5 in the h=3/2 box")
    for t in on_slice:
        print(t, "disc", disc_value(t, rs))


if __name__ == "__main__":
    main()
