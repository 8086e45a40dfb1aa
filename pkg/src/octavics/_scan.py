"""Compiled box scan: which integer tuples make the syzygy vanish modulo p.

F is split as sum_k G_k(J2..J5) * J6^a_k * J7^b_k * J8^c_k.  For each outer
point (J2..J5) the G_k are evaluated once; the inner (J6, J7) loop builds the
quintic in J8 and the J8 loop is a Horner evaluation.  Anything nonzero mod p
is certainly nonzero over Q; the zeros are re-checked exactly by the caller.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .relations import Relation

# keep below 2^31 so that a*b + c fits in int64
SCAN_PRIME = 2147483629


class ScanPlan:
    """Syzygy coefficients reduced mod p and grouped for the kernel."""

    def __init__(self, rel: Relation, bounds, p: int = SCAN_PRIME):
        self.p = p
        self.bounds = np.array(bounds, dtype=np.int64)
        groups: dict[tuple, list] = {}
        for m, c in rel._int_terms:
            groups.setdefault((m[4], m[5], m[6]), []).append((m[:4], c % p))
        keys = sorted(groups)
        self.tails = np.array(keys, dtype=np.int64).reshape(-1, 3)
        heads, coefs, starts = [], [], [0]
        for k in keys:
            for h, c in groups[k]:
                heads.append(h)
                coefs.append(c)
            starts.append(len(heads))
        self.heads = np.array(heads, dtype=np.int64).reshape(-1, 4)
        self.coefs = np.array(coefs, dtype=np.int64)
        self.starts = np.array(starts, dtype=np.int64)
        self.maxexp = int(max(self.heads.max(initial=0), self.tails.max(initial=0)))
        # powers of every coordinate value, indexed [var][value + bound][exp]
        bmax = int(self.bounds.max())
        pw = np.zeros((7, 2 * bmax + 1, self.maxexp + 1), dtype=np.int64)
        for v in range(7):
            b = int(bounds[v])
            for x in range(-b, b + 1):
                acc = 1
                for e in range(self.maxexp + 1):
                    pw[v, x + b, e] = acc
                    acc = (acc * x) % p
        self.pw = pw

    @property
    def outer_size(self) -> int:
        b = self.bounds
        return int(np.prod(2 * b[:4] + 1))


@njit(cache=True)
def _scan_kernel(bounds, heads, coefs, starts, tails, pw, p, lo, hi, out, cap):
    n2 = 2 * bounds[1] + 1
    n3 = 2 * bounds[2] + 1
    n4 = 2 * bounds[3] + 1
    b6, b7, b8 = bounds[4], bounds[5], bounds[6]
    ngroups = tails.shape[0]
    G = np.zeros(ngroups, dtype=np.int64)
    quint = np.zeros(6, dtype=np.int64)
    found = 0
    visited = 0
    for idx in range(lo, hi):
        r = idx
        i5 = r % n4
        r //= n4
        i4 = r % n3
        r //= n3
        i3 = r % n2
        i2 = r // n2
        for g in range(ngroups):
            acc = 0
            for t in range(starts[g], starts[g + 1]):
                v = coefs[t]
                v = (v * pw[0, i2, heads[t, 0]]) % p
                v = (v * pw[1, i3, heads[t, 1]]) % p
                v = (v * pw[2, i4, heads[t, 2]]) % p
                v = (v * pw[3, i5, heads[t, 3]]) % p
                acc += v
                if acc >= p:
                    acc -= p
            G[g] = acc
        outer_zero = i2 == bounds[0] and i3 == bounds[1] and i4 == bounds[2] and i5 == bounds[3]
        for i6 in range(2 * b6 + 1):
            for i7 in range(2 * b7 + 1):
                for e in range(6):
                    quint[e] = 0
                for g in range(ngroups):
                    if G[g] == 0:
                        continue
                    v = (G[g] * pw[4, i6, tails[g, 0]]) % p
                    v = (v * pw[5, i7, tails[g, 1]]) % p
                    e8 = tails[g, 2]
                    quint[e8] = (quint[e8] + v) % p
                for i8 in range(2 * b8 + 1):
                    x8 = i8 - b8
                    if x8 < 0:
                        x8 += p
                    acc = quint[5]
                    for e in range(4, -1, -1):
                        acc = (acc * x8 + quint[e]) % p
                    visited += 1
                    if acc == 0:
                        if outer_zero and i6 == b6 and i7 == b7 and i8 == b8:
                            visited -= 1  # the all-zero tuple is not a point
                            continue
                        if found < cap:
                            out[found, 0] = i2 - bounds[0]
                            out[found, 1] = i3 - bounds[1]
                            out[found, 2] = i4 - bounds[2]
                            out[found, 3] = i5 - bounds[3]
                            out[found, 4] = i6 - b6
                            out[found, 5] = i7 - b7
                            out[found, 6] = i8 - b8
                        found += 1
    return found, visited


def scan_range(plan: ScanPlan, lo: int, hi: int, cap: int = 1 << 20):
    """Candidate tuples (mod-p zeros of F) for outer indices [lo, hi).

    Returns (candidates as an (n, 7) int array, number of tuples visited).
    """
    out = np.zeros((cap, 7), dtype=np.int64)
    found, visited = _scan_kernel(plan.bounds, plan.heads, plan.coefs, plan.starts, plan.tails,
                                  plan.pw, plan.p, lo, hi, out, cap)
    if found > cap:
        raise RuntimeError(f"candidate buffer overflow ({found} > {cap})")
    return out[:found], int(visited)


@njit(cache=True)
def _count_kernel(bounds, lo, hi):
    n2 = 2 * bounds[1] + 1
    n3 = 2 * bounds[2] + 1
    n4 = 2 * bounds[3] + 1
    b6, b7, b8 = bounds[4], bounds[5], bounds[6]
    count = 0
    for idx in range(lo, hi):
        r = idx
        x5 = r % n4 - bounds[3]
        r //= n4
        x4 = r % n3 - bounds[2]
        r //= n3
        x3 = r % n2 - bounds[1]
        x2 = r // n2 - bounds[0]
        head = x2 != 0 or x3 != 0 or x4 != 0 or x5 != 0
        for x6 in range(-b6, b6 + 1):
            for x7 in range(-b7, b7 + 1):
                for x8 in range(-b8, b8 + 1):
                    if head or x6 != 0 or x7 != 0 or x8 != 0:
                        count += 1
    return count


def count_range(bounds, lo: int, hi: int) -> int:
    return int(_count_kernel(np.array(bounds, dtype=np.int64), lo, hi))
