"""Exact linear algebra over Q.

Fraction-free (Bareiss) elimination for determinants and linear solves, plus
a multi-modular solver with rational reconstruction for the large systems that
come up when interpolating relations.  The modular path is only ever used to
*propose* a solution; callers verify it exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

import numpy as np

from .errors import NoSolutionError

__all__ = [
    "det_bareiss",
    "solve_exact_linear",
    "solve_modular",
    "rational_reconstruct",
    "crt_pair",
    "rank_mod_p",
    "WORD_PRIMES",
    "LUModP",
    "solve_dixon",
]


def _integerize_rows(A: Sequence[Sequence], b: Sequence | None = None):
    """Scale each row (and its rhs) by the lcm of its denominators."""
    rows = []
    rhs = []
    for i, row in enumerate(A):
        row = [Fraction(x) for x in row]
        extra = [Fraction(b[i])] if b is not None else []
        den = 1
        for x in row + extra:
            den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in row])
        if b is not None:
            rhs.append(int(extra[0] * den))
    return rows, rhs


def det_bareiss(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    den = 1
    rows, _ = _integerize_rows(M)
    for row in M:
        d = 1
        for x in row:
            d = lcm(d, Fraction(x).denominator)
        den *= d
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], den)


def solve_exact_linear(A: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], bool]:
    """Solve A x = b exactly by fraction-free elimination.

    Returns ``(x, unique)``.  When the system is underdetermined the free
    variables are set to zero and ``unique`` is False.  Raises
    :class:`NoSolutionError` carrying the offending row index if inconsistent.
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    if nrows < ncols:
        raise ValueError("need at least as many equations as unknowns")
    rows, rhs = _integerize_rows(A, b)
    aug = [rows[i] + [rhs[i]] for i in range(nrows)]
    origin = list(range(nrows))
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            aug[r], aug[piv] = aug[piv], aug[r]
            origin[r], origin[piv] = origin[piv], origin[r]
        p = aug[r][c]
        rowr = aug[r]
        for i in range(nrows):
            if i == r:
                continue
            ri = aug[i]
            f = ri[c]
            if i > r:
                # Bareiss step: exact division by the previous pivot
                for j in range(c, ncols + 1):
                    ri[j] = (ri[j] * p - f * rowr[j]) // prev
        pivots.append(c)
        prev = p
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            raise NoSolutionError("inconsistent linear system", row=origin[i])
    # back substitution on the upper-triangular part
    x = [Fraction(0)] * ncols
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        row = aug[k]
        s = Fraction(row[ncols])
        for j in pivots[k + 1:]:
            if row[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x, r == ncols


# primes below 2^31 so products fit comfortably in int64
WORD_PRIMES = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
    2147482697, 2147482693, 2147482681, 2147482663, 2147482661, 2147482621,
    2147482591, 2147482583, 2147482577, 2147482507, 2147482501, 2147482481,
    2147482417, 2147482409, 2147482367, 2147482361, 2147482349, 2147482343,
]


def _more_primes(start: int):
    import sympy

    p = start
    while True:
        p = sympy.prevprime(p)
        yield p


def primes_below_2_31():
    yield from WORD_PRIMES
    yield from _more_primes(WORD_PRIMES[-1])


def _solve_mod_p(A: np.ndarray, b: np.ndarray, p: int):
    """Gauss-Jordan mod p on int64 arrays.  Returns (x, pivot_columns) or raises."""
    nrows, ncols = A.shape
    M = np.concatenate([A % p, (b % p).reshape(-1, 1)], axis=1).astype(np.int64)
    pivots = []
    r = 0
    for c in range(ncols):
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - (col[nzr, None] * M[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if r < nrows and np.any(M[r:, ncols] != 0):
        bad = r + int(np.nonzero(M[r:, ncols])[0][0])
        raise NoSolutionError("inconsistent modulo p", row=bad)
    x = np.zeros(ncols, dtype=np.int64)
    for k, c in enumerate(pivots):
        x[c] = M[k, ncols]
    return x, pivots


def rank_mod_p(A: Sequence[Sequence[int]], p: int) -> int:
    arr = np.array([[int(v) % p for v in row] for row in A], dtype=np.int64)
    _, piv = _solve_mod_p(arr, np.zeros(arr.shape[0], dtype=np.int64), p)
    return len(piv)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 mod m1 and x = r2 mod m2 (coprime moduli)."""
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Find n/d = a mod m with |n|, d <= sqrt(m/2); None if no such fraction."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


class LUModP:
    """Row-pivoted LU factorization of a (possibly tall) integer matrix mod p.

    ``rows`` are the indices of the pivot rows (a maximal independent set of
    rows when the matrix has full column rank mod p).
    """

    def __init__(self, A: np.ndarray, p: int):
        M = (A % p).astype(np.int64)
        m, n = M.shape
        order = np.arange(m)
        self.p = p
        self.n = n
        self.full_rank = True
        for k in range(n):
            nz = np.nonzero(M[k:, k])[0]
            if nz.size == 0:
                self.full_rank = False
                self.rank_col = k
                break
            piv = k + nz[0]
            if piv != k:
                M[[k, piv]] = M[[piv, k]]
                order[[k, piv]] = order[[piv, k]]
            inv = pow(int(M[k, k]), -1, p)
            l = (M[k + 1:, k] * inv) % p
            M[k + 1:, k] = l
            if k + 1 < n:
                M[k + 1:, k + 1:n] = (M[k + 1:, k + 1:n] - (l[:, None] * M[k, k + 1:n][None, :]) % p) % p
        self.LU = M[:n] if self.full_rank else None
        self.rows = order[:n].tolist()
        if self.full_rank:
            self._diag_inv = np.array([pow(int(M[k, k]), -1, p) for k in range(n)], dtype=np.int64)
            # column-major copies for the substitution loops
            self._L = np.ascontiguousarray(self.LU.T)
            self._U = np.ascontiguousarray(self.LU.T)

    def solve(self, b: np.ndarray) -> np.ndarray:
        """x with A[rows] x = b mod p (b indexed like A[rows])."""
        p, n = self.p, self.n
        z = (b % p).astype(np.int64)
        L = self._L
        for k in range(n - 1):
            if z[k]:
                z[k + 1:] = (z[k + 1:] - (L[k, k + 1:] * z[k]) % p) % p
        U = self._U
        for k in range(n - 1, -1, -1):
            z[k] = (z[k] * self._diag_inv[k]) % p
            if z[k] and k:
                z[:k] = (z[:k] - (U[k, :k] * z[k]) % p) % p
        return z


def solve_dixon(A: Sequence[Sequence[int]], b: Sequence[int], verify, p: int = WORD_PRIMES[0],
                max_steps: int = 400):
    """p-adic lifting solve of an integer system with full column rank.

    Factors A once modulo ``p``, picks ``n`` independent rows, and lifts the
    solution of that square subsystem p-adically until rational reconstruction
    stabilizes and ``verify`` accepts it.  ``verify`` must check *all* rows, so
    an inconsistent tall system is reported rather than silently solved.
    Returns ``(x, rank, steps)``; ``x`` is None if the rank is deficient.
    """
    m, n = len(A), len(A[0])
    Ap = np.array([[v % p for v in row] for row in A], dtype=np.int64)
    lu = LUModP(Ap, p)
    if not lu.full_rank:
        return None, lu.rank_col, 0
    rows = lu.rows
    As = [A[i] for i in rows]
    r = [int(b[i]) for i in rows]
    modulus = 1
    last = None
    accs = [0] * n
    for step in range(1, max_steps + 1):
        y = lu.solve(np.array([v % p for v in r], dtype=np.int64))
        yl = [int(v) for v in y]
        accs = [a + v * modulus for a, v in zip(accs, yl)]
        modulus *= p
        r = [(ri - sum(a * v for a, v in zip(row, yl) if v and a)) // p for ri, row in zip(r, As)]
        if step % 2:
            continue
        cand = [rational_reconstruct(a, modulus) for a in accs]
        if all(c is not None for c in cand):
            if cand == last:
                if verify(cand):
                    return cand, n, step
                raise NoSolutionError("lifted solution of the pivot rows does not satisfy all rows")
            last = cand
    raise NoSolutionError("p-adic lifting did not stabilize")


def solve_modular(A: Sequence[Sequence[int]], b: Sequence[int], verify, max_primes: int = 400):
    """Multi-modular solve of an integer system with a unique solution.

    ``verify(x)`` receives a candidate rational vector and returns True when it
    is an exact solution; primes are added until reconstruction succeeds and
    verifies.  Returns ``(x, rank, primes_used)``.  ``rank`` is the rank seen
    modulo the first prime (a lower bound for the rank over Q).
    """
    ncols = len(A[0])
    residues = None
    modulus = 1
    rank = None
    used = 0
    last = None
    for p in primes_below_2_31():
        Ap = np.array([[v % p for v in row] for row in A], dtype=np.int64)
        bp = np.array([v % p for v in b], dtype=np.int64)
        try:
            xp, piv = _solve_mod_p(Ap, bp, p)
        except NoSolutionError:
            used += 1
            if used > max_primes:
                raise
            continue
        if rank is None:
            rank = len(piv)
        if len(piv) < rank:
            continue  # unlucky prime
        if len(piv) > rank:
            # earlier primes were unlucky; restart
            rank, residues, modulus = len(piv), None, 1
        if residues is None:
            residues = [int(v) for v in xp]
            modulus = p
        else:
            residues = [crt_pair(r, modulus, int(v), p)[0] for r, v in zip(residues, xp)]
            modulus *= p
        used += 1
        cand = [rational_reconstruct(r, modulus) for r in residues]
        if all(c is not None for c in cand):
            if cand == last and verify(cand):
                return cand, rank, used
            last = cand
        if used > max_primes:
            break
    raise NoSolutionError("modular reconstruction did not stabilize")
