"""Interpolation of the degree-40 syzygy F(J2..J8) and of the discriminant J14.

Both relations are recovered from exact invariants of random integer octavics:
every sample contributes one linear equation in the unknown coefficients of a
weighted-homogeneous ansatz.  The systems are solved modulo a word-sized
prime, lifted p-adically, rationally reconstructed, and then checked in exact
integer arithmetic on every sample and on a disjoint held-out set.

J14 is not a polynomial in J2..J8: in degree 14 the monomials J2*J3*J9,
J5*J9, J2^2*J10 and J4*J10 are independent of k[J2..J8].  The stored
discriminant expression is therefore a polynomial in J2..J10, and the
tuple-level check evaluates it with J9 = J10 = 0.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Sequence

from .binary_forms import random_form
from .errors import (
    ConventionMismatchError,
    HashMismatchError,
    NoSolutionError,
    NotInitializedError,
    RepresentationFailureError,
    SamplingDegeneracyError,
    ValidationError,
)
from .linalg import solve_dixon
from .shioda import shioda_invariants

log = logging.getLogger(__name__)

__all__ = [
    "WEIGHTS",
    "Relation",
    "RelationSet",
    "weighted_monomials",
    "weighted_degree",
    "syzygy_basis",
    "disc_basis",
    "Sample",
    "sample_invariants",
    "disc_value",
    "get_relations",
    "derive_syzygy",
    "derive_disc_expr",
    "derive_relations",
    "load_relations",
    "syzygy_check",
    "disc_check",
    "ARTIFACT_VERSION",
]

WEIGHTS = (2, 3, 4, 5, 6, 7, 8)
FULL_WEIGHTS = (2, 3, 4, 5, 6, 7, 8, 9, 10)
SYZYGY_DEGREE = 40
DISC_DEGREE = 14
ARTIFACT_VERSION = 1
DEFAULT_BOUND = 4

Monomial = tuple[int, ...]


def weighted_degree(exps: Sequence[int], weights: Sequence[int] = WEIGHTS) -> int:
    return sum(e * w for e, w in zip(exps, weights))


def weighted_monomials(d: int, weights: Sequence[int]) -> list[Monomial]:
    """All exponent vectors e with sum(w_i e_i) == d.

    Ordered lexicographically descending by exponent vector (so J2^k comes first).
    """
    if d < 0:
        return []
    weights = tuple(weights)
    out: list[Monomial] = []

    def rec(i: int, rem: int, cur: list[int]):
        if i == len(weights) - 1:
            if rem % weights[i] == 0:
                out.append(tuple(cur + [rem // weights[i]]))
            return
        for e in range(rem // weights[i], -1, -1):
            rec(i + 1, rem - e * weights[i], cur + [e])

    if not weights:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


def syzygy_basis() -> list[Monomial]:
    """Unknown monomials of F: J8^j times degree-(40-8j) monomials in J2..J7, j < 5."""
    basis = []
    for j in range(5):
        for m in weighted_monomials(SYZYGY_DEGREE - 8 * j, WEIGHTS[:6]):
            basis.append(m + (j,))
    return basis


def disc_basis() -> list[Monomial]:
    """Degree-14 monomials in J2..J7 plus J8 times degree-6 monomials in J2..J6."""
    basis = [m + (0,) for m in weighted_monomials(DISC_DEGREE, WEIGHTS[:6])]
    basis += [m + (0, 1) for m in weighted_monomials(DISC_DEGREE - 8, WEIGHTS[:5])]
    return basis


def _monomial_value(m: Monomial, t: Sequence[int]) -> int:
    v = 1
    for e, x in zip(m, t):
        if e:
            v *= x**e
    return v


@dataclass(frozen=True)
class Relation:
    """A weighted-homogeneous polynomial in J2, J3, ... with exact coefficients."""

    degree: int
    coeffs: dict  # Monomial -> Fraction
    weights: tuple[int, ...] = WEIGHTS

    def __post_init__(self):
        for m in self.coeffs:
            if weighted_degree(m, self.weights) != self.degree:
                raise ValueError(f"monomial {m} is not of weighted degree {self.degree}")
        den = 1
        for c in self.coeffs.values():
            den = lcm(den, c.denominator)
        # integer form: F = (1/den) * sum(int_coeff * monomial)
        object.__setattr__(self, "_den", den)
        object.__setattr__(
            self,
            "_int_terms",
            tuple((m, int(c * den)) for m, c in sorted(self.coeffs.items(), reverse=True) if c),
        )

    @property
    def denominator(self) -> int:
        return self._den

    def evaluate_scaled(self, t: Sequence[int]) -> int:
        """den * F(t) for an integer tuple t."""
        pw = [[1] for _ in t]
        total = 0
        for m, c in self._int_terms:
            v = c
            for i, e in enumerate(m):
                if e:
                    p = pw[i]
                    while len(p) <= e:
                        p.append(p[-1] * t[i])
                    v *= p[e]
            total += v
        return total

    def __call__(self, t: Sequence) -> Fraction:
        if all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for x in t):
            return Fraction(self.evaluate_scaled([int(x) for x in t]), self._den)
        total = Fraction(0)
        for m, c in self.coeffs.items():
            v = Fraction(c)
            for e, x in zip(m, t):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def coefficient(self, m: Monomial) -> Fraction:
        return self.coeffs.get(tuple(m), Fraction(0))

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights),
            "degree": self.degree,
            "monomials": [
                {"exponents": list(m), "coefficient": f"{c.numerator}/{c.denominator}"}
                for m, c in sorted(self.coeffs.items(), reverse=True)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Relation:
        coeffs = {tuple(e["exponents"]): Fraction(e["coefficient"]) for e in data["monomials"]}
        return cls(int(data["degree"]), coeffs, tuple(data["weights"]))


@dataclass(frozen=True)
class RelationSet:
    syzygy: Relation
    disc_expr: Relation
    provenance: dict = field(default_factory=dict)

    def body(self) -> dict:
        return {
            "version": ARTIFACT_VERSION,
            "syzygy": self.syzygy.to_dict(),
            "disc_expr": self.disc_expr.to_dict(),
        }

    @property
    def hash(self) -> str:
        blob = json.dumps(self.body(), sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    def to_json(self) -> str:
        data = self.body()
        data["provenance"] = dict(self.provenance, hash=self.hash)
        return json.dumps(data, indent=1, sort_keys=True) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def from_json(cls, text: str) -> RelationSet:
        data = json.loads(text)
        if data.get("version") != ARTIFACT_VERSION:
            raise ValidationError(f"unsupported relation artifact version {data.get('version')}")
        rs = cls(
            Relation.from_dict(data["syzygy"]),
            Relation.from_dict(data["disc_expr"]),
            {k: v for k, v in data.get("provenance", {}).items() if k != "hash"},
        )
        stored = data.get("provenance", {}).get("hash")
        if stored is not None and stored != rs.hash:
            raise HashMismatchError("relation artifact content does not match its recorded hash")
        return rs


def load_relations(path) -> RelationSet:
    return RelationSet.from_json(Path(path).read_text())


# ---------------------------------------------------------------- sampling


@dataclass(frozen=True)
class Sample:
    """Exact invariants of one random integer octavic."""

    coeffs: tuple[int, ...]
    J: tuple[int, ...]  # J2..J10
    J14: int

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.J[:7]


def _sample_one(args) -> Sample:
    seed, bound = args
    f = random_form(8, bound, seed)
    inv = shioda_invariants(f)
    return Sample(tuple(int(a) for a in f.coeffs), tuple(int(inv[i]) for i in range(2, 11)), int(inv.J14))


def sample_invariants(count: int, seed: int, bound: int = DEFAULT_BOUND, workers: int = 1) -> list[Sample]:
    """Exact invariants of ``count`` random integer octavics with nonzero discriminant.

    Each form is drawn from its own seed, taken from a stream seeded by
    ``seed``, so the result does not depend on ``workers``.
    """
    rng = random.Random(seed)
    out: list[Sample] = []
    while len(out) < count:
        jobs = [(rng.getrandbits(63), bound) for _ in range(count - len(out))]
        if workers > 1:
            with ProcessPoolExecutor(workers) as ex:
                res = list(ex.map(_sample_one, jobs, chunksize=32))
        else:
            res = [_sample_one(j) for j in jobs]
        out.extend(r for r in res if r.J14 != 0)
    return out


# ---------------------------------------------------------------- solving


def _power_table(rows_t, maxexp):
    return [[[x**e for e in range(maxexp + 1)] for x in t] for t in rows_t]


def _interpolate(basis, rows_t, rhs, label):
    maxexp = max(max(m) for m in basis)
    A = []
    for pw in _power_table(rows_t, maxexp):
        row = []
        for m in basis:
            v = 1
            for i, e in enumerate(m):
                if e:
                    v *= pw[i][e]
            row.append(v)
        A.append(row)

    def verify(x):
        den = 1
        for c in x:
            den = lcm(den, c.denominator)
        xi = [int(c * den) for c in x]
        return all(
            sum(a * c for a, c in zip(row, xi) if c) == b * den for row, b in zip(A, rhs)
        )

    x, rank, steps = solve_dixon(A, rhs, verify)
    log.info("%s: %d unknowns, rank %s, %d lifting steps", label, len(basis), rank, steps)
    return x, rank, steps


def _report(n, samples, held, steps, seed, bound, rank):
    return {"unknowns": n, "samples": samples, "holdout": held, "holdout_failures": 0,
            "lifting_steps": steps, "seed": seed, "bound": bound, "rank": rank}


def derive_syzygy(samples: int | None = None, seed: int = 1, bound: int = DEFAULT_BOUND,
                  holdout: int = 200, workers: int = 1) -> tuple[Relation, dict]:
    """Recover the monic degree-5 relation of J8 over k[J2..J7].

    Returns the relation and a validation report.
    """
    basis = syzygy_basis()
    n = len(basis)
    samples = 2 * n if samples is None else samples
    if samples < 2 * n:
        raise SamplingDegeneracyError(
            f"underdetermined: {samples} samples for {n} unknowns (need at least {2 * n})"
        )
    data = sample_invariants(samples + holdout, seed, bound, workers)
    train, held = data[:samples], data[samples:]
    rows_t = [s.moduli for s in train]
    rhs = [-(t[6] ** 5) for t in rows_t]
    try:
        x, rank, steps = _interpolate(basis, rows_t, rhs, "syzygy")
    except NoSolutionError as exc:
        raise ConventionMismatchError("no monic degree-5 relation fits the sampled invariants") from exc
    if x is None:
        raise SamplingDegeneracyError(f"rank deficient at column {rank} of {n}: re-seed")
    coeffs = {m: c for m, c in zip(basis, x) if c}
    coeffs[(0, 0, 0, 0, 0, 0, 5)] = Fraction(1)
    rel = Relation(SYZYGY_DEGREE, coeffs)
    bad = sum(1 for s in held if rel.evaluate_scaled(s.moduli) != 0)
    if bad:
        raise ConventionMismatchError(f"syzygy fails on {bad} of {len(held)} held-out octavics")
    return rel, _report(n, samples, len(held), steps, seed, bound, rank)


def derive_disc_expr(samples: int | None = None, seed: int = 2, bound: int = DEFAULT_BOUND,
                     holdout: int = 200, workers: int = 1,
                     variables: str = "J2..J10") -> tuple[Relation, dict]:
    """Recover J14 as a weighted-degree-14 polynomial in the Shioda invariants.

    ``variables="J2..J10"`` (default) interpolates over all nine generators,
    which succeeds.  ``variables="J2..J8"`` restricts to the J8-linear basis in
    J2..J8; J14 has no such representation and this raises
    :class:`RepresentationFailureError`.
    """
    if variables == "J2..J8":
        basis = disc_basis()
        weights = WEIGHTS
    elif variables == "J2..J10":
        weights = FULL_WEIGHTS
        basis = weighted_monomials(DISC_DEGREE, weights)
    else:
        raise ValueError(f"unknown variable set {variables!r}")
    n = len(basis)
    samples = 4 * n if samples is None else samples
    if samples < 2 * n:
        raise SamplingDegeneracyError(
            f"underdetermined: {samples} samples for {n} unknowns (need at least {2 * n})"
        )
    data = sample_invariants(samples + holdout, seed, bound, workers)
    train, held = data[:samples], data[samples:]
    k = len(weights)
    try:
        x, rank, steps = _interpolate(basis, [s.J[:k] for s in train], [s.J14 for s in train], "disc")
    except NoSolutionError as exc:
        raise RepresentationFailureError(
            f"J14 is not a polynomial in {variables} on the sampled octavics"
        ) from exc
    if x is None:
        raise SamplingDegeneracyError(f"rank deficient at column {rank} of {n}: re-seed")
    rel = Relation(DISC_DEGREE, {m: c for m, c in zip(basis, x) if c}, weights)
    bad = sum(1 for s in held if rel(s.J[:k]) != s.J14)
    if bad:
        raise RepresentationFailureError(f"P differs from J14 on {bad} of {len(held)} held-out octavics")
    report = _report(n, samples, len(held), steps, seed, bound, rank)
    report["variables"] = variables
    return rel, report


def derive_relations(samples: int | None = None, seed: int = 1, bound: int = DEFAULT_BOUND,
                     workers: int = 1) -> RelationSet:
    syz, syz_report = derive_syzygy(samples, seed, bound, workers=workers)
    disc, disc_report = derive_disc_expr(None, seed + 1, bound, workers=workers)
    return RelationSet(syz, disc, {"seed": seed, "samples": syz_report["samples"],
                                   "syzygy_report": syz_report, "disc_report": disc_report})


# ---------------------------------------------------------------- checks

RELATIONS_ENV = "OCTAVICS_RELATIONS"
_loaded: dict[Path, RelationSet] = {}


def default_relations_path() -> Path:
    env = os.environ.get(RELATIONS_ENV)
    if env:
        return Path(env)
    return Path(__file__).with_name("data") / "relations.json"


def get_relations(relations: RelationSet | None = None) -> RelationSet:
    """``relations`` itself, or the artifact at the default path (cached)."""
    if relations is not None:
        return relations
    path = default_relations_path()
    if path not in _loaded:
        if not path.exists():
            raise NotInitializedError(f"no relation artifact at {path}; run `octavics derive` first")
        _loaded[path] = load_relations(path)
    return _loaded[path]


def _coords(t) -> list[Fraction]:
    coords = getattr(t, "coords", t)
    if len(coords) != 7:
        raise ValueError("expected the seven coordinates J2..J8")
    return [Fraction(x) for x in coords]


def syzygy_check(t, relations: RelationSet | None = None) -> bool:
    """True iff F(t) == 0 exactly."""
    return get_relations(relations).syzygy(_coords(t)) == 0


def disc_value(t, relations: RelationSet | None = None) -> Fraction:
    """P at (J2..J8), with J9 = J10 = 0 when P involves them."""
    rel = get_relations(relations).disc_expr
    c = _coords(t)
    return rel(c + [Fraction(0)] * (len(rel.weights) - len(c)))


def disc_check(t, relations: RelationSet | None = None) -> bool:
    """True iff P(t) != 0."""
    return disc_value(t, relations) != 0
