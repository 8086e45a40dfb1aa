"""Database of genus-3 hyperelliptic moduli points of bounded weighted height.

Pipeline, for a height bound h:

1. enumerate all nonzero (x2..x8) in Z^7 with |x_i| <= floor(h^i)      (set A)
2. keep the tuples with F(x) == 0                                       (set B)
3. keep those with nonzero discriminant expression                      (set C)
4. reduce each to its minimal tuple                                     (set D)
5. reduce to the normalized absolute minimal tuple and deduplicate

Step 2 runs in a compiled modular scan; every survivor is re-checked in exact
arithmetic before it is counted.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from . import __version__
from .errors import HashMismatchError, InputError, MathDomainError
from .relations import RelationSet, disc_value
from .wps import (
    HeightValue,
    WeightedPoint,
    absolute_minimal,
    box_bounds,
    height,
    minimal_tuple,
    normalize_convention,
    parse_rational,
)

log = logging.getLogger(__name__)

__all__ = [
    "PipelineCounts",
    "DatabaseRecord",
    "Database",
    "enumerate_tuples",
    "enumeration_count",
    "count_enumerated",
    "syzygy_candidates",
    "build_database",
    "emit",
    "read_jsonl",
    "read_csv",
]


@dataclass(frozen=True)
class PipelineCounts:
    enumerated: int
    syzygy_pass: int
    disc_pass: int
    minimal: int
    normalized_unique: int

    def __post_init__(self):
        if not (self.enumerated >= self.syzygy_pass >= self.disc_pass >= self.minimal
                >= self.normalized_unique >= 0):
            raise ValueError(f"pipeline counts are not monotone: {self}")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.enumerated, self.syzygy_pass, self.disc_pass, self.minimal, self.normalized_unique)

    def to_dict(self) -> dict:
        return {
            "enumerated": self.enumerated,
            "syzygy_pass": self.syzygy_pass,
            "disc_pass": self.disc_pass,
            "minimal": self.minimal,
            "normalized_unique": self.normalized_unique,
        }


@dataclass(frozen=True)
class DatabaseRecord:
    tuple: tuple[int, ...]
    height: HeightValue
    disc: Fraction
    source_count: int
    relation_hash: str

    def to_dict(self) -> dict:
        return {
            "tuple": list(self.tuple),
            "height": self.height.to_dict(),
            "disc": f"{self.disc.numerator}/{self.disc.denominator}",
            "source_count": self.source_count,
            "relation_hash": self.relation_hash,
        }

    @classmethod
    def from_dict(cls, d: dict) -> DatabaseRecord:
        h = d["height"]
        return cls(
            tuple(int(x) for x in d["tuple"]),
            HeightValue(int(h["index"]), int(h["value"]), int(h["divisor"])),
            Fraction(d["disc"]),
            int(d["source_count"]),
            d["relation_hash"],
        )


@dataclass
class Database:
    h: Fraction
    counts: PipelineCounts
    records: list[DatabaseRecord]
    relation_hash: str
    syzygy_set: list[tuple[int, ...]] = field(default_factory=list, repr=False)
    disc_set: list[tuple[int, ...]] = field(default_factory=list, repr=False)

    def tuples(self) -> set[tuple[int, ...]]:
        return {r.tuple for r in self.records}


# ---------------------------------------------------------------- step 1


def enumeration_count(h) -> int:
    """prod(2*floor(h^i) + 1) - 1."""
    n = 1
    for b in box_bounds(h):
        n *= 2 * b + 1
    return n - 1


def _check_h(h) -> Fraction:
    h = parse_rational(h)
    if h < 1:
        raise MathDomainError(f"height bound {h} < 1 gives an empty box")
    return h


def _partition(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    step, extra = divmod(n, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def enumerate_tuples(h, part: int = 0, parts: int = 1) -> Iterator[tuple[int, ...]]:
    """Nonzero integer tuples with |x_i| <= floor(h^i), in odometer order (x8 fastest).

    With ``parts > 1`` only the ``part``-th of ``parts`` contiguous slices of
    that order is produced; the slices are disjoint and cover the box.
    """
    h = _check_h(h)
    bounds = box_bounds(h)
    outer = 1
    for b in bounds[:4]:
        outer *= 2 * b + 1
    lo, hi = _partition(outer, parts)[part]
    ranges = [range(-b, b + 1) for b in bounds]
    heads = itertools.islice(itertools.product(*ranges[:4]), lo, hi)
    for head in heads:
        for tail in itertools.product(*ranges[4:]):
            t = head + tail
            if any(t):
                yield t


def count_enumerated(h, workers: int = 1) -> int:
    """Walk the box (compiled) and count its nonzero tuples."""
    from ._scan import count_range

    h = _check_h(h)
    bounds = box_bounds(h)
    outer = 1
    for b in bounds[:4]:
        outer *= 2 * b + 1
    return sum(count_range(bounds, lo, hi) for lo, hi in _partition(outer, workers))


# ---------------------------------------------------------------- step 2


def _scan_job(args):
    from ._scan import ScanPlan, scan_range

    rel, bounds, lo, hi = args
    plan = ScanPlan(rel, bounds)
    cands, visited = scan_range(plan, lo, hi)
    return [tuple(int(v) for v in row) for row in cands], visited


def syzygy_candidates(h, relations: RelationSet, workers: int = 1) -> tuple[list[tuple[int, ...]], int]:
    """Set B: all box tuples with F == 0 exactly, plus the number of tuples visited."""
    h = _check_h(h)
    bounds = box_bounds(h)
    outer = 1
    for b in bounds[:4]:
        outer *= 2 * b + 1
    jobs = [(relations.syzygy, bounds, lo, hi) for lo, hi in _partition(outer, workers * 4)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_scan_job, jobs))
    else:
        results = [_scan_job(j) for j in jobs]
    visited = sum(v for _, v in results)
    rel = relations.syzygy
    exact = [t for cands, _ in results for t in cands if rel.evaluate_scaled(t) == 0]
    return sorted(exact), visited


# ---------------------------------------------------------------- steps 3-5


def _record_sort_key(r: DatabaseRecord):
    # height, then graded-lex: total size sum|J_i| first, lexicographic after
    return (r.height.sort_key(), sum(abs(c) for c in r.tuple), r.tuple)


def build_database(h, relations: RelationSet, workers: int = 1, out=None, fmt: str = "jsonl",
                   expected_hash: str | None = None) -> Database:
    """Run the five-step pipeline for height bound h; optionally write the result to ``out``."""
    h = _check_h(h)
    if expected_hash is not None and expected_hash != relations.hash:
        raise HashMismatchError(
            f"relation artifact hash {relations.hash} does not match expected {expected_hash}"
        )
    B, visited = syzygy_candidates(h, relations, workers)
    expected = enumeration_count(h)
    if visited != expected:
        raise RuntimeError(f"scan visited {visited} tuples, expected {expected}")
    log.info("h=%s: %d enumerated, %d satisfy the syzygy", h, visited, len(B))

    C = []
    disc = {}
    for t in B:
        d = disc_value(t, relations)
        if d != 0:
            C.append(t)
            disc[t] = d

    D: dict[tuple[int, ...], list] = {}
    for t in C:
        m = minimal_tuple(WeightedPoint(t)).ints()
        D.setdefault(m, []).append(t)

    final: dict[tuple[int, ...], int] = {}
    for m, sources in D.items():
        n = normalize_convention(absolute_minimal(WeightedPoint(m))).ints()
        final[n] = final.get(n, 0) + len(sources)

    records = []
    for t, count in final.items():
        p = WeightedPoint(t)
        records.append(DatabaseRecord(t, height(p), disc_value(t, relations), count, relations.hash))
    records.sort(key=_record_sort_key)
    counts = PipelineCounts(visited, len(B), len(C), len(D), len(records))
    db = Database(h, counts, records, relations.hash, B, C)
    if out is not None:
        emit(db, fmt, out)
    return db


# ---------------------------------------------------------------- output


def _metadata(db: Database) -> dict:
    h = db.h
    return {
        "h": f"{h.numerator}/{h.denominator}",
        "relation_hash": db.relation_hash,
        "tool": "octavics",
        "version": __version__,
        "counts": db.counts.to_dict(),
    }


def emit(db: Database, fmt: str, out) -> None:
    """Write records as CSV (J2..J8,height,disc) or JSONL, each with a metadata header."""
    text = render(db, fmt)
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write database to {out}: {exc}") from exc


def render(db: Database, fmt: str) -> str:
    meta = _metadata(db)
    if fmt == "jsonl":
        lines = [json.dumps({"meta": meta}, sort_keys=True)]
        lines += [json.dumps(r.to_dict(), sort_keys=True) for r in db.records]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["J2", "J3", "J4", "J5", "J6", "J7", "J8", "height", "disc"])
        for r in db.records:
            w.writerow(list(r.tuple) + [r.height.decimal(), f"{r.disc.numerator}/{r.disc.denominator}"])
        return buf.getvalue()
    raise InputError(f"unknown output format {fmt!r}")


def read_jsonl(path) -> tuple[dict, list[DatabaseRecord]]:
    lines = Path(path).read_text().splitlines()
    meta = json.loads(lines[0])["meta"]
    return meta, [DatabaseRecord.from_dict(json.loads(line)) for line in lines[1:] if line]


def read_csv(path) -> tuple[dict, list[tuple[int, ...]]]:
    lines = Path(path).read_text().splitlines()
    meta = json.loads(lines[0][2:])
    rows = list(csv.reader(lines[1:]))
    return meta, [tuple(int(x) for x in row[:7]) for row in rows[1:]]
