"""Build the height-1 and height-3/2 databases and compare them with the reference tuples.

    python3 scripts/build_tables.py --outdir results
"""

import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from octavics.database import build_database
from octavics.relations import get_relations
from octavics.wps import WeightedPoint, normalized_absolute_minimal

BAND_REFERENCE = Path(__file__).resolve().parent.parent / "tests" / "data" / "band_reference.txt"
REFERENCE_COUNTS = {"1": (2186, 34, 24, 24, 12), "3/2": (237092624, 748, 544, 544, 258)}


@dataclass
class BuildConfig:
    heights: list = field(default_factory=lambda: ["1", "3/2"])
    workers: int = 1
    outdir: str = "results"
    fmt: str = "csv"


def load_band_reference():
    rows = []
    for line in BAND_REFERENCE.read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            rows.append(tuple(int(v) for v in line.split()[1:]))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--heights", nargs="+", default=["1", "3/2"])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--fmt", default="csv", choices=["csv", "jsonl"])
    cfg = BuildConfig(**vars(ap.parse_args()))
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    rs = get_relations()
    summary = {}
    for h in cfg.heights:
        t0 = time.time()
        path = out / f"h{h.replace('/', '_')}.{cfg.fmt}"
        db = build_database(h, rs, cfg.workers, out=path, fmt=cfg.fmt)
        entry = {"counts": db.counts.as_tuple(), "reference": REFERENCE_COUNTS.get(h),
                 "seconds": round(time.time() - t0, 1), "file": str(path)}
        if h == "3/2":
            band = {r.tuple for r in db.records if not r.height.leq(1)}
            table = load_band_reference()
            orbits = {normalized_absolute_minimal(WeightedPoint(t)).ints() for t in table}
            entry["band"] = len(band)
            entry["table_rows"] = len(table)
            entry["table_orbits"] = len(orbits)
            entry["table_orbits_missing"] = sorted(orbits - band)
            entry["extra_orbits"] = sorted(band - orbits)
        summary[h] = entry
    print(json.dumps(summary, indent=1, default=list))


if __name__ == "__main__":
    main()
