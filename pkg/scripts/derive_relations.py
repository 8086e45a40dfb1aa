"""Re-derive the syzygy and discriminant relations and write the artifact.

    python3 scripts/derive_relations.py --seed 1 --out relations.json
"""

import argparse
import json
import logging
import time
from dataclasses import asdict, dataclass

from octavics.relations import derive_relations


@dataclass
class DeriveConfig:
    seed: int = 1
    samples: int | None = None
    workers: int = 1
    out: str = "relations.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(DeriveConfig()).items():
        ap.add_argument(f"--{name}", type=type(default) if default is not None else int, default=default)
    cfg = DeriveConfig(**vars(ap.parse_args()))
    logging.basicConfig(level=logging.INFO)
    t0 = time.time()
    rs = derive_relations(cfg.samples, cfg.seed, workers=cfg.workers)
    rs.save(cfg.out)
    print(json.dumps({"config": asdict(cfg), "hash": rs.hash, "seconds": round(time.time() - t0, 1),
                      "syzygy_terms": len(rs.syzygy.coeffs), "disc_terms": len(rs.disc_expr.coeffs),
                      "provenance": rs.provenance}, indent=2))


if __name__ == "__main__":
    main()
