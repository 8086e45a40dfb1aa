"""Command-line entry point: ``octavics <subcommand> ...``.

Exit codes: 0 success, 1 usage, 2 math domain, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import InputError, OctavicsError, ValidationError

log = logging.getLogger("octavics")


@dataclass
class Config:
    relations: Path | None = None
    workers: int = 1
    fmt: str = "jsonl"
    digits: int = 12
    seed: int = 1

    def validate(self) -> Config:
        if self.workers < 1:
            raise InputError("--workers must be at least 1")
        if self.fmt not in ("csv", "jsonl"):
            raise InputError(f"--format must be csv or jsonl, not {self.fmt!r}")
        if self.digits < 1:
            raise InputError("--digits must be positive")
        if self.relations is not None and not self.relations.exists():
            raise InputError(f"relation artifact {self.relations} does not exist")
        return self

    def load_relations(self):
        from .relations import get_relations, load_relations

        if self.relations is not None:
            return load_relations(self.relations)
        return get_relations()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _point_args(values):
    from .wps import WeightedPoint, parse_rational

    if len(values) != 7:
        raise InputError(f"expected 7 coordinates J2..J8, got {len(values)}")
    return WeightedPoint([parse_rational(v) for v in values])


def _read_form(args):
    from .binary_forms import from_hyperelliptic, make_form, parse_polynomial

    if args.coeffs:
        if len(args.coeffs) != 9:
            raise InputError("--coeffs takes the 9 coefficients a_0..a_8 of sum a_i X^i Y^(8-i)")
        return make_form(8, [Fraction(c) for c in args.coeffs])
    if args.poly is None:
        raise InputError("give a polynomial such as 'x^7-1' or --coeffs")
    return from_hyperelliptic(parse_polynomial(args.poly))


def _trace_dict(tr) -> dict:
    return {
        "minimal": [_q(c) for c in tr.minimal.coords],
        "absolute_minimal": [_q(c) for c in tr.absolute.coords],
        "normalized": [_q(c) for c in tr.normalized.coords],
        "twist_exponent": tr.twist_exponent,
        "support_gcd": tr.support_gcd,
        "sign_changes": list(tr.sign_changes),
        "tie": tr.tie,
    }


# ---------------------------------------------------------------- subcommands


def cmd_invariants(args, cfg: Config) -> int:
    from .errors import SingularCurveError
    from .shioda import shioda_invariants
    from .wps import WeightedPoint, height, normalization_trace

    f = _read_form(args)
    inv = shioda_invariants(f)
    if inv.J14 == 0:
        raise SingularCurveError("discriminant is 0 (Delta = 0): the curve is singular")
    out = {f"J{i}": _q(inv[i]) for i in range(2, 11)}
    out["J14"] = _q(inv.J14)
    point = WeightedPoint(inv.moduli)
    out["point"] = [_q(c) for c in point.coords]
    if any(point.coords):
        tr = normalization_trace(point)
        out.update(_trace_dict(tr))
        out["height"] = height(tr.normalized).to_dict() | {"decimal": height(tr.normalized).decimal()}
    _dump(out)
    return 0


def cmd_derive(args, cfg: Config) -> int:
    from .relations import default_relations_path, derive_relations

    rs = derive_relations(args.samples, cfg.seed, workers=cfg.workers)
    out = Path(args.out) if args.out else default_relations_path()
    rs.save(out)
    _dump({"path": str(out), "hash": rs.hash, "version": __version__, "report": rs.provenance})
    return 0


def cmd_check(args, cfg: Config) -> int:
    from .relations import disc_value, sample_invariants

    rs = cfg.load_relations()
    if args.coords:
        p = _point_args(args.coords)
        syz = rs.syzygy(list(p.coords)) == 0
        d = disc_value(p, rs)
        _dump({"syzygy": syz, "disc": _q(d), "moduli_point": syz and d != 0,
               "relation_hash": rs.hash})
        return 0
    # no tuple: validate the artifact against fresh octavics
    samples = sample_invariants(args.samples, cfg.seed + 1000, workers=cfg.workers)
    k = len(rs.disc_expr.weights)
    syz_bad = sum(1 for s in samples if rs.syzygy.evaluate_scaled(s.moduli) != 0)
    disc_bad = sum(1 for s in samples if rs.disc_expr(s.J[:k]) != s.J14)
    _dump({"samples": len(samples), "syzygy_failures": syz_bad, "disc_failures": disc_bad,
           "relation_hash": rs.hash, "version": __version__})
    if syz_bad or disc_bad:
        raise ValidationError("relation artifact fails on fresh octavics")
    return 0


def cmd_normalize(args, cfg: Config) -> int:
    from .wps import normalization_trace

    tr = normalization_trace(_point_args(args.coords))
    out = {"integral": [_q(c) for c in tr.start.coords]} | _trace_dict(tr)
    _dump(out)
    return 0


def cmd_height(args, cfg: Config) -> int:
    from .wps import height, parse_rational, reduce_to_integral

    p = _point_args(args.coords)
    if not p.is_integral:
        p = reduce_to_integral(p)
    h = height(p)
    out = h.to_dict() | {"decimal": h.decimal(cfg.digits)}
    if args.bound is not None:
        out["leq_bound"] = h.leq(parse_rational(args.bound))
    _dump(out)
    return 0


def cmd_build(args, cfg: Config) -> int:
    from .database import build_database
    from .wps import parse_rational

    h = parse_rational(args.height)
    rs = cfg.load_relations()
    db = build_database(h, rs, workers=cfg.workers, out=args.out, fmt=cfg.fmt,
                        expected_hash=args.expect_hash)
    _dump({"h": _q(h), "counts": db.counts.to_dict(), "relation_hash": rs.hash,
           "version": __version__, "out": args.out})
    return 0


def cmd_tsuyumine(args, cfg: Config) -> int:
    from .binary_forms import parse_polynomial
    from .tsuyumine import binomial_form, roots_of_octavic, tsuyumine_invariants

    if args.coeffs:
        if len(args.coeffs) != 9:
            raise InputError("--coeffs takes a_0..a_8 of sum C(8,i) a_i x^(8-i)")
        from .binary_forms import make_form

        f = make_form(8, [Fraction(c) for c in args.coeffs])
    elif args.poly:
        f = binomial_form(parse_polynomial(args.poly))
    else:
        raise InputError("give a polynomial or --coeffs")
    rc = roots_of_octavic(f, dps=args.dps)
    vals = tsuyumine_invariants(rc)
    d = cfg.digits

    def fmt(z: complex) -> str:
        if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
            return f"{z.real:.{d}g}"
        return f"{z.real:.{d}g}{z.imag:+.{d}g}j"

    _dump({f"I{k}": fmt(v) for k, v in vals.items()})
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="octavics", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"octavics {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")

    common = _Parser(add_help=False)
    common.add_argument("--relations", help="relation artifact (default: $OCTAVICS_RELATIONS or the bundled one)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--digits", type=int, default=12, help="significant digits for decimal output")

    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("invariants", parents=[common], help="Shioda invariants and moduli point of y^2 = f(x)")
    p.add_argument("poly", nargs="?")
    p.add_argument("--coeffs", nargs="+")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("derive", parents=[common], help="interpolate the syzygy and discriminant relations")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("check", parents=[common], help="test a tuple against the relations, or validate the artifact")
    p.add_argument("coords", nargs="*")
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", parents=[common], help="minimal, absolute minimal and normalized forms")
    p.add_argument("coords", nargs="+")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("height", parents=[common], help="weighted moduli height")
    p.add_argument("coords", nargs="+")
    p.add_argument("--bound")
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("build", parents=[common], help="build the database for a height bound")
    p.add_argument("--height", required=True)
    p.add_argument("--format", dest="fmt", default="jsonl", choices=["csv", "jsonl"])
    p.add_argument("--out")
    p.add_argument("--expect-hash")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("tsuyumine", parents=[common], help="numeric root-difference invariants I2..I10")
    p.add_argument("poly", nargs="?")
    p.add_argument("--coeffs", nargs="+")
    p.add_argument("--dps", type=int, default=None, help="mpmath working precision for root finding")
    p.set_defaults(func=cmd_tsuyumine)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = Config(
            relations=Path(args.relations) if args.relations else None,
            workers=args.workers,
            fmt=getattr(args, "fmt", "jsonl"),
            digits=args.digits,
            seed=args.seed,
        ).validate()
        return args.func(args, cfg)
    except OctavicsError as exc:
        print(f"octavics: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"octavics: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
