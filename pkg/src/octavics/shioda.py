"""Shioda invariants J2..J10 and the discriminant J14 of a binary octavic."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from fractions import Fraction

from .binary_forms import BinaryForm, discriminant, transvectant
from .errors import DegenerateTupleError, InputError, SingularCurveError

__all__ = [
    "CovariantSet",
    "InvariantTuple",
    "NORMALIZING_CONSTANTS",
    "covariants",
    "shioda_invariants",
    "moduli_point",
]

# integer normalization of the raw transvectant invariants
NORMALIZING_CONSTANTS = {
    2: Fraction(2**2 * 5 * 7),
    3: Fraction(2**4 * 5**2 * 7**3, 3),
    4: Fraction(2**9 * 3 * 7**4),
    5: Fraction(2**9 * 5 * 7**5),
    6: Fraction(2**14 * 3**2 * 7**6),
    7: Fraction(2**14 * 3 * 5 * 7**7),
    8: Fraction(2**17 * 3 * 5**2 * 7**9),
    9: Fraction(2**19 * 3**2 * 5 * 7**9),
    10: Fraction(2**22 * 3**2 * 5**2 * 7**11),
}


@dataclass(frozen=True)
class CovariantSet:
    g: BinaryForm
    k: BinaryForm
    h: BinaryForm
    m: BinaryForm
    n: BinaryForm
    p: BinaryForm
    q: BinaryForm


@dataclass(frozen=True)
class InvariantTuple:
    J2: Fraction
    J3: Fraction
    J4: Fraction
    J5: Fraction
    J6: Fraction
    J7: Fraction
    J8: Fraction
    J9: Fraction
    J10: Fraction
    J14: Fraction

    @property
    def moduli(self) -> tuple[Fraction, ...]:
        """(J2, ..., J8)."""
        return (self.J2, self.J3, self.J4, self.J5, self.J6, self.J7, self.J8)

    def __getitem__(self, i: int) -> Fraction:
        return getattr(self, f"J{i}")

    def to_json(self) -> str:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return json.dumps(out)

    @classmethod
    def from_json(cls, text: str) -> InvariantTuple:
        data = json.loads(text)
        return cls(**{f.name: Fraction(data[f.name]) for f in fields(cls)})


def _check_octavic(f: BinaryForm):
    if f.degree != 8:
        raise InputError(f"expected a binary octavic, got degree {f.degree}")


def covariants(f: BinaryForm) -> CovariantSet:
    _check_octavic(f)
    g = transvectant(f, f, 4)
    k = transvectant(f, f, 6)
    h = transvectant(k, k, 2)
    return CovariantSet(
        g=g,
        k=k,
        h=h,
        m=transvectant(f, k, 4),
        n=transvectant(f, h, 4),
        p=transvectant(g, k, 4),
        q=transvectant(g, h, 4),
    )


def raw_invariants(f: BinaryForm, cov: CovariantSet | None = None) -> dict[int, Fraction]:
    """The unnormalized transvectant invariants, keyed by degree."""
    c = cov or covariants(f)
    return {
        2: transvectant(f, f, 8).constant(),
        3: transvectant(f, c.g, 8).constant(),
        4: transvectant(c.k, c.k, 4).constant(),
        5: transvectant(c.m, c.k, 4).constant(),
        6: transvectant(c.k, c.h, 4).constant(),
        7: transvectant(c.m, c.h, 4).constant(),
        8: transvectant(c.p, c.h, 4).constant(),
        9: transvectant(c.n, c.h, 4).constant(),
        10: transvectant(c.q, c.h, 4).constant(),
    }


def shioda_invariants(f: BinaryForm, with_discriminant: bool = True) -> InvariantTuple:
    _check_octavic(f)
    raw = raw_invariants(f)
    vals = {f"J{i}": NORMALIZING_CONSTANTS[i] * raw[i] for i in range(2, 11)}
    vals["J14"] = discriminant(f) if with_discriminant else Fraction(0)
    return InvariantTuple(**vals)


def moduli_point(f: BinaryForm):
    """[J2 : ... : J8] of a smooth octavic, as a WeightedPoint."""
    from .wps import WeightedPoint

    inv = shioda_invariants(f)
    if inv.J14 == 0:
        raise SingularCurveError("discriminant vanishes: the octavic has a repeated root")
    if not any(inv.moduli):
        raise DegenerateTupleError("all of J2..J8 vanish")
    return WeightedPoint(inv.moduli)
