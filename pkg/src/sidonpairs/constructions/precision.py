"""Sample points of the dual group and precision specs.

A :class:`DualPoint` is a character of the ambient direct sum given by one
multiplier per coordinate: ``x(gamma) = sum_beta u_beta * gamma_beta (mod 1)``.
On a Q factor ``u`` is any rational (the characters ``v -> exp(2 pi i u v)``
are dense in the dual of Q); on a torsion factor ``u`` is an integer, which
for C(p^inf) picks out the integers inside the p-adic dual.

Random points are drawn at desk scale: finitely many nonzero multipliers
(the first ``support`` coordinates) and bounded denominators.  Such points
are dense in the dual group, and they are what makes finite searches for
Bohr-small differences terminate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice

from ..errors import InvalidConfig
from ..exact import UnitAngle
from ..groups import CYCLIC, PRUFER, AmbientGroup, GroupElement


@dataclass(frozen=True)
class DualPoint:
    multipliers: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "multipliers", tuple(sorted((int(i), Fraction(u)) for i, u in self.multipliers if u != 0)))

    def evaluate(self, x: GroupElement) -> UnitAngle:
        u = dict(self.multipliers)
        return UnitAngle(sum((c * u.get(i, 0) for i, c in x.support), Fraction(0)))

    __call__ = evaluate


@dataclass(frozen=True)
class PrecisionSpec:
    """``m`` sample points; an element is m-small when every chord to 1 is ``< 1/m``."""

    m: int
    points: tuple[DualPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.m < 1:
            raise InvalidConfig("precision m must be >= 1")
        if len(self.points) != self.m:
            raise InvalidConfig(f"precision spec needs exactly m = {self.m} points, got {len(self.points)}")

    @property
    def chord_bound(self) -> Fraction:
        return Fraction(1, self.m)


@dataclass(frozen=True)
class Sampling:
    """How desk-scale dual points are drawn."""

    support: int = 16
    max_denominator: int = 12
    max_multiplier: int = 64

    def __post_init__(self):
        if min(self.support, self.max_denominator, self.max_multiplier) < 1:
            raise InvalidConfig("sampling parameters must be >= 1")


def random_dual_point(ambient: AmbientGroup, rng: random.Random, sampling: Sampling = Sampling()) -> DualPoint:
    mult = []
    for i in islice(ambient.indices(), sampling.support):
        f = ambient.factor(i)
        if f.kind == CYCLIC:
            u = Fraction(rng.randrange(f.modulus))
        elif f.kind == PRUFER:
            u = Fraction(rng.randrange(sampling.max_multiplier))
        else:
            d = rng.randint(1, sampling.max_denominator)
            u = Fraction(rng.randrange(d), d)
        mult.append((i, u))
    return DualPoint(tuple(mult))


def random_spec(ambient: AmbientGroup, m: int, seed, sampling: Sampling = Sampling()) -> PrecisionSpec:
    """``m`` points from a generator seeded by ``seed`` (any str/int)."""
    rng = random.Random(f"spec:{seed}")
    return PrecisionSpec(m, tuple(random_dual_point(ambient, rng, sampling) for _ in range(m)))


def trivial_spec(m: int = 1) -> PrecisionSpec:
    return PrecisionSpec(m, tuple(DualPoint() for _ in range(m)))
