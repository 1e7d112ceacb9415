"""Exact characters on the finitely generated pieces the constructions touch.

* :class:`TorusPoint` -- ``v -> (scale * v) * x`` on ``(1/scale) Z``; with
  ``scale = 1`` this is the usual ``n -> n x`` of Z.
* :class:`LadderCharacter` -- a character of a subgroup of Q trivial on Z,
  given by its values ``a_k = g(1/L_k)`` along a divisibility chain of levels.
  Because ``g(Z) = 1`` it is equally a character of Q/Z, which is how
  C(p^inf) and Z(n) factors are handled.
* :class:`LevelCharacter` -- a ladder whose levels are powers of one prime.
* :class:`ProductCharacter` -- coordinatewise product over finitely many
  factors, trivial on every other factor.

All values are :class:`~sidonpairs.exact.UnitAngle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidConfig, LevelNotCovered, NotDivisible
from .exact import UnitAngle, rational
from .groups import GroupElement, _is_power_of


@dataclass(frozen=True)
class TorusPoint:
    x: UnitAngle
    scale: int = 1

    def __post_init__(self):
        if not isinstance(self.x, UnitAngle):
            object.__setattr__(self, "x", UnitAngle(self.x))
        if self.scale < 1:
            raise InvalidConfig("TorusPoint scale must be >= 1")

    def evaluate(self, v) -> UnitAngle:
        n = rational(v) * self.scale
        if n.denominator != 1:
            raise LevelNotCovered(f"{v} is not in (1/{self.scale})Z")
        return UnitAngle(n.numerator * self.x.turns)

    __call__ = evaluate


@dataclass(frozen=True)
class LadderCharacter:
    """Rungs ``((L_0, a_0), (L_1, a_1), ...)`` with ``L_k | L_{k+1}``.

    Consistency ``(L_{k+1}/L_k) a_{k+1} = a_k (mod 1)`` makes evaluation at
    ``s/t`` independent of which covering rung is used; the base rung
    ``(1, 0)`` pins ``g(Z) = 1``.
    """

    rungs: tuple[tuple[int, UnitAngle], ...] = ((1, UnitAngle(0)),)

    def __post_init__(self):
        rungs = tuple((int(L), a if isinstance(a, UnitAngle) else UnitAngle(a)) for L, a in self.rungs)
        object.__setattr__(self, "rungs", rungs)
        if not rungs or rungs[0] != (1, UnitAngle(0)):
            raise InvalidConfig("ladder must start at the base rung (1, 0)")
        for (L0, a0), (L1, a1) in zip(rungs, rungs[1:]):
            if L1 % L0:
                raise InvalidConfig(f"ladder levels {L0} does not divide {L1}")
            if a1 * (L1 // L0) != a0:
                raise InvalidConfig(f"ladder rung ({L1}, {a1}) is inconsistent with ({L0}, {a0})")

    @classmethod
    def base(cls) -> "LadderCharacter":
        return cls()

    @classmethod
    def cyclic(cls, n: int, value_at_generator) -> "LadderCharacter":
        """The character of Z(n) sending ``1/n`` to ``value_at_generator``."""
        return cls(((1, UnitAngle(0)), (n, UnitAngle(value_at_generator))))

    @property
    def top(self) -> tuple[int, UnitAngle]:
        return self.rungs[-1]

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(L for L, _ in self.rungs)

    def covers(self, x) -> bool:
        return self.top[0] % rational(x).denominator == 0

    def value_at_rung(self, x, k: int) -> UnitAngle:
        x = rational(x)
        L, a = self.rungs[k]
        t = x.denominator
        if L % t:
            raise LevelNotCovered(f"rung level {L} is not a multiple of {t}")
        return a * (x.numerator * (L // t))

    def evaluate(self, x) -> UnitAngle:
        x = rational(x)
        t = x.denominator
        for k, (L, _) in enumerate(self.rungs):
            if L % t == 0:
                return self.value_at_rung(x, k)
        raise LevelNotCovered(f"character not yet specified at {x} (top level {self.top[0]})")

    __call__ = evaluate

    def extend(self, new_level: int, K: int) -> "LadderCharacter":
        """Append the rung ``(new_level, (a_top + K)/J)``, ``J = new_level / L_top``."""
        L, a = self.top
        if new_level % L:
            raise NotDivisible(f"{L} does not divide {new_level}")
        J = new_level // L
        if not 0 <= K < J:
            raise ValueError(f"K must lie in [0, {J - 1}]")
        if J == 1:
            return self
        return self._with_rungs(self.rungs + ((new_level, UnitAngle((a.turns + K) / J)),))

    def _with_rungs(self, rungs):
        return LadderCharacter(rungs)


@dataclass(frozen=True)
class LevelCharacter(LadderCharacter):
    """Ladder character of C(p^inf): every level is a power of ``p``."""

    prime: int = 2

    def __post_init__(self):
        super().__post_init__()
        for L, _ in self.rungs:
            if not _is_power_of(L, self.prime):
                raise InvalidConfig(f"level {L} is not a power of {self.prime}")

    def _with_rungs(self, rungs):
        return LevelCharacter(rungs, self.prime)


FactorCharacter = TorusPoint | LadderCharacter


@dataclass(frozen=True)
class ProductCharacter:
    """``g = (g_beta)`` on finitely many factors, trivial elsewhere."""

    components: tuple[tuple[int, FactorCharacter], ...] = ()

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=lambda c: c[0]))
        if len({i for i, _ in comps}) != len(comps):
            raise InvalidConfig("duplicate component index")
        object.__setattr__(self, "components", comps)

    def component(self, index: int) -> FactorCharacter | None:
        for i, g in self.components:
            if i == index:
                return g
        return None

    def with_component(self, index: int, g: FactorCharacter) -> "ProductCharacter":
        comps = [(i, h) for i, h in self.components if i != index]
        return ProductCharacter(tuple(comps) + ((index, g),))

    def evaluate(self, x: GroupElement) -> UnitAngle:
        total = Fraction(0)
        for i, c in x.support:
            g = self.component(i)
            if g is not None:
                total += g.evaluate(c).turns
        return UnitAngle(total)

    __call__ = evaluate


def ladder_evaluate(g: LadderCharacter, x) -> UnitAngle:
    return g.evaluate(x)


def ladder_extend(g: LadderCharacter, new_level: int, K: int) -> LadderCharacter:
    return g.extend(new_level, K)


def product_evaluate(g: ProductCharacter, x: GroupElement) -> UnitAngle:
    return g.evaluate(x)
