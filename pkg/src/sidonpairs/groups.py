"""Discrete abelian groups as subgroups of a restricted direct sum.

Every group handled here sits inside ``Omega = (+)_alpha Omega_alpha`` where
each factor is the rationals Q, a Prüfer group C(p^inf) or, for
convenience, a finite cyclic group Z(n).  Torsion coordinates are stored as
rationals in ``[0, 1)``: ``k/n`` stands for the ``n``-th root of unity
``exp(2 pi i k / n)``.  Indices are non-negative integers in their natural
order, which is all the constructions ever need (only countably many
coordinates are touched).

Infinite subsets F are :class:`ElementStream` objects: a deterministic rule
``k -> f_k`` plus a search budget, so that any search over F is finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterator, NamedTuple, Sequence

from .errors import AmbientMismatch, BudgetExhausted, InvalidConfig
from .exact import UnitAngle, frac_part, rational

INFINITE = math.inf

RATIONALS = "Q"
PRUFER = "CP"
CYCLIC = "cyclic"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class Factor:
    """Signature of one summand: Q, C(p^inf) or Z(n)."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus is not None:
                raise InvalidConfig("Q takes no modulus")
        elif self.kind == PRUFER:
            if not isinstance(self.modulus, int) or not _is_prime(self.modulus):
                raise InvalidConfig(f"C(p^inf) needs a prime p, got {self.modulus!r}")
        elif self.kind == CYCLIC:
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise InvalidConfig(f"Z(n) needs n >= 2, got {self.modulus!r}")
        else:
            raise InvalidConfig(f"unknown factor kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "Factor":
        return cls(RATIONALS)

    @classmethod
    def prufer(cls, p: int) -> "Factor":
        return cls(PRUFER, p)

    @classmethod
    def cyclic(cls, n: int) -> "Factor":
        return cls(CYCLIC, n)

    @property
    def is_torsion(self) -> bool:
        return self.kind != RATIONALS

    def normalize(self, c) -> Fraction:
        c = rational(c)
        if not self.is_torsion:
            return c
        c = frac_part(c)
        t = c.denominator
        if self.kind == PRUFER and not _is_power_of(t, self.modulus):
            raise InvalidConfig(f"{c} is not in C({self.modulus}^inf)")
        if self.kind == CYCLIC and self.modulus % t:
            raise InvalidConfig(f"{c} is not in Z({self.modulus})")
        return c

    def order(self, c: Fraction):
        if c == 0:
            return 1
        return c.denominator if self.is_torsion else INFINITE

    def generator(self) -> Fraction:
        """Coordinate of the standard generator of the factor."""
        if self.kind == RATIONALS:
            return Fraction(1)
        return Fraction(1, self.modulus)

    def __str__(self):
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRUFER:
            return f"C({self.modulus}^inf)"
        return f"Z({self.modulus})"


@dataclass(frozen=True)
class AmbientGroup:
    """``(+)_alpha Omega_alpha`` over a non-negative integer index set.

    ``explicit`` pins the signature of finitely many indices; ``default``
    (when given) is the signature of every other index, so the index set is
    infinite.  Without a default the index set is exactly the explicit one.
    """

    explicit: tuple[tuple[int, Factor], ...] = ()
    default: Factor | None = None

    def __post_init__(self):
        items = tuple(sorted((int(i), f) for i, f in self.explicit))
        if len({i for i, _ in items}) != len(items):
            raise InvalidConfig("duplicate index in ambient description")
        if any(i < 0 for i, _ in items):
            raise InvalidConfig("indices must be non-negative")
        if not items and self.default is None:
            raise InvalidConfig("ambient group has no factors")
        object.__setattr__(self, "explicit", items)

    @classmethod
    def integers(cls) -> "AmbientGroup":
        """Z, embedded as the integers of a single Q factor at index 0."""
        return cls(((0, Factor.rationals()),))

    @classmethod
    def single(cls, factor: Factor) -> "AmbientGroup":
        return cls(((0, factor),))

    @classmethod
    def direct_sum(cls, factor: Factor) -> "AmbientGroup":
        """Countable direct sum of copies of ``factor``."""
        return cls((), factor)

    def factor(self, index: int) -> Factor:
        for i, f in self.explicit:
            if i == index:
                return f
        if self.default is not None and index >= 0:
            return self.default
        raise InvalidConfig(f"index {index} is not in the ambient group")

    def has_index(self, index: int) -> bool:
        try:
            self.factor(index)
        except InvalidConfig:
            return False
        return True

    def indices(self) -> Iterator[int]:
        """All indices in increasing order (infinite when a default is set)."""
        if self.default is None:
            for i, _ in self.explicit:
                yield i
            return
        k = 0
        while True:
            yield k
            k += 1

    def element(self, coords=None) -> "GroupElement":
        """Build an element from ``{index: coordinate}`` or pairs."""
        items = coords.items() if isinstance(coords, dict) else (coords or ())
        acc: dict[int, Fraction] = {}
        for i, c in items:
            f = self.factor(int(i))
            acc[int(i)] = f.normalize(acc.get(int(i), 0) + rational(c))
        return GroupElement(self, _support(acc))

    def zero(self) -> "GroupElement":
        return GroupElement(self, ())

    def basis(self, index: int, multiple: int = 1) -> "GroupElement":
        return self.element({index: multiple * self.factor(index).generator()})

    def scalar(self, value) -> "GroupElement":
        """Element of a one-factor group, e.g. ``ambient.scalar(9)`` in Z."""
        if len(self.explicit) != 1 or self.default is not None:
            raise InvalidConfig("scalar() needs a single-factor ambient group")
        return self.element({self.explicit[0][0]: value})

    def __str__(self):
        parts = [f"{f}[{i}]" for i, f in self.explicit]
        if self.default is not None:
            parts.append(f"(+){self.default}")
        return " (+) ".join(parts)


def _support(acc: dict[int, Fraction]) -> tuple[tuple[int, Fraction], ...]:
    return tuple(sorted((i, c) for i, c in acc.items() if c != 0))


@dataclass(frozen=True)
class GroupElement:
    """Finite-support coordinate vector; zero coordinates are never stored."""

    ambient: AmbientGroup
    support: tuple[tuple[int, Fraction], ...] = ()

    def coordinate(self, index: int) -> Fraction:
        for i, c in self.support:
            if i == index:
                return c
        return Fraction(0)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.support)

    def is_zero(self) -> bool:
        return not self.support

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement):
            raise TypeError("expected a GroupElement")
        if other.ambient is not self.ambient and other.ambient != self.ambient:
            raise AmbientMismatch("elements belong to different ambient groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        acc = dict(self.support)
        for i, c in other.support:
            acc[i] = self.ambient.factor(i).normalize(acc.get(i, 0) + c)
        return GroupElement(self.ambient, _support(acc))

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.ambient,
            _support({i: self.ambient.factor(i).normalize(-c) for i, c in self.support}),
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(
            self.ambient,
            _support({i: self.ambient.factor(i).normalize(k * c) for i, c in self.support}),
        )

    __rmul__ = __mul__

    def restrict(self, indices) -> "GroupElement":
        """Projection onto the sub-sum over ``indices``."""
        keep = set(indices)
        return GroupElement(self.ambient, tuple((i, c) for i, c in self.support if i in keep))

    def __str__(self):
        if not self.support:
            return "0"
        return " + ".join(f"{c}@{i}" for i, c in self.support)


def project(x: GroupElement, index: int):
    """The ``index`` coordinate: a Fraction on Q, a UnitAngle on torsion factors."""
    f = x.ambient.factor(index)
    c = x.coordinate(index)
    return UnitAngle(c) if f.is_torsion else c


def add(x: GroupElement, y: GroupElement) -> GroupElement:
    return x + y


def negate(x: GroupElement) -> GroupElement:
    return -x


def subtract(x: GroupElement, y: GroupElement) -> GroupElement:
    return x - y


def element_order(x: GroupElement):
    """Least ``n >= 1`` with ``n x = 0``, or ``INFINITE``."""
    orders = [x.ambient.factor(i).order(c) for i, c in x.support]
    if any(o == INFINITE for o in orders):
        return INFINITE
    return reduce(math.lcm, orders, 1)


# -- streams ----------------------------------------------------------------


@dataclass(frozen=True)
class ElementStream:
    """A subset F given by an explicit list or by a rule ``k -> f_k``.

    ``budget`` caps how many elements any search may look at.  ``describe``
    is the JSON-able description the stream was built from, when it came
    from a config file.
    """

    ambient: AmbientGroup
    rule: Callable[[int], GroupElement] | None = None
    items: tuple[GroupElement, ...] | None = None
    budget: int = 1000
    describe: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if (self.rule is None) == (self.items is None):
            raise InvalidConfig("a stream needs exactly one of rule or items")
        if self.budget < 1:
            raise InvalidConfig("stream budget must be >= 1")
        if self.items is not None:
            object.__setattr__(self, "items", tuple(self.items))
            if len(set(self.items)) != len(self.items):
                raise InvalidConfig("explicit F contains repeated elements")

    @classmethod
    def from_list(cls, ambient, elements, budget=None, describe=None) -> "ElementStream":
        elements = tuple(elements)
        return cls(ambient, items=elements, budget=budget or max(1, len(elements)), describe=describe)

    @property
    def is_finite(self) -> bool:
        return self.items is not None

    @property
    def limit(self) -> int:
        """Number of elements a search may use."""
        if self.items is not None:
            return min(self.budget, len(self.items))
        return self.budget

    def get(self, k: int) -> GroupElement:
        if k < 0:
            raise IndexError(k)
        if self.items is not None:
            return self.items[k]
        x = self.rule(k)
        if x.ambient != self.ambient:
            raise AmbientMismatch("stream rule produced an element of another group")
        return x

    def prefix(self, n: int | None = None) -> list[GroupElement]:
        """The first ``min(n, limit)`` elements; repeated elements are an error."""
        n = self.limit if n is None else min(n, self.limit)
        out = [self.get(k) for k in range(n)]
        if len(set(out)) != len(out):
            raise InvalidConfig("stream rule produced a repeated element")
        return out

    def with_budget(self, budget: int) -> "ElementStream":
        return ElementStream(self.ambient, self.rule, self.items, budget, self.describe)


class Difference(NamedTuple):
    """``element = f_i - f_j``; ``duplicate`` marks a repeat of an earlier value."""

    element: GroupElement
    i: int
    j: int
    duplicate: bool


def difference_stream(F: ElementStream, budget: int | None = None) -> Iterator[Difference]:
    """Enumerate ``(F - F) \\ {0}`` over the first ``budget`` elements of F.

    Sweep order: for ``k = 1, 2, ...`` yield ``f_k - f_j`` for ``j < k``, then
    ``f_j - f_k`` for ``j < k``.  Every difference of the prefix appears.
    """
    elems = F.prefix(budget)
    seen = set()
    for k in range(1, len(elems)):
        for sign in (1, -1):
            for j in range(k):
                d = elems[k] - elems[j] if sign > 0 else elems[j] - elems[k]
                if d.is_zero():
                    continue
                i1, i2 = (k, j) if sign > 0 else (j, k)
                dup = d in seen
                seen.add(d)
                yield Difference(d, i1, i2, dup)


class TripleSum(NamedTuple):
    f1: GroupElement
    f2: GroupElement
    f3: GroupElement
    indices: tuple[int, int, int]


def triple_sum_contains(F: ElementStream, y: GroupElement, budget: int) -> TripleSum:
    """Find ``y = f1 + f2 - f3`` with all three among the first ``budget`` elements."""
    if budget < 1:
        raise InvalidConfig("budget must be >= 1")
    elems = F.prefix(budget)
    where = {e: k for k, e in enumerate(elems)}
    for k3, f3 in enumerate(elems):
        target = y + f3
        for k1, f1 in enumerate(elems):
            k2 = where.get(target - f1)
            if k2 is not None:
                return TripleSum(f1, elems[k2], f3, (k1, k2, k3))
    raise BudgetExhausted(f"no representation of {y} as f1+f2-f3 within {len(elems)} elements")


# -- named stream rules ------------------------------------------------------


def _primes():
    from sympy import sieve

    return sieve


def geometric(ambient: AmbientGroup, base: int, start: int = 1, index: int = 0, budget: int = 1000):
    """``{base^j : j >= start}`` on the Q (or Z) factor at ``index``."""
    if ambient.factor(index).is_torsion or base < 2:
        raise InvalidConfig("geometric needs base >= 2 on a Q factor")
    return ElementStream(
        ambient,
        rule=lambda k: ambient.element({index: base ** (start + k)}),
        budget=budget,
        describe={"rule": "geometric", "base": base, "start": start, "index": index},
    )


def naturals(ambient: AmbientGroup, start: int = 1, index: int = 0, budget: int = 1000):
    return ElementStream(
        ambient,
        rule=lambda k: ambient.element({index: start + k}),
        budget=budget,
        describe={"rule": "naturals", "start": start, "index": index},
    )


def unit_generators(ambient: AmbientGroup, start: int = 0, budget: int = 1000):
    """Standard generators ``e_k`` of the factors, in index order."""
    if ambient.default is None:
        indices = [i for i, _ in ambient.explicit][start:]
        return ElementStream.from_list(
            ambient, [ambient.basis(i) for i in indices], budget=budget,
            describe={"rule": "unit_generators", "start": start},
        )
    return ElementStream(
        ambient,
        rule=lambda k: ambient.basis(start + k),
        budget=budget,
        describe={"rule": "unit_generators", "start": start},
    )


def prime_reciprocals(ambient: AmbientGroup, index: int = 0, budget: int = 1000):
    """``{1/p : p prime}`` on a Q factor: unbounded denominators."""
    if ambient.factor(index).is_torsion:
        raise InvalidConfig("prime_reciprocals needs a Q factor")
    sieve = _primes()
    return ElementStream(
        ambient,
        rule=lambda k: ambient.element({index: Fraction(1, sieve[k + 1])}),
        budget=budget,
        describe={"rule": "prime_reciprocals", "index": index},
    )


def prime_power_reciprocals(ambient: AmbientGroup, p: int, start: int = 1, index: int = 0, budget: int = 1000):
    """``{1/p^j : j >= start}``, in Q or in C(p^inf)."""
    return ElementStream(
        ambient,
        rule=lambda k: ambient.element({index: Fraction(1, p ** (start + k))}),
        budget=budget,
        describe={"rule": "prime_power_reciprocals", "p": p, "start": start, "index": index},
    )


RULES = {
    "geometric": geometric,
    "naturals": naturals,
    "unit_generators": unit_generators,
    "prime_reciprocals": prime_reciprocals,
    "prime_power_reciprocals": prime_power_reciprocals,
}


def stream_from_description(ambient: AmbientGroup, desc: dict, budget: int) -> ElementStream:
    """Build F from its config description (a named rule or an explicit list)."""
    if not isinstance(desc, dict):
        raise InvalidConfig("F description must be an object")
    if "list" in desc:
        from .serialize import element_from_json

        elems = [element_from_json(ambient, e) for e in desc["list"]]
        return ElementStream.from_list(ambient, elems, budget=budget, describe=dict(desc))
    name = desc.get("rule")
    if name not in RULES:
        raise InvalidConfig(f"unknown F rule {name!r}; known: {sorted(RULES)}")
    params = {k: v for k, v in desc.items() if k != "rule"}
    try:
        return RULES[name](ambient, budget=budget, **params)
    except TypeError as exc:
        raise InvalidConfig(f"bad parameters for rule {name!r}: {exc}") from None


def common_denominator(values: Sequence[Fraction]) -> int:
    return reduce(math.lcm, (rational(v).denominator for v in values), 1)
