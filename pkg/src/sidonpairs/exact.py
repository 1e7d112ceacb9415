"""Exact rational arithmetic on the circle group.

Rationals are :class:`fractions.Fraction` values (always reduced, positive
denominator).  A point of the circle is stored as a :class:`UnitAngle`, its
argument measured in turns, so ``UnitAngle(a)`` stands for ``exp(2*pi*i*a)``.

Chordal distances are never computed in floating point.  Since
``|exp(2 pi i a) - exp(2 pi i b)| = 2 sin(pi d)`` with ``d`` the circular
distance in turns, and this is increasing on ``[0, 1/2]``, chord comparisons
between two angles reduce to rational comparisons of circular distances.
Comparisons of a chord with an arbitrary rational constant go through
:func:`chord_less_than`, which decides ``2 sin(pi d) < c`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

BigRational = Fraction

HALF = Fraction(1, 2)


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    """Canonical ``"num/den"`` text, used by the JSON codec."""
    x = rational(x)
    return f"{x.numerator}/{x.denominator}"


def denominator(x) -> int:
    """Denominator of the reduced form of ``x``; zero has denominator 1."""
    return rational(x).denominator


def frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True, order=True)
class UnitAngle:
    """A root of unity ``exp(2 pi i turns)`` with ``turns`` kept in ``[0, 1)``."""

    turns: Fraction = Fraction(0)

    def __post_init__(self):
        t = rational(self.turns)
        object.__setattr__(self, "turns", frac_part(t))

    def __add__(self, other: "UnitAngle") -> "UnitAngle":
        return UnitAngle(self.turns + _turns(other))

    def __sub__(self, other: "UnitAngle") -> "UnitAngle":
        return UnitAngle(self.turns - _turns(other))

    def __neg__(self) -> "UnitAngle":
        return UnitAngle(-self.turns)

    def __mul__(self, k: int) -> "UnitAngle":
        if not isinstance(k, int):
            return NotImplemented
        return UnitAngle(self.turns * k)

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return self.turns == 0

    def complex(self) -> complex:
        """Floating point value; for reports only."""
        theta = 2 * math.pi * float(self.turns)
        return complex(math.cos(theta), math.sin(theta))

    def __str__(self):
        return format_rational(self.turns)


def _turns(a) -> Fraction:
    return a.turns if isinstance(a, UnitAngle) else rational(a)


def circular_distance(a, b) -> Fraction:
    """Distance between two angles on the circle, in turns, in ``[0, 1/2]``."""
    d = frac_part(abs(_turns(a) - _turns(b)))
    return min(d, 1 - d)


def chord_within(a, b, bound_turns, strict: bool = True) -> bool:
    """Whether ``a`` and ``b`` are within ``bound_turns`` of each other.

    Equivalent to the chordal test ``|a - b| < 2 sin(pi * bound_turns)``
    (``<=`` when ``strict`` is off).
    """
    bound = rational(bound_turns)
    if not 0 <= bound <= HALF:
        raise ValueError("bound_turns must lie in [0, 1/2]")
    d = circular_distance(a, b)
    return d < bound if strict else d <= bound


def chord_length(d) -> float:
    """``2 sin(pi d)`` as a float.  Reports only."""
    return 2.0 * math.sin(math.pi * float(d))


# -- exact comparison of a chord against a rational constant -----------------


def _arctan_inv_bounds(k: int, terms: int) -> tuple[Fraction, Fraction]:
    # alternating series for arctan(1/k); consecutive partial sums bracket it
    s = Fraction(0)
    sums = []
    for j in range(terms + 1):
        s += Fraction((-1) ** j, (2 * j + 1) * k ** (2 * j + 1))
        sums.append(s)
    a, b = sums[-2], sums[-1]
    return min(a, b), max(a, b)


@lru_cache(maxsize=None)
def pi_bounds(digits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo < pi < hi`` with ``hi - lo <= 2 * 10**-digits``."""
    terms = digits + 3
    lo5, hi5 = _arctan_inv_bounds(5, terms)
    lo239, hi239 = _arctan_inv_bounds(239, terms)
    lo = 16 * lo5 - 4 * hi239
    hi = 16 * hi5 - 4 * lo239
    scale = 10**digits
    return Fraction(math.floor(lo * scale), scale), Fraction(math.ceil(hi * scale), scale)


def _sin_bounds(x: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    # Taylor partial sums alternate around sin(x) for 0 <= x <= 2
    s = Fraction(0)
    term = x
    sums = []
    for j in range(terms + 1):
        s += term
        sums.append(s)
        term = -term * x * x / ((2 * j + 2) * (2 * j + 3))
    a, b = sums[-2], sums[-1]
    return min(a, b), max(a, b)


def chord_less_than(d, c, max_digits: int = 400) -> bool:
    """Decide ``2 sin(pi d) < c`` exactly for rational ``d`` in ``[0, 1/2]``.

    For rational ``d`` the value ``2 sin(pi d)`` is rational only when it is
    0, 1 or 2 (Niven), so apart from those constants the two sides never tie
    and interval refinement terminates.
    """
    d = rational(d)
    c = rational(c)
    if not 0 <= d <= HALF:
        raise ValueError("d must lie in [0, 1/2]")
    if c <= 0:
        return False
    if d == 0:
        return True
    if c > 2:
        return True
    if c == 2:
        return d < HALF
    if c == 1:
        return d < Fraction(1, 6)
    # a float evaluation is off by far less than the margin; near-ties fall through
    approx, cf = chord_length(d), float(c)
    if approx < cf - 1e-9:
        return True
    if approx > cf + 1e-9:
        return False
    digits = 20
    while digits <= max_digits:
        plo, phi = pi_bounds(digits)
        # outward rounding keeps the operands small
        scale = 10 ** (digits + 2)
        xlo = Fraction(math.floor(plo * d * scale), scale)
        xhi = Fraction(math.ceil(phi * d * scale), scale)
        terms = digits // 2 + 8
        slo, _ = _sin_bounds(xlo, terms)
        # sin stops increasing at pi/2
        shi = Fraction(1) if xhi >= plo / 2 else _sin_bounds(xhi, terms)[1]
        if 2 * shi < c:
            return True
        if 2 * slo >= c:
            return False
        digits *= 2
    raise ArithmeticError("chord comparison did not resolve")  # pragma: no cover
