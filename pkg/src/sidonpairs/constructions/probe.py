"""Budgeted probes of a stream's projections.

Whether ``pi_alpha(F)`` is infinite cannot be decided from finitely many
elements.  The probes compare the two halves of a prefix: if the second half
brings no new value the image looks finite, if it brings at least two new
values it looks infinite, and anything in between is reported as
inconclusive.  An explicit finite list that fits the budget is decided
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from ..groups import ElementStream, element_order

FINITE = "finite"
INFINITE = "infinite"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ImageProbe:
    index: int
    status: str
    distinct: int
    new_in_second_half: int
    sampled: int

    def to_dict(self):
        return {"index": self.index, "status": self.status, "distinct": self.distinct,
                "new_in_second_half": self.new_in_second_half, "sampled": self.sampled}


def _exhaustive(F: ElementStream, budget: int) -> bool:
    return F.is_finite and len(F.items) <= budget


def _halves_status(first: set, second: set, exact: bool) -> tuple[str, int]:
    new = len(second - first)
    if exact:
        return FINITE, new
    if new == 0:
        return FINITE, new
    if new >= 2:
        return INFINITE, new
    return INCONCLUSIVE, new


def probe_image(F: ElementStream, index: int, budget: int) -> ImageProbe:
    prefix = F.prefix(budget)
    images = [x.coordinate(index) for x in prefix]
    half = len(images) // 2
    status, new = _halves_status(set(images[:half]), set(images[half:]), _exhaustive(F, budget))
    return ImageProbe(index, status, len(set(images)), new, len(images))


def probe_denominators(F: ElementStream, index: int, budget: int) -> str:
    """``"bounded"`` when the second half of the prefix adds no new denominator
    beyond the lcm of the first half's, else ``"unbounded"``."""
    prefix = F.prefix(budget)
    dens = [x.coordinate(index).denominator for x in prefix]
    half = max(1, len(dens) // 2)
    L = reduce(math.lcm, dens[:half], 1)
    return "bounded" if all(L % d == 0 for d in dens[half:]) else "unbounded"


def support_indices(F: ElementStream, budget: int) -> list[int]:
    return sorted({i for x in F.prefix(budget) for i in x.indices})


def probe_orders(F: ElementStream, budget: int, cap: int) -> dict:
    """Largest q for which ``{alpha : some f has order >= q at alpha}`` looks infinite.

    Infinite orders count as ``cap``.  Returns the chosen q (or None) and the
    indices where an order of at least 3 was seen.
    """
    prefix = F.prefix(budget)
    half = len(prefix) // 2
    first_seen: dict[int, list] = {}
    for pos, x in enumerate(prefix):
        for i, c in x.support:
            o = x.ambient.factor(i).order(c)
            o = cap if o == math.inf else min(int(o), cap)
            first_seen.setdefault(i, []).append((pos, o))

    def status(q):
        early = {i for i, obs in first_seen.items() if any(p < half and o >= q for p, o in obs)}
        late = {i for i, obs in first_seen.items() if any(p >= half and o >= q for p, o in obs)}
        return _halves_status(early, late, _exhaustive(F, budget))[0]

    orders = sorted({o for obs in first_seen.values() for _, o in obs if o >= 2}, reverse=True)
    chosen = None
    for q in orders:
        if status(q) == INFINITE:
            chosen = q
            break
    exceptional = sorted(i for i, obs in first_seen.items() if any(o >= 3 for _, o in obs))
    return {"q": chosen, "orders_seen": orders, "exceptional": exceptional}


def max_order_at(F: ElementStream, index: int, budget: int):
    return max((element_order(x.restrict([index])) for x in F.prefix(budget)), default=1)
