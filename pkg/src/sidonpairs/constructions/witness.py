"""Finite-scale witnesses that ``E u E'`` is not I0.

If ``E u E'`` were I0, E and E' would have disjoint closures in the Bohr
compactification, so some finite set of dual points would keep them apart.
Since the differences ``chi_n`` cluster at 0, for every choice of points
``x_1..x_m`` some pair ``(gamma_n, gamma_n + chi_n)`` is within chord
``1/m`` at each point.  This module finds such an ``n``.
"""

from __future__ import annotations

from ..errors import BudgetExhausted
from ..exact import chord_less_than, circular_distance
from .precision import PrecisionSpec
from .result import ConstructionResult, WitnessReport


def pair_report(result: ConstructionResult, spec: PrecisionSpec, n: int) -> WitnessReport:
    p = result.pairs[n - 1]
    values = tuple((x.evaluate(p.gamma), x.evaluate(p.gamma_prime)) for x in spec.points)
    distances = tuple(circular_distance(a, b) for a, b in values)
    below = all(chord_less_than(d, spec.chord_bound) for d in distances)
    return WitnessReport(spec, n, p.gamma, p.gamma_prime, values, distances, below)


def non_i0_witness(result: ConstructionResult, spec: PrecisionSpec, budget: int | None = None) -> WitnessReport:
    """First stage ``n`` (at most ``budget``) whose pair is ``1/m``-close at every point of ``spec``."""
    limit = len(result.pairs) if budget is None else min(budget, len(result.pairs))
    for n in range(1, limit + 1):
        report = pair_report(result, spec, n)
        if report.all_below:
            return report
    raise BudgetExhausted(
        f"none of the first {limit} pairs is within chord 1/{spec.m} at every sample point; "
        "a longer construction may still supply one"
    )
