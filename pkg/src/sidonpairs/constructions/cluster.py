"""Differences of F that are small in the Bohr topology."""

from __future__ import annotations

import random

from ..errors import BudgetExhausted
from ..exact import UnitAngle, chord_less_than, circular_distance
from ..groups import Difference, ElementStream, GroupElement, difference_stream
from .precision import PrecisionSpec, Sampling, random_spec


def is_small(chi: GroupElement, spec: PrecisionSpec) -> bool:
    """``max_j |chi(x_j) - 1| < 1/m``, decided exactly."""
    bound = spec.chord_bound
    return all(chord_less_than(circular_distance(x.evaluate(chi), UnitAngle(0)), bound) for x in spec.points)


def find_cluster_element(F: ElementStream, spec: PrecisionSpec, budget: int | None = None) -> Difference:
    """First nonzero ``f_i - f_j`` (sweep order) that is small at the spec's points.

    ``budget`` limits how many elements of F enter the sweep.  Running out
    is inconclusive: the compactness argument guarantees such differences
    exist, just possibly deeper in F.
    """
    for d in difference_stream(F, budget):
        if d.duplicate:
            continue
        if is_small(d.element, spec):
            return d
    raise BudgetExhausted(
        f"no difference among the first {min(budget or F.limit, F.limit)} elements of F is small at precision m={spec.m}"
    )


def stage_spec(F: ElementStream, n: int, seed, sampling: Sampling) -> PrecisionSpec:
    """The precision spec used for the ``n``-th cluster element (``m = n``)."""
    return random_spec(F.ambient, n, f"{seed}:H:{n}", sampling)


def cluster_sequence(F: ElementStream, rounds: int, seed, sampling: Sampling = Sampling(), budget: int | None = None):
    """``chi_1, ..., chi_rounds`` with ``chi_n`` small at the seeded stage-``n`` spec.

    The specs get finer as ``n`` grows, so the sequence clusters at 0 along
    every sampled direction.
    """
    out = []
    for n in range(1, rounds + 1):
        spec = stage_spec(F, n, seed, sampling)
        out.append(find_cluster_element(F, spec, budget))
    return out


def empirical_cluster_set(F: ElementStream, m: int, samples: int, seed, sampling: Sampling = Sampling(),
                          budget: int | None = None) -> list[GroupElement]:
    """An empirical stand-in for a finite H_m: qualifying differences
    collected over ``samples`` random m-point specs (inconclusive specs skipped)."""
    rng = random.Random(f"empirical:{seed}:{m}")
    found: list[GroupElement] = []
    for _ in range(samples):
        spec = random_spec(F.ambient, m, rng.getrandbits(64), sampling)
        if any(is_small(h, spec) for h in found):
            continue
        try:
            found.append(find_cluster_element(F, spec, budget).element)
        except BudgetExhausted:
            continue
    return found
