"""Pairs built on a fresh coordinate per stage when every projection of F is finite.

Stage ``n`` picks a fresh coordinate ``beta_n`` where ``chi_1..chi_n`` and
the earlier ``lambda_m`` all vanish, then the first ``lambda_n in F`` whose
coordinate at ``beta_n`` has order at least ``q``.  Each element of E and E'
then has its "own" coordinate, and the residual at earlier coordinates is
already fixed when stage ``n`` is reached, so a product of one character
per coordinate interpolates within ``1/(2q)`` turns.

For ``q = 2`` the coordinates where some element has order 3 or more are
excluded, every used coordinate has order exactly 2, and the projections of
E and E' to the used coordinates are checked to be independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations, product

from ..errors import BudgetExhausted, InvalidConfig, OrderTooSmall, SearchBudget
from ..groups import INFINITE, ElementStream, GroupElement, element_order
from ..kronecker import epsilon_q, product_interpolate
from .cluster import cluster_sequence
from .config import ConstructionConfig, random_targets
from .probe import probe_orders, support_indices
from .result import ConstructionResult, Pair

DEFAULT_COMBINATION_CAP = 2**20


@dataclass(frozen=True)
class Independence:
    independent: bool
    counterexample: tuple[tuple[int, int], ...] | None  # (position, coefficient)
    combinations: int
    max_subset: int

    def to_dict(self):
        return {
            "independent": self.independent,
            "counterexample": None if self.counterexample is None else [list(c) for c in self.counterexample],
            "combinations": self.combinations,
            "max_subset": self.max_subset,
        }


def independence_check(S, max_subset: int = 10, cap: int = DEFAULT_COMBINATION_CAP) -> Independence:
    """Look for ``sum c_i s_i = 0`` with ``0 < c_i < ord(s_i)`` over subsets of size at most ``max_subset``.

    Subsets are tried by size, then lexicographically; coefficients
    lexicographically.  A zero element is a dependence on its own.
    """
    S = list(S)
    if max_subset < 1:
        raise InvalidConfig("max_subset must be >= 1")
    orders = [element_order(s) for s in S]
    if any(o == INFINITE for o in orders):
        raise InvalidConfig("independence_check needs elements of finite order")
    for pos, o in enumerate(orders):
        if o == 1:
            return Independence(False, ((pos, 1),), 1, max_subset)
    k_max = min(max_subset, len(S))
    total = 0
    for k in range(1, k_max + 1):
        for sub in combinations(range(len(S)), k):
            total += math.prod(orders[i] - 1 for i in sub)
            if total > cap:
                raise SearchBudget(f"more than {cap} combinations for subsets up to size {k_max}")
    tried = 0
    for k in range(1, k_max + 1):
        for sub in combinations(range(len(S)), k):
            for coeffs in product(*(range(1, orders[i]) for i in sub)):
                tried += 1
                acc = S[0].ambient.zero()
                for i, c in zip(sub, coeffs):
                    acc = acc + S[i] * c
                if acc.is_zero():
                    return Independence(False, tuple(zip(sub, coeffs)), tried, max_subset)
    return Independence(True, None, tried, max_subset)


def _coordinate_order(x: GroupElement, b: int):
    return x.ambient.factor(b).order(x.coordinate(b))


def build_case2(F: ElementStream, config: ConstructionConfig = ConstructionConfig(), q: int | None = None,
                exceptional=None) -> ConstructionResult:
    """``q`` defaults to ``config.q``; ``exceptional`` is the excluded index set for ``q = 2``
    (default: every index where the probe saw an order of 3 or more)."""
    q = config.q if q is None else q
    if not isinstance(q, int) or q < 2:
        raise InvalidConfig("q must be an integer >= 2")
    prefix = F.prefix()
    candidates = support_indices(F, F.limit)
    if not any(_coordinate_order(f, b) >= q for f in prefix for b in f.indices):
        raise OrderTooSmall(f"no element of F within budget has a coordinate of order >= {q}")
    J: set[int] = set()
    if q == 2:
        if exceptional is None:
            exceptional = probe_orders(F, F.limit, config.q_cap)["exceptional"]
        J = set(exceptional)

    diffs = cluster_sequence(F, config.rounds, config.seed, config.sampling, config.difference_budget)
    chis = [d.element for d in diffs]
    betas, picks = [], []
    for n in range(1, config.rounds + 1):
        found = None
        for b in candidates:
            if b in betas or b in J:
                continue
            if any(chis[m].coordinate(b) != 0 for m in range(n)):
                continue
            if any(prefix[k].coordinate(b) != 0 for k in picks):
                continue
            for k, f in enumerate(prefix):
                if k in picks:
                    continue
                o = _coordinate_order(f, b)
                if o >= q and (q > 2 or o == 2):
                    found = (b, k)
                    break
            if found:
                break
        if found is None:
            raise BudgetExhausted(f"stage {n}: no admissible coordinate among {len(candidates)} probed indices")
        betas.append(found[0])
        picks.append(found[1])

    pairs = tuple(Pair(n, prefix[k], d.element, k, (d.i, d.j))
                  for n, (k, d) in enumerate(zip(picks, diffs), start=1))
    E = [p.gamma for p in pairs]
    Ep = [p.gamma_prime for p in pairs]
    tE = random_targets(config.rounds, config.seed, "E", config.target_denominator)
    tEp = random_targets(config.rounds, config.seed, "Eprime", config.target_denominator)
    cert_E = product_interpolate(E, betas, tE, q)
    cert_Ep = product_interpolate(Ep, betas, tEp, q)
    bound = epsilon_q(q)
    provenance = {
        "case": "case2",
        "branch": "order2" if q == 2 else "order_q",
        "q": q,
        "bound": bound,
        "strict": False,
        "seed": config.seed,
        "rounds": config.rounds,
        "indices": betas,
        "index_rule": "smallest admissible index in increasing order",
        "orders": [_coordinate_order(x, b) for x, b in zip(E, betas)],
        "cluster_specs": [f"{config.seed}:H:{n}" for n in range(1, config.rounds + 1)],
    }
    if q == 2:
        provenance["exceptional"] = sorted(J)
        proj_E = [x.restrict(betas) for x in E]
        proj_Ep = [x.restrict(betas) for x in Ep]
        provenance["independence"] = {
            "E": independence_check(proj_E, config.independence_max_subset).to_dict(),
            "Eprime": independence_check(proj_Ep, config.independence_max_subset).to_dict(),
        }
    branch = provenance["branch"]
    return ConstructionResult(F.ambient, "case2", branch, q, bound, False, pairs, _relabel(cert_E, "E"),
                              _relabel(cert_Ep, "Eprime"), provenance, F)


def _relabel(cert, label):
    return replace(cert, label=label)
