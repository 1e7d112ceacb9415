"""Choosing the case for a given F."""

from __future__ import annotations

from ..errors import InvalidConfig, ProbeInconclusive
from ..groups import CYCLIC, PRUFER, ElementStream
from .case_one import build_case1_cpinf, build_case1_q
from .case_two import build_case2
from .config import ConstructionConfig
from .probe import INCONCLUSIVE, INFINITE, probe_image, probe_orders, support_indices
from .result import ConstructionResult


def choose_case(F: ElementStream, config: ConstructionConfig) -> dict:
    """The dispatch decision and the probe evidence behind it."""
    if config.infinite_index is not None:
        alpha = config.infinite_index
        f = F.ambient.factor(alpha)
        if f.kind == CYCLIC:
            raise InvalidConfig(f"index {alpha} is a finite factor {f}; its image cannot be infinite")
        return {"case": "case1_cpinf" if f.kind == PRUFER else "case1_q", "index": alpha, "asserted": True}
    probes = []
    for i in support_indices(F, config.probe_budget):
        if F.ambient.factor(i).kind == CYCLIC:
            continue
        p = probe_image(F, i, config.probe_budget)
        probes.append(p.to_dict())
        if p.status == INFINITE:
            kind = F.ambient.factor(i).kind
            return {"case": "case1_cpinf" if kind == PRUFER else "case1_q", "index": i,
                    "asserted": False, "probes": probes}
    unsure = [p["index"] for p in probes if p["status"] == INCONCLUSIVE]
    if unsure:
        raise ProbeInconclusive(
            f"cannot tell whether the projections to indices {unsure} are infinite; "
            "raise probe_budget or assert infinite_index"
        )
    orders = probe_orders(F, config.probe_budget, config.q_cap)
    return {"case": "case2", "q": orders["q"] or 2, "asserted": False, "probes": probes,
            "orders_seen": orders["orders_seen"], "exceptional": orders["exceptional"]}


def build_pair(F: ElementStream, config: ConstructionConfig = ConstructionConfig()) -> ConstructionResult:
    """Sets ``E`` in F and ``E'`` in F+F-F, each weak Kronecker, whose union is not I0.

    Case 1 when some Q or C(p^inf) coordinate of F takes infinitely many
    values (by probe or by ``config.infinite_index``), otherwise Case 2 with
    the largest ``q`` whose index set ``I_q`` looks infinite.
    """
    decision = choose_case(F, config)
    if decision["case"] == "case1_q":
        result = build_case1_q(F, decision["index"], config)
    elif decision["case"] == "case1_cpinf":
        result = build_case1_cpinf(F, decision["index"], config)
    else:
        result = build_case2(F, config, q=decision["q"], exceptional=decision["exceptional"])
    result.provenance["dispatch"] = decision
    result.provenance["epsilon_turns"] = result.bound
    return result


def extend_construction(F: ElementStream, config: ConstructionConfig, rounds: int) -> ConstructionResult:
    """The same construction run for more rounds; the first stages are unchanged."""
    return build_pair(F, config.with_rounds(rounds))
