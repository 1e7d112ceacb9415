"""The constructions: cluster elements, the two cases, dispatch, witnesses."""

from .case_one import build_case1_cpinf, build_case1_q
from .case_two import Independence, independence_check, build_case2
from .cluster import cluster_sequence, empirical_cluster_set, find_cluster_element, is_small
from .config import ConstructionConfig, random_targets
from .dispatch import build_pair, choose_case, extend_construction
from .precision import DualPoint, PrecisionSpec, Sampling, random_spec, trivial_spec
from .result import ConstructionResult, Pair, WitnessReport, check_invariants
from .witness import non_i0_witness, pair_report

__all__ = [
    "ConstructionConfig", "ConstructionResult", "DualPoint", "Independence", "Pair", "PrecisionSpec",
    "Sampling", "WitnessReport", "build_case1_cpinf", "build_case1_q", "build_case2", "build_pair",
    "check_invariants", "choose_case", "cluster_sequence", "empirical_cluster_set", "extend_construction",
    "find_cluster_element", "independence_check", "is_small", "non_i0_witness", "pair_report",
    "random_spec", "random_targets", "trivial_spec",
]
