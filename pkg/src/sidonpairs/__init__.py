"""Kronecker pairs whose union is not I0.

Given an infinite subset F of a countable discrete abelian group (written as
a direct sum of copies of Q, C(p^inf) and Z(n)), build disjoint sets
``E`` in F and ``E'`` in ``F + F - F`` that are each weak Kronecker, with
exact interpolation certificates, and finite-scale witnesses that
``E u E'`` is not I0.
"""

from .characters import LadderCharacter, LevelCharacter, ProductCharacter, TorusPoint
from .constructions import (
    ConstructionConfig,
    ConstructionResult,
    PrecisionSpec,
    build_case1_cpinf,
    build_case1_q,
    build_case2,
    build_pair,
    check_invariants,
    find_cluster_element,
    independence_check,
    non_i0_witness,
    random_spec,
)
from .errors import SidonPairsError
from .exact import UnitAngle, chord_less_than, chord_within, circular_distance, rational
from .groups import AmbientGroup, ElementStream, Factor, GroupElement, difference_stream, triple_sum_contains
from .kronecker import KroneckerCertificate, epsilon_q, hadamard_interpolate, ladder_interpolate, product_interpolate
from .oracle import TorusGrid, brute_force_minimax

__version__ = "0.1.0"

__all__ = [
    "AmbientGroup", "ConstructionConfig", "ConstructionResult", "ElementStream", "Factor", "GroupElement",
    "KroneckerCertificate", "LadderCharacter", "LevelCharacter", "PrecisionSpec", "ProductCharacter",
    "SidonPairsError", "TorusGrid", "TorusPoint", "UnitAngle", "brute_force_minimax", "build_case1_cpinf",
    "build_case1_q", "build_case2", "build_pair", "check_invariants", "chord_less_than", "chord_within",
    "circular_distance", "difference_stream", "epsilon_q", "find_cluster_element", "hadamard_interpolate",
    "independence_check", "ladder_interpolate", "non_i0_witness", "product_interpolate", "random_spec",
    "rational", "triple_sum_contains",
]
