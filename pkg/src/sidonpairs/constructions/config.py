from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

from ..errors import InvalidConfig
from ..exact import UnitAngle
from .precision import Sampling

BRANCHES = ("auto", "bounded", "unbounded")


@dataclass(frozen=True)
class ConstructionConfig:
    q: int = 3
    rounds: int = 4
    seed: int = 0
    probe_budget: int = 64
    difference_budget: int = 128
    sampling: Sampling = field(default_factory=Sampling)
    branch: str = "auto"
    infinite_index: int | None = None
    q_cap: int = 16
    target_denominator: int = 360
    independence_max_subset: int = 10

    def __post_init__(self):
        if not isinstance(self.rounds, int) or self.rounds < 1:
            raise InvalidConfig("rounds must be an integer >= 1")
        if not isinstance(self.q, int) or self.q < 2:
            raise InvalidConfig("q must be an integer >= 2")
        for name in ("probe_budget", "difference_budget", "q_cap", "target_denominator", "independence_max_subset"):
            if getattr(self, name) < 1:
                raise InvalidConfig(f"{name} must be >= 1")
        if self.branch not in BRANCHES:
            raise InvalidConfig(f"branch must be one of {BRANCHES}")

    def with_rounds(self, rounds: int) -> "ConstructionConfig":
        return replace(self, rounds=rounds)

    def to_dict(self) -> dict:
        return asdict(self)


def random_targets(count: int, seed, label: str, max_denominator: int = 360) -> list[UnitAngle]:
    """Seeded rational target angles; the ``n``-th depends only on ``(seed, label, n)``."""
    out = []
    for n in range(1, count + 1):
        rng = random.Random(f"targets:{seed}:{label}:{n}")
        d = rng.randint(1, max_denominator)
        out.append(UnitAngle(Fraction(rng.randrange(d), d)))
    return out
