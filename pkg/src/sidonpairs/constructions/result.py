"""Construction outputs and their structural checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..exact import HALF, UnitAngle
from ..groups import AmbientGroup, ElementStream, GroupElement
from ..kronecker import KroneckerCertificate
from .precision import PrecisionSpec

MAX_BOUND = Fraction(1, 4)  # chord sqrt(2)


@dataclass(frozen=True)
class Pair:
    """Stage ``n``: ``gamma`` in F, ``chi = f_i - f_j``, ``gamma + chi`` in F+F-F."""

    n: int
    gamma: GroupElement
    chi: GroupElement
    gamma_index: int
    chi_indices: tuple[int, int]

    @property
    def gamma_prime(self) -> GroupElement:
        return self.gamma + self.chi

    @property
    def triple(self) -> tuple[int, int, int]:
        """Stream indices ``(k1, k2, k3)`` with ``gamma' = f_k1 + f_k2 - f_k3``."""
        return (self.gamma_index, self.chi_indices[0], self.chi_indices[1])


@dataclass(frozen=True)
class ConstructionResult:
    ambient: AmbientGroup
    case: str
    branch: str
    q: int
    bound: Fraction
    strict: bool
    pairs: tuple[Pair, ...]
    cert_E: KroneckerCertificate
    cert_Eprime: KroneckerCertificate
    provenance: dict = field(default_factory=dict)
    stream: ElementStream | None = field(default=None, compare=False, repr=False)

    @property
    def E(self) -> list[GroupElement]:
        return [p.gamma for p in self.pairs]

    @property
    def Eprime(self) -> list[GroupElement]:
        return [p.gamma_prime for p in self.pairs]

    @property
    def chis(self) -> list[GroupElement]:
        return [p.chi for p in self.pairs]


@dataclass(frozen=True)
class WitnessReport:
    precision: PrecisionSpec
    n: int
    gamma: GroupElement
    gamma_prime: GroupElement
    values: tuple[tuple[UnitAngle, UnitAngle], ...]
    distances: tuple[Fraction, ...]
    all_below: bool


def check_invariants(result: ConstructionResult, stream: ElementStream | None = None) -> list[str]:
    """Every structural claim about a result, checked exactly.

    Returns human-readable problems; an empty list means all hold.  With a
    stream the membership witnesses ``gamma in F`` and ``chi = f_i - f_j``
    are re-derived from it too.
    """
    problems = []
    E, Ep = result.E, result.Eprime
    if len(set(E)) != len(E):
        problems.append("E has repeated terms")
    if len(set(Ep)) != len(Ep):
        problems.append("E' has repeated terms")
    if set(E) & set(Ep):
        problems.append("E and E' intersect")
    for p in result.pairs:
        if p.chi.is_zero():
            problems.append(f"chi_{p.n} is zero")
    if not 0 < result.bound <= MAX_BOUND:
        problems.append(f"bound {result.bound} is not in (0, 1/4]")
    if result.bound > HALF:
        problems.append("bound outside [0, 1/2]")
    for name, cert, elems in (("E", result.cert_E, E), ("E'", result.cert_Eprime, Ep)):
        if list(cert.elements) != list(elems):
            problems.append(f"certificate for {name} covers other elements")
        if cert.bound != result.bound or cert.strict != result.strict:
            problems.append(f"certificate for {name} states another bound")
        for v in cert.verify():
            problems.append(f"certificate for {name}, position {v.position + 1}: {v.reason}")
    stream = stream or result.stream
    if stream is not None:
        for p in result.pairs:
            if stream.get(p.gamma_index) != p.gamma:
                problems.append(f"gamma_{p.n} is not f_{p.gamma_index}")
            i, j = p.chi_indices
            if stream.get(i) - stream.get(j) != p.chi:
                problems.append(f"chi_{p.n} is not f_{i} - f_{j}")
    if result.case in ("case1_q", "case1_cpinf"):
        problems += _condition_b(result)
    elif result.case == "case2":
        problems += _vanishing(result)
    return problems


def _condition_b(result: ConstructionResult) -> list[str]:
    a = result.provenance["index"]
    lam = [p.gamma.coordinate(a) for p in result.pairs]
    sh = [p.chi.coordinate(a) for p in result.pairs]
    f = result.ambient.factor(a)
    norm = f.normalize
    out = []
    for n in range(len(lam)):
        for k in range(len(lam)):
            if n == k:
                continue
            if lam[n] == lam[k]:
                out.append(f"condition (b): lambda_{n + 1} = lambda_{k + 1}")
            if lam[n] == norm(lam[k] + sh[k]):
                out.append(f"condition (b): lambda_{n + 1} = lambda_{k + 1} + s_{k + 1}")
            if norm(lam[n] + sh[n]) == norm(lam[k] + sh[k]):
                out.append(f"condition (b): lambda_{n + 1} + s_{n + 1} = lambda_{k + 1} + s_{k + 1}")
    return out


def _vanishing(result: ConstructionResult) -> list[str]:
    betas = result.provenance["indices"]
    out = []
    for n, b in enumerate(betas):
        if result.pairs[n].gamma.coordinate(b) == 0:
            out.append(f"lambda_{n + 1} vanishes at its index {b}")
        for m, p in enumerate(result.pairs):
            if m <= n and p.chi.coordinate(b) != 0:
                out.append(f"chi_{m + 1} is nonzero at beta_{n + 1} = {b}")
            if m < n and p.gamma.coordinate(b) != 0:
                out.append(f"lambda_{m + 1} is nonzero at beta_{n + 1} = {b}")
    return out
