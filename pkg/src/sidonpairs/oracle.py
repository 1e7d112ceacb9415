"""Brute-force minimax oracle, independent of the constructive engines.

Given a finite set, target angles and a finite family of candidate
characters, the oracle finds the candidate minimising the worst circular
error.  Candidates are scanned with numpy (integer residues, float
distances); the winner's error is then recomputed exactly.  Ties go to the
lowest candidate index.

Search spaces:

* :class:`TorusGrid` -- ``x = k/size`` on the circle, acting on
  ``(1/scale) Z`` by ``v -> (scale v) x``, plus optional extra points;
* :class:`RootSpace` -- every character of ``(1/level) Z / Z``;
* :class:`ProductSpace` -- products of :class:`RootSpace` characters over
  finitely many coordinates of a direct sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .characters import LadderCharacter, ProductCharacter, TorusPoint
from .errors import InvalidConfig, LevelNotCovered, SearchBudget
from .exact import UnitAngle, circular_distance, rational
from .groups import GroupElement

DEFAULT_GRID = 2**20
DEFAULT_CAP = 2**24


@dataclass(frozen=True)
class TorusGrid:
    size: int = DEFAULT_GRID
    scale: int = 1
    extra: tuple[UnitAngle, ...] = ()

    @property
    def count(self) -> int:
        return self.size + len(self.extra)


@dataclass(frozen=True)
class RootSpace:
    level: int

    @property
    def count(self) -> int:
        return self.level


@dataclass(frozen=True)
class ProductSpace:
    levels: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return math.prod(L for _, L in self.levels)


@dataclass(frozen=True)
class OracleResult:
    witness: Any
    max_error: Fraction
    errors: tuple[Fraction, ...]
    candidates: int
    argmin: int

    def contradicts(self, certificate) -> bool:
        """True when a search space holding the certificate's witness finds
        nothing as good as the certified bound."""
        b = certificate.bound
        return not (self.max_error < b if certificate.strict else self.max_error <= b)

    def beats(self, certificate) -> bool:
        return self.max_error < certificate.max_error


def _circ(vals: np.ndarray) -> np.ndarray:
    d = np.mod(vals, 1.0)
    return np.minimum(d, 1.0 - d)


def _target_floats(targets):
    return [float(UnitAngle(t).turns if not isinstance(t, UnitAngle) else t.turns) for t in targets]


def _exact_errors(values, targets):
    return tuple(circular_distance(v, t) for v, t in zip(values, targets))


def brute_force_minimax(points, targets, space, cap: int = DEFAULT_CAP) -> OracleResult:
    """Exhaustively minimise ``max_j dist(g(points[j]), targets[j])`` over ``space``."""
    points = list(points)
    targets = [t if isinstance(t, UnitAngle) else UnitAngle(t) for t in targets]
    if len(points) != len(targets) or not points:
        raise InvalidConfig("need one target per point and at least one point")
    if space.count > cap:
        raise SearchBudget(f"search space of {space.count} candidates exceeds cap {cap}")
    if isinstance(space, TorusGrid):
        return _torus(points, targets, space)
    if isinstance(space, RootSpace):
        return _roots(points, targets, space)
    if isinstance(space, ProductSpace):
        return _product(points, targets, space)
    raise InvalidConfig(f"unknown search space {space!r}")


def _torus(points, targets, space: TorusGrid) -> OracleResult:
    N, B = space.size, space.scale
    ints = []
    for v in points:
        n = rational(v) * B
        if n.denominator != 1:
            raise LevelNotCovered(f"{v} is not in (1/{B})Z")
        ints.append(n.numerator)
    tf = _target_floats(targets)
    best_k, best_err = None, None
    if N > 0:
        # distances are measured in grid steps: |r - tN| folded at N/2
        k = np.arange(N, dtype=np.int64)
        r = np.empty(N, dtype=np.int64)
        d = np.empty(N)
        other = np.empty(N)
        worst = np.zeros(N)
        pow2 = N & (N - 1) == 0
        for n, t in zip(ints, tf):
            np.multiply(k, n % N, out=r)
            if pow2:
                np.bitwise_and(r, N - 1, out=r)
            else:
                np.remainder(r, N, out=r)
            np.subtract(r, t * N, out=d)
            np.abs(d, out=d)
            np.subtract(N, d, out=other)
            np.minimum(d, other, out=d)
            np.maximum(worst, d, out=worst)
        best_k = int(np.argmin(worst))
        x = UnitAngle(Fraction(best_k, N))
        errs = _exact_errors([UnitAngle(n * x.turns) for n in ints], targets)
        best_err = (max(errs), errs, x, best_k)
    for j, x in enumerate(space.extra):
        errs = _exact_errors([UnitAngle(n * x.turns) for n in ints], targets)
        if best_err is None or max(errs) < best_err[0]:
            best_err = (max(errs), errs, x, N + j)
    err, errs, x, idx = best_err
    return OracleResult(TorusPoint(x, B), err, errs, space.count, idx)


def _residues(points, level):
    out = []
    for v in points:
        v = rational(v)
        t = v.denominator
        if level % t:
            raise LevelNotCovered(f"{v} is not covered by level {level}")
        out.append((v.numerator * (level // t)) % level)
    return out


def _roots(points, targets, space: RootSpace) -> OracleResult:
    L = space.level
    res = _residues(points, L)
    tf = _target_floats(targets)
    k = np.arange(L, dtype=object if L > 2**31 else np.int64)
    worst = np.zeros(L)
    for w, t in zip(res, tf):
        r = (k * w) % L
        np.maximum(worst, _circ(np.asarray(r, dtype=float) / L - t), out=worst)
    best = int(np.argmin(worst))
    g = LadderCharacter(((1, UnitAngle(0)), (L, UnitAngle(Fraction(best, L))))) if L > 1 else LadderCharacter()
    errs = _exact_errors([g.evaluate(v) for v in points], targets)
    return OracleResult(g, max(errs), errs, L, best)


def _product(points, targets, space: ProductSpace) -> OracleResult:
    idx = [b for b, _ in space.levels]
    levels = [L for _, L in space.levels]
    Lc = math.lcm(*levels) if levels else 1
    T = space.count
    digits = np.unravel_index(np.arange(T, dtype=np.int64), levels) if levels else ()
    tf = _target_floats(targets)
    worst = np.zeros(T)
    for x, t in zip(points, tf):
        acc = np.zeros(T, dtype=np.int64)
        for b, L, kb in zip(idx, levels, digits):
            w = _residues([x.coordinate(b)], L)[0]
            acc = (acc + (kb * w % L) * (Lc // L)) % Lc
        np.maximum(worst, _circ(acc / Lc - t), out=worst)
    best = int(np.argmin(worst))
    choice = [int(d[best]) for d in digits]
    comps = tuple(
        (b, LadderCharacter(((1, UnitAngle(0)), (L, UnitAngle(Fraction(kb, L))))) if L > 1 else LadderCharacter())
        for b, L, kb in zip(idx, levels, choice)
    )
    g = ProductCharacter(comps)
    errs = _exact_errors([g.evaluate(x) for x in points], targets)
    return OracleResult(g, max(errs), errs, T, best)


def cross_check(certificate, result: OracleResult) -> dict:
    """Summary of how an oracle run compares with a certificate."""
    return {
        "certified_bound": certificate.bound,
        "certificate_max_error": certificate.max_error,
        "oracle_max_error": result.max_error,
        "contradiction": result.contradicts(certificate),
        "oracle_beats_certificate": result.beats(certificate),
    }


def space_for(certificate, grid: int = DEFAULT_GRID):
    """Points and a search space that contains the certificate's own witness.

    Returns ``(points, space)``; the witness is always among the candidates,
    so an exhaustive search can only match or improve on it.
    """
    g = certificate.witness
    elems = list(certificate.elements)
    if isinstance(g, TorusPoint) and not isinstance(elems[0], GroupElement):
        return elems, TorusGrid(grid, g.scale, (g.x,))
    if not isinstance(g, ProductCharacter):
        if isinstance(g, LadderCharacter):
            return elems, RootSpace(g.top[0])
        raise InvalidConfig(f"no oracle space for witness {g!r}")
    comps = g.components
    if len(comps) == 1:
        b, h = comps[0]
        pts = [x.coordinate(b) for x in elems]
        if isinstance(h, TorusPoint):
            return pts, TorusGrid(grid, h.scale, (h.x,))
        return pts, RootSpace(h.top[0])
    if all(isinstance(h, LadderCharacter) for _, h in comps):
        return elems, ProductSpace(tuple((b, h.top[0]) for b, h in comps))
    raise InvalidConfig("no oracle space for a product with torus components")
