"""Kronecker interpolation engines and their certificates.

A set E is weak eps-Kronecker when every target function ``phi: E -> T`` is
matched within eps by a single character.  The engines here build that
character constructively for three kinds of dual:

* :func:`hadamard_interpolate` -- Hadamard sequences in Z, nested intervals
  on the circle;
* :func:`ladder_interpolate` -- subgroups of Q (or Q/Z) with fast-growing
  denominators, one ladder rung per stage;
* :func:`product_interpolate` -- elements living on distinct coordinates of a
  direct sum, one component per coordinate.

Each returns a :class:`KroneckerCertificate`, which re-verifies by exact
rational comparisons.  Bounds are circular distances in turns; the chordal
eps equals ``2 sin(pi * bound)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple, Sequence

from .characters import LadderCharacter, LevelCharacter, ProductCharacter, TorusPoint
from .errors import (
    IndexCollision,
    InvalidConfig,
    LadderGapViolated,
    NotInjective,
    OrderTooSmall,
    RatioTooSmall,
    ResidualNotFixed,
)
from .exact import UnitAngle, chord_length, circular_distance, rational
from .groups import CYCLIC, PRUFER, GroupElement


def epsilon_q(q: int) -> Fraction:
    """Turn-domain form of ``|exp(i pi/q) - 1|``: the circular distance ``1/(2q)``."""
    if not isinstance(q, int) or q < 2:
        raise InvalidConfig("epsilon_q needs an integer q >= 2")
    return Fraction(1, 2 * q)


def epsilon_q_chord(q: int) -> float:
    return chord_length(epsilon_q(q))


class Violation(NamedTuple):
    position: int
    element: Any
    target: UnitAngle
    value: UnitAngle | None
    distance: Fraction | None
    reason: str


@dataclass(frozen=True)
class KroneckerCertificate:
    """A witness character together with the targets it matches.

    ``elements`` are rationals (a single factor) or group elements; the
    witness must evaluate them.  ``achieved`` stores the claimed circular
    errors so that tampering with either side is caught by :meth:`verify`.
    """

    elements: tuple
    targets: tuple[UnitAngle, ...]
    witness: Any
    bound: Fraction
    strict: bool
    achieved: tuple[Fraction, ...]
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def max_error(self) -> Fraction:
        return max(self.achieved, default=Fraction(0))

    @property
    def chord_bound(self) -> float:
        return chord_length(self.bound)

    def verify(self) -> list[Violation]:
        """Exact re-check; an empty list means the certificate holds."""
        out = []
        if not (len(self.elements) == len(self.targets) == len(self.achieved)):
            out.append(Violation(-1, None, UnitAngle(0), None, None, "length mismatch"))
            return out
        seen = set()
        for k, (x, t, claimed) in enumerate(zip(self.elements, self.targets, self.achieved)):
            if x in seen:
                out.append(Violation(k, x, t, None, None, "repeated element"))
            seen.add(x)
            try:
                v = self.witness.evaluate(x)
            except Exception as exc:  # noqa: BLE001 - any evaluation failure is a violation
                out.append(Violation(k, x, t, None, None, f"witness cannot evaluate: {exc}"))
                continue
            d = circular_distance(v, t)
            if d != claimed:
                out.append(Violation(k, x, t, v, d, f"claimed error {claimed} but found {d}"))
            ok = d < self.bound if self.strict else d <= self.bound
            if not ok:
                rel = "<" if self.strict else "<="
                out.append(Violation(k, x, t, v, d, f"error {d} violates {rel} {self.bound}"))
        return out

    def ok(self) -> bool:
        return not self.verify()


def certify(elements, targets, witness, bound, strict, label="", meta=None) -> KroneckerCertificate:
    elements = tuple(elements)
    targets = tuple(t if isinstance(t, UnitAngle) else UnitAngle(t) for t in targets)
    achieved = tuple(circular_distance(witness.evaluate(x), t) for x, t in zip(elements, targets))
    cert = KroneckerCertificate(elements, targets, witness, rational(bound), strict, achieved, label, meta or {})
    bad = cert.verify()
    if bad:
        raise AssertionError(f"construction produced an invalid certificate: {bad[0].reason}")
    return cert


def _angles(targets) -> list[UnitAngle]:
    return [t if isinstance(t, UnitAngle) else UnitAngle(t) for t in targets]


def _nearest_on_coset(base: Fraction, z: int, goal: Fraction) -> int:
    """``k`` in ``[0, z)`` minimising the circular distance of ``base + k/z`` to ``goal``.

    Ties go to the candidate with the smaller angle.
    """
    r = (goal - base) * z
    k0 = math.floor(r)
    best = None
    for k in (k0 % z, (k0 + 1) % z):
        val = UnitAngle(base + Fraction(k, z))
        key = (circular_distance(val, goal), val.turns)
        if best is None or key < best[0]:
            best = (key, k)
    return best[1]


# -- Hadamard sets -----------------------------------------------------------


def hadamard_ratio(ns: Sequence[int]) -> Fraction | None:
    """``min |n_{j+1}| / |n_j|``; None for fewer than two terms."""
    if len(ns) < 2:
        return None
    return min(Fraction(abs(b), abs(a)) for a, b in zip(ns, ns[1:]))


def hadamard_interpolate(ns: Sequence[int], targets, q=None) -> KroneckerCertificate:
    """Interpolate ``targets`` on a Hadamard set by a torus point.

    With ratio at least ``q > 2`` and margin ``c = 1/(q-1)``, the point ``x``
    is trapped in nested intervals: at step ``j`` the image ``n_j I_{j-1}``
    has length at least ``1 + c``, so it holds a ``c``-arc centred on a
    solution of ``n_j x = t_j (mod 1)``; ``I_j`` is that arc's preimage.
    Every error is at most ``c/2 = 1/(2(q-1))`` turns.  Negative terms are
    handled through ``g(-n) = -g(n)``.
    """
    ns = [int(n) for n in ns]
    targets = _angles(targets)
    if len(ns) != len(targets):
        raise InvalidConfig("one target per element")
    if not ns:
        raise InvalidConfig("empty set")
    if any(n == 0 for n in ns):
        raise InvalidConfig("Hadamard terms must be nonzero")
    ratio = hadamard_ratio(ns)
    if q is None:
        q = ratio if ratio is not None else Fraction(3)
    q = rational(q)
    if q <= 2:
        raise RatioTooSmall(f"ratio {q} is not > 2")
    if ratio is not None and ratio < q:
        raise RatioTooSmall(f"Hadamard ratio {ratio} is below the requested {q}")

    c = 1 / (q - 1)
    half = c / 2
    lo = hi = None
    for n, t in zip(ns, targets):
        tt = t.turns
        if n < 0:
            n, tt = -n, -tt
        if lo is None:
            y = tt
        else:
            y = tt + math.ceil(n * lo + half - tt)
            assert y + half <= n * hi, "nested interval lost its solution"
        lo, hi = (y - half) / n, (y + half) / n
    x = UnitAngle((lo + hi) / 2)
    return certify(
        [Fraction(n) for n in ns], targets, TorusPoint(x), half, strict=False,
        label="hadamard", meta={"q": q},
    )


# -- ladders on subgroups of Q -----------------------------------------------


class LadderStage(NamedTuple):
    n: int
    level_before: int
    denominator: int
    z: int
    J: int
    K: int
    shift_value: UnitAngle
    goal: UnitAngle
    value: UnitAngle
    error: Fraction


@dataclass(frozen=True)
class LadderResult:
    shifted: KroneckerCertificate
    plain: KroneckerCertificate
    character: LadderCharacter
    trace: tuple[LadderStage, ...]
    plain_trace: tuple[LadderStage, ...]


def _ladder_pass(lambdas, shifts, targets, q, prime):
    N = len(lambdas)
    L_prev = rational(shifts[0]).denominator
    g = LevelCharacter(prime=prime) if prime else LadderCharacter()
    g = g.extend(L_prev, 0)
    trace = []
    for n in range(N):
        lam = lambdas[n]
        s, t = lam.numerator, lam.denominator
        if not t > q * L_prev:
            raise LadderGapViolated(
                n + 1, f"stage {n + 1}: D(lambda) = {t} is not > {q} * {L_prev}"
            )
        shift_val = g.evaluate(shifts[n])
        nxt = rational(shifts[n + 1]).denominator if n + 1 < N else 1
        L_new = math.lcm(L_prev, t, nxt)
        J = L_new // L_prev
        gcd = math.gcd(L_prev, t)
        y, z = L_prev // gcd, t // gcd
        goal = targets[n] - shift_val
        a_prev = g.top[1].turns
        base = s * y * a_prev / z
        k = _nearest_on_coset(base, z, goal.turns)
        K = (k * pow(s * y % z, -1, z)) % z
        g = g.extend(L_new, K)
        value = g.evaluate(lam)
        assert value == UnitAngle(base + Fraction(k, z))
        err = circular_distance(value + shift_val, targets[n])
        trace.append(LadderStage(n + 1, L_prev, t, z, J, K, shift_val, goal, value, err))
        L_prev = L_new
    return g, tuple(trace)


def ladder_interpolate(lambdas, shifts, targets, q: int, targets_plain=None, prime: int | None = None) -> LadderResult:
    """Build ladder characters matching ``targets`` on ``V' = {lambda_n + s_n}``.

    Stage ``n`` needs ``D(lambda_n) > q L_{n-1}`` where ``L_{n-1}`` is the
    lcm of the denominators of ``lambda_1..lambda_{n-1}`` and
    ``s_1..s_n``.  The shift value ``g(s_n)`` is then already fixed, and the
    new rung offers ``z > q`` equally spaced values for ``g(lambda_n)``; the
    one nearest ``t_n - g(s_n)`` is taken, so every error is below
    ``1/(2q)`` turns.  The set V itself is handled by the same pass with zero
    shifts (against ``targets_plain``, default ``targets``).
    """
    lambdas = [rational(v) for v in lambdas]
    shifts = [rational(v) for v in shifts]
    targets = _angles(targets)
    targets_plain = _angles(targets_plain) if targets_plain is not None else targets
    if not (len(lambdas) == len(shifts) == len(targets) == len(targets_plain)):
        raise InvalidConfig("lambdas, shifts and targets must have equal length")
    if not lambdas:
        raise InvalidConfig("empty set")
    if not isinstance(q, int) or q < 3:
        raise InvalidConfig("ladder interpolation needs an integer q >= 3")
    shifted = [lam + s for lam, s in zip(lambdas, shifts)]
    if len(set(lambdas)) != len(lambdas) or len(set(shifted)) != len(shifted):
        raise NotInjective("repeated element in V or V'")

    g, trace = _ladder_pass(lambdas, shifts, targets, q, prime)
    g0, trace0 = _ladder_pass(lambdas, [Fraction(0)] * len(lambdas), targets_plain, q, prime)
    bound = epsilon_q(q)
    cert_shifted = certify(shifted, targets, g, bound, strict=True, label="ladder-shifted", meta={"q": q})
    cert_plain = certify(lambdas, targets_plain, g0, bound, strict=True, label="ladder", meta={"q": q})
    return LadderResult(cert_shifted, cert_plain, g, trace, trace0)


# -- products over distinct coordinates --------------------------------------


def coordinate_levels(elements: Sequence[GroupElement], indices) -> dict[int, int]:
    """Per index: the level a component must cover for every element."""
    levels = {}
    for b in indices:
        L = 1
        for x in elements:
            L = math.lcm(L, x.coordinate(b).denominator)
        f = elements[0].ambient.factor(b) if elements else None
        if f is not None and f.kind == CYCLIC:
            L = math.lcm(L, f.modulus)
        levels[b] = L
    return levels


def product_interpolate(elements: Sequence[GroupElement], indices: Sequence[int], targets, q: int | None = None,
                        levels: dict[int, int] | None = None) -> KroneckerCertificate:
    """Match targets on elements carried by distinct coordinates.

    Element ``n`` has a nonzero coordinate at ``indices[n]`` and its other
    coordinates among ``indices`` must sit at earlier ones (the residual).
    The component at ``indices[n]`` puts ``g`` of that coordinate on the
    root-of-unity coset point nearest ``t_n - g(residual)``, an error of at
    most ``1/(2M_n)`` for a coordinate of order ``M_n``; a coordinate of
    infinite order is hit exactly.  Coordinates off ``indices`` are ignored
    (the character is trivial there).
    """
    elements = list(elements)
    indices = [int(b) for b in indices]
    targets = _angles(targets)
    if not (len(elements) == len(indices) == len(targets)):
        raise InvalidConfig("one index and one target per element")
    if not elements:
        raise InvalidConfig("empty set")
    if len(set(indices)) != len(indices):
        raise IndexCollision("the coordinate indices must be distinct")
    ambient = elements[0].ambient
    lv = coordinate_levels(elements, indices)
    if levels:
        lv.update(levels)
    used = set(indices)
    fixed: set[int] = set()
    g = ProductCharacter()
    orders = []
    for n, (x, b, t) in enumerate(zip(elements, indices, targets)):
        c = x.coordinate(b)
        if c == 0:
            raise InvalidConfig(f"element {n + 1} vanishes at its index {b}")
        residual = x.restrict(used - {b})
        if not set(residual.indices) <= fixed:
            raise ResidualNotFixed(f"element {n + 1} has coordinates at later indices {sorted(set(residual.indices) - fixed)}")
        goal = t - g.evaluate(residual)
        f = ambient.factor(b)
        L = lv[b]
        if f.is_torsion:
            M = c.denominator
            if L % M:
                raise InvalidConfig(f"level {L} at index {b} does not cover {c}")
            j = _nearest_on_coset(Fraction(0), M, goal.turns)
            k = (j * pow(c.numerator % M, -1, M)) % M if M > 1 else 0
            a = Fraction(k, L)
            rungs = ((1, UnitAngle(0)), (L, UnitAngle(a)))
            comp = LevelCharacter(rungs, f.modulus) if f.kind == PRUFER else LadderCharacter(rungs)
            orders.append(M)
        else:
            n_int = c * L
            if n_int.denominator != 1:
                raise InvalidConfig(f"scale {L} at index {b} does not cover {c}")
            comp = TorusPoint(UnitAngle(goal.turns / n_int.numerator), L)
            orders.append(math.inf)
        g = g.with_component(b, comp)
        fixed.add(b)
    finite = [M for M in orders if M != math.inf]
    if q is None:
        q = min(finite) if finite else 3
    if finite and min(finite) < q:
        raise OrderTooSmall(f"a coordinate has order {min(finite)} < q = {q}")
    return certify(elements, targets, g, epsilon_q(q), strict=False, label="product",
                   meta={"q": q, "orders": orders})
