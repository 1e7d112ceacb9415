"""Pairs built from a single factor with infinite image.

Let ``alpha`` be a coordinate where ``pi_alpha(F)`` is infinite and the
factor is Q or C(p^inf).  The differences ``chi_n`` come from the cluster
search; the work is choosing ``lambda_n in pi_alpha(F)`` so that both
``V = {lambda_n}`` and ``V' = {lambda_n + s_n}`` (``s_n = pi_alpha(chi_n)``)
interpolate, and so that no value of V or V' repeats across the two sets:

* bounded denominators (Q only): after scaling by the lcm ``B`` of the
  denominators, V and V' are Hadamard sets of ratio ``q`` in Z;
* unbounded denominators: each ``D(lambda_n)`` exceeds ``q`` times the
  current ladder level, and ladder characters interpolate.

A character of the factor composed with the projection is a character of
the whole group, so the certificates are stated for the elements of E and
E' themselves.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..characters import ProductCharacter, TorusPoint
from ..errors import AmbientMismatch, BudgetExhausted, ConditionBViolated, ImageFinite, InvalidConfig, ProbeInconclusive
from ..groups import PRUFER, RATIONALS, ElementStream
from ..kronecker import certify, epsilon_q, hadamard_interpolate, ladder_interpolate
from .cluster import cluster_sequence
from .config import ConstructionConfig, random_targets
from .probe import FINITE, INFINITE, probe_denominators, probe_image
from .result import ConstructionResult, Pair


def _distinct_from(lam, lam_s, chosen, norm) -> int | None:
    """Index (1-based) of an earlier stage that ``(lam, lam + s)`` collides with."""
    for m, (l2, l2s) in enumerate(chosen, start=1):
        if lam == l2 or lam == norm(l2s) or norm(lam_s) == norm(l2s) or norm(lam_s) == l2:
            return m
    return None


def _check_image(F: ElementStream, alpha: int, config: ConstructionConfig) -> dict:
    probe = probe_image(F, alpha, config.probe_budget)
    if probe.status == FINITE:
        raise ImageFinite(f"the projection of F to index {alpha} looks finite ({probe.distinct} values)")
    if probe.status != INFINITE and config.infinite_index != alpha:
        raise ProbeInconclusive(
            f"cannot tell whether the projection to index {alpha} is infinite; "
            "raise probe_budget or assert infinite_index"
        )
    return probe.to_dict()


def _select_bounded(prefix, alpha, shifts, q):
    chosen, picks = [], []
    for n, s in enumerate(shifts, start=1):
        for k, f in enumerate(prefix):
            lam = f.coordinate(alpha)
            lam_s = lam + s
            if lam == 0 or lam_s == 0:
                continue
            if chosen:
                pl, pls = chosen[-1]
                if abs(lam) < q * abs(pl) or abs(lam_s) < q * abs(pls):
                    continue
            if _distinct_from(lam, lam_s, chosen, lambda v: v) is not None:
                continue
            chosen.append((lam, lam_s))
            picks.append(k)
            break
        else:
            raise BudgetExhausted(f"stage {n}: no element of F meets the Hadamard ratio {q}")
    return chosen, picks


def _select_unbounded(prefix, alpha, shifts, q, norm):
    L = shifts[0].denominator
    chosen, picks = [], []
    for n, s in enumerate(shifts, start=1):
        for k, f in enumerate(prefix):
            lam = f.coordinate(alpha)
            if lam.denominator <= q * L:
                continue
            if _distinct_from(lam, lam + s, chosen, norm) is not None:
                continue
            chosen.append((lam, lam + s))
            picks.append(k)
            break
        else:
            raise BudgetExhausted(f"stage {n}: no element of F has denominator above {q} * {L}")
        nxt = shifts[n].denominator if n < len(shifts) else 1
        L = math.lcm(L, lam.denominator, nxt)
    return chosen, picks


def _build(F: ElementStream, alpha: int, config: ConstructionConfig, case: str) -> ConstructionResult:
    ambient = F.ambient
    factor = ambient.factor(alpha)
    want = RATIONALS if case == "case1_q" else PRUFER
    if factor.kind != want:
        raise AmbientMismatch(f"index {alpha} carries {factor}, not the factor this case needs")
    q = config.q
    probe = _check_image(F, alpha, config)
    if case == "case1_q":
        branch = config.branch if config.branch != "auto" else probe_denominators(F, alpha, config.probe_budget)
    else:
        if config.branch == "bounded":
            raise InvalidConfig("C(p^inf) images are unbounded; the bounded branch does not apply")
        branch = "unbounded"

    diffs = cluster_sequence(F, config.rounds, config.seed, config.sampling, config.difference_budget)
    shifts = [d.element.coordinate(alpha) for d in diffs]
    prefix = F.prefix()
    N = config.rounds
    tE = random_targets(N, config.seed, "E", config.target_denominator)
    tEp = random_targets(N, config.seed, "Eprime", config.target_denominator)

    if branch == "bounded":
        if q < 3:
            raise InvalidConfig("the Hadamard branch needs q >= 3")
        chosen, picks = _select_bounded(prefix, alpha, shifts, q)
        B = 1
        for lam, lam_s in chosen:
            B = math.lcm(B, lam.denominator, lam_s.denominator)
        cV = hadamard_interpolate([int(lam * B) for lam, _ in chosen], tE, q)
        cVp = hadamard_interpolate([int(ls * B) for _, ls in chosen], tEp, q)
        gE, gEp = TorusPoint(cV.witness.x, B), TorusPoint(cVp.witness.x, B)
        bound, strict = Fraction(1, 2 * (q - 1)), False
        detail = {"scale": B, "ratio": q}
    else:
        if q < 3:
            raise InvalidConfig("the ladder branch needs q >= 3")
        chosen, picks = _select_unbounded(prefix, alpha, shifts, q, factor.normalize)
        lr = ladder_interpolate([lam for lam, _ in chosen], shifts, tEp, q, targets_plain=tE,
                                prime=factor.modulus if factor.kind == PRUFER else None)
        gE, gEp = lr.plain.witness, lr.character
        bound, strict = epsilon_q(q), True
        detail = {
            "levels": list(lr.character.levels),
            "levels_plain": list(lr.plain.witness.levels),
            "stages": [{"n": st.n, "level_before": st.level_before, "denominator": st.denominator,
                        "z": st.z, "J": st.J, "K": st.K} for st in lr.trace],
        }

    pairs = tuple(
        Pair(n, prefix[k], d.element, k, (d.i, d.j))
        for n, (k, d) in enumerate(zip(picks, diffs), start=1)
    )
    E = [p.gamma for p in pairs]
    Ep = [p.gamma_prime for p in pairs]
    for n in range(N):
        for m in range(N):
            if n != m and (E[n] == E[m] or E[n] == Ep[m] or Ep[n] == Ep[m]):
                raise ConditionBViolated(n + 1, m + 1)
    cert_E = certify(E, tE, ProductCharacter(((alpha, gE),)), bound, strict, label="E")
    cert_Ep = certify(Ep, tEp, ProductCharacter(((alpha, gEp),)), bound, strict, label="Eprime")
    provenance = {
        "case": case,
        "index": alpha,
        "factor": str(factor),
        "branch": branch,
        "q": q,
        "bound": bound,
        "strict": strict,
        "seed": config.seed,
        "rounds": N,
        "probe": probe,
        "cluster_specs": [f"{config.seed}:H:{n}" for n in range(1, N + 1)],
        "pullback": "first element of F in stream order",
        "certificates": "character of the factor at index composed with the projection",
        "branch_detail": detail,
    }
    return ConstructionResult(ambient, case, branch, q, bound, strict, pairs, cert_E, cert_Ep, provenance, F)


def build_case1_q(F: ElementStream, alpha: int, config: ConstructionConfig = ConstructionConfig()) -> ConstructionResult:
    """Case of a Q factor with infinite image, bounded or unbounded denominators."""
    return _build(F, alpha, config, "case1_q")


def build_case1_cpinf(F: ElementStream, alpha: int, config: ConstructionConfig = ConstructionConfig()) -> ConstructionResult:
    """Case of a C(p^inf) factor with infinite image: always the ladder, with p-power levels."""
    return _build(F, alpha, config, "case1_cpinf")
