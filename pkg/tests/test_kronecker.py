import random
from dataclasses import replace
from fractions import Fraction as Fr

import pytest

from sidonpairs.characters import LadderCharacter, LevelCharacter, ladder_extend
from sidonpairs.errors import (
    IndexCollision,
    InvalidConfig,
    LadderGapViolated,
    NotInjective,
    OrderTooSmall,
    RatioTooSmall,
    ResidualNotFixed,
)
from sidonpairs.exact import UnitAngle, chord_length, circular_distance
from sidonpairs.groups import AmbientGroup, Factor
from sidonpairs.kronecker import (
    epsilon_q,
    epsilon_q_chord,
    hadamard_interpolate,
    ladder_interpolate,
    product_interpolate,
)
from sidonpairs.oracle import TorusGrid, brute_force_minimax


def test_epsilon_q_values():
    assert epsilon_q(2) == Fr(1, 4)
    assert epsilon_q(3) == Fr(1, 6)
    assert epsilon_q(4) == Fr(1, 8)
    assert epsilon_q_chord(2) == pytest.approx(2**0.5, abs=1e-12)
    with pytest.raises(InvalidConfig):
        epsilon_q(1)


def test_hadamard_identity_targets():
    c = hadamard_interpolate([3, 9, 27], [0, 0, 0])
    assert c.witness.x == UnitAngle(0)
    assert c.achieved == (0, 0, 0)


def test_hadamard_half_targets_ratio_four():
    c = hadamard_interpolate([4, 16, 64], [Fr(1, 2)] * 3, 4)
    assert c.bound == Fr(1, 6) and not c.strict
    assert c.ok()
    # frozen from the first verified run
    assert c.witness.x == UnitAngle(Fr(11, 128))
    # the optimum found by exhaustive search on 10^5 points is 1/10 (at x = 1/10)
    r = brute_force_minimax([4, 16, 64], [Fr(1, 2)] * 3, TorusGrid(10**5))
    assert r.max_error == Fr(1, 10)
    assert r.max_error <= c.bound


def test_hadamard_random_targets_within_quarter_turn():
    rng = random.Random(5)
    ns = [3**j for j in range(1, 7)]
    for _ in range(20):
        targets = [Fr(rng.randrange(97), 97) for _ in ns]
        c = hadamard_interpolate(ns, targets, 3)
        assert c.ok() and c.max_error <= Fr(1, 4)
        r = brute_force_minimax(ns, targets, TorusGrid(2**14, extra=(c.witness.x,)))
        assert not r.contradicts(c)


def test_hadamard_negative_terms():
    c = hadamard_interpolate([-3, 9, -27], [Fr(1, 5), Fr(2, 5), Fr(3, 5)], 3)
    assert c.ok()


def test_hadamard_ratio_checks():
    with pytest.raises(RatioTooSmall):
        hadamard_interpolate([1, 2, 4], [0, 0, 0])
    with pytest.raises(RatioTooSmall):
        hadamard_interpolate([1, 3, 8], [0, 0, 0], 3)


def test_certificate_detects_tampering():
    c = hadamard_interpolate([3, 9, 27], [Fr(1, 3), 0, Fr(1, 2)])
    bad = replace(c, targets=(c.targets[0] + UnitAngle(Fr(1, 2)),) + c.targets[1:])
    problems = bad.verify()
    assert problems and problems[0].position == 0 and problems[0].element == 3


def test_ladder_single_stage_is_nearest_root():
    lr = ladder_interpolate([Fr(1, 7)], [Fr(1, 2)], [Fr(1, 3)], 3)
    st = lr.trace[0]
    assert (st.level_before, st.z, st.K) == (2, 7, 1)
    assert lr.character.top == (14, UnitAngle(Fr(1, 7)))
    assert lr.shifted.achieved == (Fr(1, 21),)
    # enumerate every admissible choice at the stage: the chosen one is closest
    base = LadderCharacter(((1, 0), (2, 0)))
    errs = [circular_distance(ladder_extend(base, 14, K).evaluate(Fr(1, 7) + Fr(1, 2)), UnitAngle(Fr(1, 3)))
            for K in range(7)]
    assert min(errs) == errs[1] == Fr(1, 21) < Fr(1, 6)


def test_ladder_targets_on_coset_hit_exactly():
    lam, s = [Fr(1, 7), Fr(1, 127)], [Fr(1, 2), Fr(1, 3)]
    first = ladder_interpolate(lam, s, [0, 0], 3)
    exact = [first.character.evaluate(v + w) for v, w in zip(lam, s)]
    again = ladder_interpolate(lam, s, exact, 3)
    assert again.shifted.achieved == (0, 0)


def test_ladder_gap_and_injectivity():
    with pytest.raises(LadderGapViolated) as err:
        ladder_interpolate([Fr(1, 4)], [Fr(1, 2)], [0], 3)
    assert err.value.stage == 1
    with pytest.raises(NotInjective):
        ladder_interpolate([Fr(1, 7), Fr(1, 7)], [Fr(1, 2), Fr(1, 2)], [0, 0], 3)


def test_ladder_prime_levels():
    lr = ladder_interpolate([Fr(1, 16), Fr(1, 1024)], [Fr(1, 2), Fr(1, 4)], [Fr(1, 3), Fr(2, 3)], 3, prime=2)
    assert isinstance(lr.character, LevelCharacter)
    assert all(L & (L - 1) == 0 for L in lr.character.levels)
    assert lr.shifted.max_error < Fr(1, 6)


def test_product_order_two_tie_goes_down():
    A = AmbientGroup.direct_sum(Factor.cyclic(2))
    c = product_interpolate([A.basis(0)], [0], [Fr(1, 4)], 2)
    assert c.achieved == (Fr(1, 4),) and c.bound == Fr(1, 4) and not c.strict
    assert c.witness.evaluate(A.basis(0)) == UnitAngle(0)


def test_product_exact_cases():
    A3 = AmbientGroup.direct_sum(Factor.cyclic(3))
    assert product_interpolate([A3.basis(0)], [0], [0], 3).achieved == (0,)
    Q = AmbientGroup.direct_sum(Factor.rationals())
    c = product_interpolate([Q.element({0: Fr(5, 3)})], [0], [Fr(2, 7)])
    assert c.achieved == (0,)


def test_product_residual_rules():
    A = AmbientGroup.direct_sum(Factor.cyclic(3))
    e0, e1 = A.basis(0), A.basis(1)
    c = product_interpolate([e0, e1 + e0], [0, 1], [Fr(1, 3), Fr(1, 2)], 3)
    assert c.ok() and c.max_error <= Fr(1, 6)
    with pytest.raises(ResidualNotFixed):
        product_interpolate([e0 + e1, e1], [0, 1], [0, 0], 3)
    with pytest.raises(IndexCollision):
        product_interpolate([e0, e0 * 2], [0, 0], [0, 0], 3)
    with pytest.raises(OrderTooSmall):
        product_interpolate([AmbientGroup.direct_sum(Factor.cyclic(2)).basis(0)], [0], [0], 3)


def test_chord_of_bounds():
    assert chord_length(epsilon_q(3)) == pytest.approx(1.0, abs=1e-15)
