"""Property-based checks of the algebra and of the interpolation engines."""

import math
from fractions import Fraction as Fr

import mpmath
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sidonpairs import serialize as ser
from sidonpairs.characters import LadderCharacter
from sidonpairs.constructions import independence_check
from sidonpairs.exact import UnitAngle, chord_less_than, circular_distance
from sidonpairs.groups import AmbientGroup, Factor, element_order
from sidonpairs.kronecker import hadamard_interpolate, ladder_interpolate, product_interpolate

MIXED = AmbientGroup(((0, Factor.rationals()), (1, Factor.prufer(2)), (2, Factor.cyclic(6))), Factor.cyclic(5))

fractions = st.fractions(max_denominator=60).map(Fr)
angles = st.builds(lambda n, d: UnitAngle(Fr(n, d)), st.integers(-500, 500), st.integers(1, 200))


@st.composite
def elements(draw):
    coords = {}
    if draw(st.booleans()):
        coords[0] = draw(fractions)
    if draw(st.booleans()):
        coords[1] = Fr(draw(st.integers(0, 63)), 2 ** draw(st.integers(0, 6)))
    if draw(st.booleans()):
        coords[2] = Fr(draw(st.integers(0, 5)), 6)
    for i in draw(st.lists(st.integers(3, 12), max_size=3)):
        coords[i] = Fr(draw(st.integers(0, 4)), 5)
    return MIXED.element(coords)


@given(elements(), elements(), elements())
def test_group_laws(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert (x - x).is_zero()
    assert x + MIXED.zero() == x
    assert -(-x) == x


@given(elements())
def test_order_annihilates(x):
    o = element_order(x)
    if o != math.inf:
        assert (x * int(o)).is_zero()
        for k in range(1, int(o)):
            if o % k == 0 and k < o:
                assert not (x * k).is_zero()


@given(angles, angles, angles)
def test_circular_distance_is_a_metric(a, b, c):
    d = circular_distance(a, b)
    assert 0 <= d <= Fr(1, 2)
    assert d == circular_distance(b, a)
    assert circular_distance(a, c) <= d + circular_distance(b, c)
    assert (d == 0) == (a == b)


@settings(max_examples=60)
@given(st.integers(0, 500), st.integers(1, 1000), st.integers(1, 199), st.integers(1, 100))
def test_chord_comparison_matches_high_precision(dn, dd, cn, cd):
    d = Fr(dn, dd)
    assume(d <= Fr(1, 2))
    c = Fr(cn, cd)
    mpmath.mp.dps = 50
    ref = 2 * mpmath.sin(mpmath.pi * mpmath.mpf(dn) / dd) < mpmath.mpf(cn) / cd
    assert chord_less_than(d, c) == bool(ref)


@given(st.lists(st.tuples(st.integers(2, 5), st.integers(0, 10**6)), min_size=1, max_size=5), fractions)
def test_ladder_extension_preserves_values(steps, x):
    g = LadderCharacter()
    for J, K in steps:
        before = g
        g = g.extend(g.top[0] * J, K % J)
        for L, a in before.rungs:
            assert g.evaluate(Fr(1, L)) == a
    t = x.denominator
    if g.top[0] % t == 0:
        vals = {g.value_at_rung(x, k) for k, (L, _) in enumerate(g.rungs) if L % t == 0}
        assert len(vals) == 1


@settings(max_examples=60)
@given(st.integers(3, 6), st.lists(st.integers(0, 10**4), min_size=1, max_size=8), st.randoms(use_true_random=False))
def test_hadamard_bound_holds(q, raw_targets, rnd):
    ns, n = [], rnd.randint(1, 5)
    for _ in raw_targets:
        ns.append(n * (1 if rnd.random() < 0.7 else -1))
        n = n * q + rnd.randint(0, 3)
    targets = [Fr(t, 10**4) for t in raw_targets]
    c = hadamard_interpolate(ns, targets, q)
    assert c.ok() and c.max_error <= Fr(1, 2 * (q - 1))


@settings(max_examples=40)
@given(st.integers(3, 5), st.lists(st.integers(0, 360), min_size=1, max_size=4),
       st.randoms(use_true_random=False))
def test_ladder_bound_holds(q, raw_targets, rnd):
    N = len(raw_targets)
    shifts = [Fr(rnd.randint(1, 5), rnd.randint(2, 9)) for _ in range(N)]
    lambdas, L = [], shifts[0].denominator
    for n in range(N):
        t = q * L + rnd.randint(1, 40)
        lam = Fr(rnd.randint(1, 3 * t), t)
        while lam.denominator <= q * L or lam in lambdas:
            t += 1
            lam = Fr(1, t)
        lambdas.append(lam)
        nxt = shifts[n + 1].denominator if n + 1 < N else 1
        L = math.lcm(L, lam.denominator, nxt)
    assume(len({a + b for a, b in zip(lambdas, shifts)}) == N)
    targets = [Fr(t, 360) for t in raw_targets]
    lr = ladder_interpolate(lambdas, shifts, targets, q)
    assert lr.shifted.ok() and lr.plain.ok()
    assert lr.shifted.max_error < Fr(1, 2 * q)
    g = lr.character
    for (L0, a0), (L1, a1) in zip(g.rungs, g.rungs[1:]):
        assert a1 * (L1 // L0) == a0


@given(st.integers(2, 7), st.lists(st.integers(0, 99), min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_product_bound_holds(M, raw_targets, rnd):
    A = AmbientGroup.direct_sum(Factor.cyclic(M))
    elems = []
    for n in range(len(raw_targets)):
        x = A.basis(n, rnd.randint(1, M - 1) if M > 2 else 1)
        for m in range(n):
            x = x + A.basis(m, rnd.randint(0, M - 1))
        elems.append(x)
    c = product_interpolate(elems, list(range(len(elems))), [Fr(t, 100) for t in raw_targets])
    assert c.ok()
    q = min(Fr(x.coordinate(n)).denominator for n, x in enumerate(elems))
    assert c.max_error <= Fr(1, 2 * q)


@given(st.integers(1, 8))
def test_generators_are_independent(n):
    A = AmbientGroup.direct_sum(Factor.cyclic(2))
    gens = [A.basis(i) for i in range(n)]
    assert independence_check(gens).independent
    if n >= 2:
        assert not independence_check(gens + [gens[0] + gens[-1]]).independent


@given(elements())
def test_element_json_round_trip(x):
    doc = ser.element_to_json(x)
    assert ser.element_from_json(MIXED, doc) == x
    assert ser.dumps(ser.element_to_json(ser.element_from_json(MIXED, doc))) == ser.dumps(doc)


@given(st.lists(st.tuples(st.integers(2, 4), st.integers(0, 100)), max_size=4), st.integers(1, 50))
def test_character_json_round_trip(steps, scale):
    g = LadderCharacter()
    for J, K in steps:
        g = g.extend(g.top[0] * J, K % J)
    assert ser.character_from_json(ser.character_to_json(g)) == g
