from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ivpoly.checks import random_ring_poly
from ivpoly.membership import in_int, in_int_k, in_int_mod, in_int_multiset
from ivpoly.partitions import bell, mask_partitions, restricted_growth_strings, set_partitions
from ivpoly.poly import Poly
from ivpoly.ringext import (GenDualElem, GenDualPoly, RelationMismatch, closed_term_count,
                            component_multiset, conj_norm, dense_set_oracle, eval_closed_dual,
                            eval_closed_rho, eval_closed_rho_forms, eval_direct, in_int_ext,
                            is_regular, mul, pullback_inverse, pullback_iso, replay_ring_point,
                            sampled_ring_check)

X = Poly.x()
C = Poly.binomial


def elem(rel, *coeffs):
    return GenDualElem(rel, dict(enumerate(coeffs)))


def fracs():
    return st.builds(Fraction, st.integers(-5, 5), st.sampled_from([1, 1, 2, 3]))


def elems(rel):
    n = 1 << len(rel)
    return st.lists(fracs(), min_size=n, max_size=n).map(lambda cs: GenDualElem(rel, dict(enumerate(cs))))


def ring_polys(rel, degree=5):
    n = 1 << len(rel)
    comp = st.lists(fracs(), min_size=1, max_size=degree + 1).map(Poly)
    return st.lists(comp, min_size=n, max_size=n).map(lambda ps: GenDualPoly(rel, dict(enumerate(ps))))


relations = st.lists(st.integers(-3, 3), min_size=1, max_size=3).map(tuple)


# partitions ---------------------------------------------------------------

def test_partitions():
    assert [bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert list(restricted_growth_strings(3)) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]
    assert sorted(map(sorted, set_partitions([1, 2])), key=len) == [[[1, 2]], [[1], [2]]]
    assert sum(1 for _ in mask_partitions(0b1011)) == 5


# arithmetic ---------------------------------------------------------------

def test_conj_norm_examples():
    z = elem((0,), 3, 4)
    assert conj_norm(z)[1] == 9
    conj, norm = conj_norm(elem((2,), 1, 1))
    assert conj == elem((2,), 3, -1) and norm == 3
    assert conj_norm(elem((5,), 1))[1] == 1


def test_is_regular_examples():
    assert not is_regular(elem((2,), 2, -1))
    assert mul(elem((2,), 2, -1), elem((2,), 0, 1)) == elem((2,), 0)
    assert is_regular(elem((2,), 5))
    assert not is_regular(elem((0,), 0, 1))


def test_relation_mismatch():
    with pytest.raises(RelationMismatch):
        mul(elem((1,), 1), elem((2,), 1))


@given(relations.flatmap(lambda r: st.tuples(elems(r), elems(r), elems(r))))
def test_ring_axioms(t):
    a, b, c = t
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b) == mul(b, a)
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


@given(st.integers(-4, 4), fracs(), fracs())
def test_conj_norm_product(r, x, y):
    z = elem((r,), x, y)
    conj, norm = conj_norm(z)
    assert mul(z, conj) == GenDualElem.scalar((r,), norm)


# evaluation ---------------------------------------------------------------

def test_eval_examples():
    x, y = Fraction(3), Fraction(-2)
    F = GenDualPoly((0,), {0: X ** 2})
    assert eval_direct(F, elem((0,), x, y)) == elem((0,), x * x, 2 * x * y)
    for r in (-2, 3, 5):
        F = GenDualPoly((r,), {0: X ** 2})
        assert eval_direct(F, elem((r,), x, y)) == elem((r,), x * x, 2 * x * y + r * y * y)
    z = elem((1, 2), 1, 2, 3, 4)
    assert eval_direct(GenDualPoly((1, 2), {0: X}), z) == z


def test_closed_rho_examples():
    F = GenDualPoly((3,), {0: X ** 2})
    assert eval_closed_rho(F, elem((3,), 1, 1)) == elem((3,), 1, 5)
    f = Poly([1, 2, 0, -1])
    z = elem((0,), 2, 5)
    assert eval_closed_rho(GenDualPoly((0,), {0: f}), z) == elem((0,), f(2), f.derivative()(2) * 5)
    assert eval_closed_rho(GenDualPoly((4,), {0: Poly([7])}), z.__class__((4,), {0: 1, 1: 1})) == elem((4,), 7)


@given(relations.flatmap(lambda r: st.tuples(ring_polys(r, 4), ring_polys(r, 4), elems(r))))
def test_evaluation_is_homomorphism(t):
    F, G, z = t
    assert eval_direct(F * G, z) == mul(eval_direct(F, z), eval_direct(G, z))
    assert eval_direct(F + G, z) == eval_direct(F, z) + eval_direct(G, z)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(ring_polys((0,) * n, 5), elems((0,) * n))))
def test_closed_dual_matches_direct(t):
    F, z = t
    assert eval_closed_dual(F, z) == eval_direct(F, z)


@given(st.integers(-3, 3).flatmap(lambda r: st.tuples(ring_polys((r,), 5), elems((r,)))))
def test_closed_rho_matches_direct(t):
    F, z = t
    a, b = eval_closed_rho_forms(F, z)
    assert a == b == eval_direct(F, z)


def test_bell_term_counts():
    # counts frozen from the closed form; single component follows B_(n+1)
    single, full = {}, {}
    for n in range(1, 5):
        rel = (0,) * n
        z = GenDualElem(rel, {m: m + 2 for m in range(1 << n)})
        single[n] = closed_term_count(GenDualPoly(rel, {0: X ** (n + 3)}), z)
        full[n] = closed_term_count(GenDualPoly(rel, {m: X ** (n + 3) + m for m in range(1 << n)}), z)
    assert single == {1: 2, 2: 5, 3: 15, 4: 52}
    assert full == {1: 3, 2: 10, 3: 37, 4: 151}


# membership ---------------------------------------------------------------

def test_membership_examples():
    assert in_int_ext(GenDualPoly.parse("X + (C(X,2))*rho1", [2])).member
    F = GenDualPoly((2,), {0: C(2)})
    assert not in_int_ext(F).member
    w = sampled_ring_check(F, range(-3, 4))
    assert not w.member and replay_ring_point(F, w.witness)


def test_dense_set_examples():
    F = GenDualPoly((0, 0), {0: C(2)})
    v = dense_set_oracle(F)
    assert not v.member and replay_ring_point(F, v.witness)
    G = GenDualPoly((0, 0), {0: X ** 3 - 2, 1: X, 3: Poly([4, 0, 1])})
    assert dense_set_oracle(G).member and in_int_ext(G).member


def test_component_multiset():
    assert sorted(component_multiset((2, 3, 0), 0b000)) == [0, 2, 3]
    assert component_multiset((2, 3, 0), 0b101) == (3,)
    assert component_multiset((2, 3, 0), 0b111) == ()


@pytest.mark.parametrize("n", [1, 2, 3])
@given(rnd=st.randoms(use_true_random=False))
def test_componentwise_matches_dense_set(n, rnd):
    F = random_ring_poly(rnd, (0,) * n, 4)
    assert in_int_ext(F).member == dense_set_oracle(F, 4).member


@given(rel=st.lists(st.sampled_from([-2, 2, 3, 4]), min_size=1, max_size=2).map(tuple),
       rnd=st.randoms(use_true_random=False))
def test_nonzero_relations_survive_sampling(rel, rnd):
    F = random_ring_poly(rnd, rel, 4)
    if in_int_ext(F).member:
        assert sampled_ring_check(F, range(-2, 3)).member


@pytest.mark.parametrize("r", [1, -1])
@given(t=st.tuples(st.lists(fracs(), min_size=1, max_size=5), st.lists(fracs(), min_size=1, max_size=5)))
def test_unit_relation_collapses(r, t):
    f, g = Poly(t[0]), Poly(t[1])
    F = GenDualPoly((r,), {0: f, 1: g})
    assert in_int_ext(F).member == (in_int(f).member and in_int(g).member)


@given(rnd=st.randoms(use_true_random=False), r=st.sampled_from([2, 3]))
def test_mixed_four_components(rnd, r):
    F = random_ring_poly(rnd, (r, 0), 5)
    f0, f1, f2, f3 = (F.component(m) for m in range(4))
    expected = (in_int_multiset(f0, [r, 0]).member and in_int_k(f1, 1).member
                and in_int_mod(f2, r).member and in_int(f3).member)
    assert in_int_ext(F).member == expected


# pullback -----------------------------------------------------------------

def test_pullback_examples():
    res = pullback_iso(GenDualPoly((2,), {0: X, 1: C(2)}))
    assert res.pair == (X, X ** 2) and res.fiber_ok
    assert pullback_iso(GenDualPoly((3,), {0: X ** 2 + 1, 1: X ** 3})).fiber_ok
    res = pullback_iso(GenDualPoly((2,), {0: C(2)}))
    assert res.pair == (C(2), C(2)) and not res.fiber_ok
    with pytest.raises(ValueError):
        pullback_iso(GenDualPoly((0,), {0: X}))


@given(r=st.sampled_from([2, 3, 4, -3]), rnd=st.randoms(use_true_random=False))
def test_pullback_matches_componentwise(r, rnd):
    F = random_ring_poly(rnd, (r,), 6)
    assert pullback_iso(F).fiber_ok == in_int_ext(F).member
    assert pullback_inverse(pullback_iso(F).pair, r) == F


@given(st.sampled_from([2, 3, -4]).flatmap(lambda r: ring_polys((r,), 4)))
def test_pullback_kernel_trivial(F):
    f, h = pullback_iso(F).pair
    assert (f.is_zero() and h.is_zero()) == (not F.components)
