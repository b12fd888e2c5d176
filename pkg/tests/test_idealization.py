from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from ivpoly.idealization import (FreeZn, IdealElem, IdealPoly, RationalsQ, ZmodM, _random_ideal_poly,
                                 canned_corollary_checks, delta_ring_eval, delta_vs_eps_separation,
                                 find_first_vs_second_order, from_dual_elem, ideal_eval,
                                 ideal_grid_oracle, ideal_horner, ideal_mul, in_int_idealization,
                                 is_defined, parse_ideal_poly, parse_module_spec,
                                 strict_zmodp_predicate, to_dual_elem, to_dual_poly)
from ivpoly.parsing import ParseError
from ivpoly.poly import Poly
from ivpoly.ringext import eval_direct, in_int_ext, mul

X = Poly.x()
C = Poly.binomial

SPECS = [FreeZn(1), FreeZn(2), FreeZn(3), ZmodM(4), ZmodM(5), ZmodM(6), RationalsQ()]


def module_elem(rng, spec):
    if spec.kind == "free":
        return tuple(Fraction(rng.randint(-4, 4)) for _ in range(spec.param))
    if spec.kind == "zmod":
        return rng.randrange(spec.param)
    return Fraction(rng.randint(-4, 4), rng.choice((1, 2, 7)))


def test_parse_module_spec():
    assert parse_module_spec("Z(+)Z") == FreeZn(1)
    assert parse_module_spec("Z (+) Z^3") == FreeZn(3)
    assert parse_module_spec("Z(+)Z/4") == ZmodM(4)
    assert parse_module_spec("Z(+)Q") == RationalsQ()
    for bad in ("Z(+)Z/1", "Z(+)R", "Z+Z"):
        with pytest.raises(ValueError):
            parse_module_spec(bad)


def test_parse_ideal_poly():
    F = parse_ideal_poly("(C(X,2) ; X, 3) over Z(+)Z^2")
    assert F.f == C(2) and F.h == (X, Poly([3]))
    G = parse_ideal_poly("(X^2 ; 5*X)", ZmodM(4))
    assert G.h == X
    with pytest.raises(ParseError):
        parse_ideal_poly("(X ; 1, 2) over Z(+)Z")
    with pytest.raises(ParseError):
        parse_ideal_poly("(X ; 1) over Z(+)Z/4", FreeZn(1))


def test_ideal_mul_example():
    a = IdealElem.make(FreeZn(1), 2, (3,))
    b = IdealElem.make(FreeZn(1), 5, (7,))
    assert ideal_mul(a, b) == IdealElem.make(FreeZn(1), 10, (29,))


def test_eval_examples():
    for spec in SPECS:
        m = module_elem(random.Random(1), spec)
        z = IdealElem.make(spec, 3, m)
        val = ideal_eval(IdealPoly.make(spec, X ** 2), z)
        assert val == IdealElem.make(spec, 9, spec.scale(Fraction(6), spec.normalize(m)))
        f = Poly([1, -2, 0, 1])
        assert ideal_eval(IdealPoly.make(spec, f), IdealElem.make(spec, 2)) == IdealElem.make(spec, f(2))
    F = parse_ideal_poly("(X^2 ; X) over Z(+)Z/4")
    assert ideal_eval(F, IdealElem.make(ZmodM(4), 3, 2)) == IdealElem.make(ZmodM(4), 9, 3)


def test_non_acting_scalar_rejected():
    with pytest.raises(ValueError):
        IdealElem.make(ZmodM(4), Fraction(1, 2))
    F = IdealPoly.make(ZmodM(4), C(2))
    assert not is_defined(F)
    v = in_int_idealization(F)
    assert not v.member and v.witness.kind == "denominator"


@pytest.mark.parametrize("spec", SPECS, ids=str)
@given(rnd=st.randoms(use_true_random=False))
def test_closed_formula_matches_horner(spec, rnd):
    F = _random_ideal_poly(rnd, spec, 0)
    if not is_defined(F):
        return
    z = IdealElem.make(spec, rnd.randint(-5, 5), module_elem(rnd, spec))
    assert ideal_eval(F, z) == ideal_horner(F, z)


@given(rnd=st.randoms(use_true_random=False))
def test_bijection_with_dual_numbers(rnd):
    spec = FreeZn(1)
    a = IdealElem.make(spec, rnd.randint(-5, 5), module_elem(rnd, spec))
    b = IdealElem.make(spec, rnd.randint(-5, 5), module_elem(rnd, spec))
    assert to_dual_elem(ideal_mul(a, b)) == mul(to_dual_elem(a), to_dual_elem(b))
    assert from_dual_elem(to_dual_elem(a)) == a
    F = _random_ideal_poly(rnd, spec, 0)
    assert to_dual_elem(ideal_eval(F, a)) == eval_direct(to_dual_poly(F), to_dual_elem(a))
    assert in_int_idealization(F).member == in_int_ext(to_dual_poly(F)).member


@pytest.mark.parametrize("spec", SPECS, ids=str)
@pytest.mark.parametrize("k", [0, 1])
@given(rnd=st.randoms(use_true_random=False))
def test_decomposition_matches_grid(spec, k, rnd):
    F = _random_ideal_poly(rnd, spec, k)
    assert in_int_idealization(F, k).member == ideal_grid_oracle(F, k).member


def test_rationals_example():
    F = IdealPoly.make(RationalsQ(), C(2), X ** 9 / 7)
    assert in_int_idealization(F).member


def test_zmod_base_conditions():
    # for p = 2 the denominator of C(X,2) is not invertible on the module
    assert not in_int_idealization(IdealPoly.make(ZmodM(2), C(2))).member
    # for odd p the decomposition and the grid oracle both accept it
    F = IdealPoly.make(ZmodM(3), C(2), Poly([1]))
    assert in_int_idealization(F).member and ideal_grid_oracle(F).member
    assert not strict_zmodp_predicate(F)


def test_first_vs_second_order_polynomial():
    f = find_first_vs_second_order()
    assert f == C(2) + C(4) * 6


def test_delta_vs_eps():
    rep = delta_vs_eps_separation(2)
    assert rep["separates"] and rep["in_delta_ring"] and not rep["in_eps_ring"]
    assert rep["eps_witness"]["value"] == "13/2"


def test_delta_ring_has_no_cross_terms():
    spec = FreeZn(2)
    z = IdealElem.make(spec, 0, (1, 1))
    val = delta_ring_eval(IdealPoly.make(spec, X ** 2), z)
    assert val == IdealElem.make(spec, 0, (0, 0))


def test_canned_corollaries():
    rows = canned_corollary_checks()
    assert rows and all(r["status"] in ("pass", "note") for r in rows)
    assert any(r["status"] == "note" for r in rows)
