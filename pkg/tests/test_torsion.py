from itertools import product

import pytest

from ivpoly.idealization import FreeZn, RationalsQ, ZmodM
from ivpoly.poly import Poly
from ivpoly.torsion import (ProductOfZmod, ZmodN, count_by_enumeration, factorize, int_equals_MX,
                            is_principal_slicewise, kempner_count, parse_ring_spec,
                            poly_function_count, submodule_vanishing_size, vanishing_ideal)


def brute_vanishing(n, D, coeff_step=1):
    return sum(1 for c in product(range(0, n, coeff_step), repeat=D + 1)
               if all(sum(a * pow(x, j, n) for j, a in enumerate(c)) % n == 0 for x in range(n)))


def test_factorize():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(1) == []


def test_parse_ring_spec():
    assert parse_ring_spec("Z/6") == ZmodN(6)
    assert parse_ring_spec("F_5") == ZmodN(5)
    assert parse_ring_spec("Z/2 x Z/3") == ProductOfZmod([2, 3])
    with pytest.raises(ValueError):
        parse_ring_spec("Z/1")
    with pytest.raises(ValueError):
        parse_ring_spec("Q")


def test_f2_generated_by_x2_minus_x():
    sl = vanishing_ideal(ZmodN(2), 2)
    assert sl.generators() == [(0, (0, 1, 1))]
    assert sl.to_dict()["generators"][0]["poly"] == "X^2 + X (mod 2)"


def test_z4_vanishing_slice():
    sl = vanishing_ideal(ZmodN(4), 4)
    assert sl.contains([(0, -2, 2)]) and sl.contains([(0, 0, -1, 0, 1)])
    assert not sl.is_zero() and sl.replay()
    assert [g for _, g in sl.generators()] == [(0, 2, 2, 0, 0), (0, 2, 0, 2, 0), (0, 2, 1, 0, 1)]


@pytest.mark.parametrize("ring", [ZmodN(2), ZmodN(6), ProductOfZmod([3, 4])], ids=str)
def test_degree_zero_slice_is_zero(ring):
    assert vanishing_ideal(ring, 0).is_zero()


@pytest.mark.parametrize("n,D", [(2, 4), (3, 4), (4, 4), (6, 3), (8, 3), (9, 3)])
def test_slice_size_matches_brute_force(n, D):
    sl = vanishing_ideal(ZmodN(n), D)
    assert sl.size() == brute_vanishing(n, D)
    assert sl.replay()


def test_principality_examples():
    assert is_principal_slicewise(ZmodN(6)).principal
    res = is_principal_slicewise(ZmodN(4))
    assert not res.principal and res.certificates[0]["witness_in_slice"]
    res = is_principal_slicewise(ZmodN(2))
    assert res.principal and res.generator == [(0, 1, 1)]
    assert is_principal_slicewise(ProductOfZmod([2, 3])).principal
    assert not is_principal_slicewise(ProductOfZmod([2, 4])).principal
    with pytest.raises(ValueError):
        is_principal_slicewise(ZmodN(4), 3)


def test_gilmer_criterion_up_to_30():
    for n in range(2, 31):
        res = is_principal_slicewise(ZmodN(n))
        assert res.principal == res.reduced == ZmodN(n).is_reduced(), n


def test_function_counts():
    assert poly_function_count(ZmodN(3)) == 27
    assert poly_function_count(ZmodN(2)) == 4
    assert poly_function_count(ZmodN(4)) == 64 == kempner_count(ZmodN(4))
    assert poly_function_count(ZmodN(6)) == 108


@pytest.mark.parametrize("n", range(2, 13))
def test_counting_paths_agree(n):
    R = ZmodN(n)
    counts = {m: poly_function_count(R, m) for m in ("kernel", "image", "kempner")}
    if kempner_count(R) <= 50_000:
        counts["enumerate"] = count_by_enumeration(R)
    assert len(set(counts.values())) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_rank_nullity(n):
    R = ZmodN(n)
    sl = vanishing_ideal(R, n - 1)
    assert poly_function_count(R) * sl.size() == n ** n


def test_product_count_multiplies():
    assert poly_function_count(ProductOfZmod([2, 3])) == 4 * 27


def test_int_equals_mx():
    res = int_equals_MX(FreeZn(1), 2)
    assert not res.equal and res.witness == Poly.binomial(2)
    assert int_equals_MX(RationalsQ(), 5).equal
    assert int_equals_MX(ZmodM(4), 5).equal


@pytest.mark.parametrize("n,d,D", [(4, 2, 3), (6, 2, 3), (6, 3, 3), (8, 4, 2), (9, 3, 3)])
def test_submodule_vanishing(n, d, D):
    assert submodule_vanishing_size(n, d, D) == brute_vanishing(n, D, coeff_step=d)
    assert submodule_vanishing_size(n, d, D) <= vanishing_ideal(ZmodN(n), D).size()
    # heredity: a zero slice stays zero on the submodule
    assert submodule_vanishing_size(n, d, 0) == 1
