from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from ivpoly.exact import (DimensionError, congruence_lattice, determinant_index, fraction_mod, hnf,
                          inverse_mod, is_sublattice, lattice_contains, lattice_equal, pivot_columns,
                          xgcd)

from conftest import int_matrices


def test_hnf_already_reduced():
    assert hnf([[2, 0], [0, 2]]) == [[2, 0], [0, 2]]


def test_hnf_small_example():
    assert hnf([[1, 2], [3, 4]]) == [[1, 0], [0, 2]]


def test_hnf_drops_zero_rows():
    assert hnf([[0, 0]]) == []


def test_hnf_shape():
    h = hnf([[4, 6, 2], [2, 2, 8], [1, 1, 1]])
    cols = pivot_columns(h)
    assert cols == sorted(cols)
    for i, row in enumerate(h):
        c = cols[i]
        assert row[c] > 0 and all(v == 0 for v in row[c + 1:])
        # entries above a pivot in the same column are reduced
        for other in h[i + 1:]:
            assert 0 <= other[c] < row[c]


def test_ragged_rejected():
    with pytest.raises(DimensionError):
        hnf([[1, 2], [3]])


def test_lattice_equal_examples():
    assert lattice_equal([[2]], [[-2]])
    assert not lattice_equal([[1]], [[2]])
    assert lattice_equal([[2, 0], [0, 2], [1, 1]], [[1, 1], [2, 0], [1, -1], [0, 2]])


@given(int_matrices())
def test_hnf_idempotent(m):
    h = hnf(m, len(m[0]))
    assert hnf(h, len(m[0])) == h


@given(int_matrices())
def test_hnf_preserves_lattice(m):
    n = len(m[0])
    h = hnf(m, n)
    assert all(lattice_contains(h, row) for row in m)
    src = hnf(m, n)
    assert all(lattice_contains(src, row) for row in h)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-7, 7), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_hnf_preserves_abs_det(m):
    import sympy
    d = abs(int(sympy.Matrix(m).det()))
    h = hnf(m)
    if d == 0:
        assert len(h) < len(m)
    else:
        assert len(h) == len(m) and determinant_index(h) == d


@given(int_matrices(), st.randoms(use_true_random=False))
def test_hnf_canonical_under_row_operations(m, rnd):
    n = len(m[0])
    rows = [list(r) for r in m]
    for _ in range(6):
        i, j = rnd.randrange(len(rows)), rnd.randrange(len(rows))
        if i != j:
            c = rnd.randint(-3, 3)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    rnd.shuffle(rows)
    rows = [[-v for v in r] if rnd.random() < 0.5 else r for r in rows]
    assert hnf(rows, n) == hnf(m, n)


def test_sublattice():
    assert is_sublattice(hnf([[2, 0], [0, 4]]), hnf([[1, 0], [0, 2]]))
    assert not is_sublattice(hnf([[1, 0]]), hnf([[2, 0], [0, 1]]))


def test_congruence_lattice_brute_force():
    conds = [([1, 2, 3], 4), ([0, 1, 1], 3)]
    L = congruence_lattice(3, conds)
    for v in product(range(-6, 7), repeat=3):
        ok = all(sum(a * b for a, b in zip(r, v)) % m == 0 for r, m in conds)
        assert lattice_contains(L, v) == ok


def test_congruence_lattice_exact_equation():
    L = congruence_lattice(2, [([1, -1], 0)])
    assert lattice_equal(L, [[1, 1]])


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert a * x + b * y == g and g >= 0


def test_inverse_and_fraction_mod():
    assert inverse_mod(3, 7) == 5
    assert fraction_mod(Fraction(1, 3), 4) == 3
    with pytest.raises(ZeroDivisionError):
        inverse_mod(2, 4)
