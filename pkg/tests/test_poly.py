from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from ivpoly.parsing import ParseError, format_binomial, format_poly, parse_poly
from ivpoly.poly import (MultiPoly, Poly, binomial_derivative_matrix, from_binomial,
                         is_integral_on_lattice, nonintegral_point, to_binomial)

from conftest import fractions, polys

X = Poly.x()


def test_to_binomial_examples():
    assert [int(c) for c in to_binomial(X ** 2).coeffs] == [0, 1, 2]
    assert from_binomial([0, 0, 1]) == Poly([0, Fraction(-1, 2), Fraction(1, 2)])
    # frozen from solving against values at 0..3
    assert [int(c) for c in to_binomial(X ** 3).coeffs] == [0, 1, 6, 6]


def _binomial_by_evaluation(f: Poly) -> list[Fraction]:
    # forward differences at 0 give the binomial coordinates
    d = f.degree or 0
    vals = [f(Fraction(x)) for x in range(d + 1)]
    out = []
    for _ in range(d + 1):
        out.append(vals[0])
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return out


@given(polys(max_degree=12))
def test_binomial_roundtrip(f):
    assert from_binomial(to_binomial(f)) == f


@given(polys(max_degree=8))
def test_binomial_matches_forward_differences(f):
    b = to_binomial(f)
    ref = _binomial_by_evaluation(f)
    assert [b.coeff(k) for k in range(len(ref))] == ref


def test_derivative_examples():
    assert (X ** 2).derivative() == X * 2
    assert Poly([5]).derivative().is_zero()
    assert Poly.binomial(2).derivative() == X - Fraction(1, 2)


def test_shift_examples():
    assert (X ** 2).shift(1) == X ** 2 + X * 2 + 1
    f = Poly([1, 2, 3])
    assert f.shift(0) == f
    assert Poly.binomial(2).shift(1) == Poly.binomial(2) + Poly.binomial(1)


@given(polys(), fractions(), fractions())
def test_shift_composes(f, a, b):
    assert f.shift(a).shift(b) == f.shift(a + b)


@given(polys(max_degree=6))
def test_integrality_criterion_vs_evaluation(f):
    rng = random.Random(repr(f))
    crit = to_binomial(f).integral_coefficients()
    small = all(f(Fraction(x)).denominator == 1 for x in range((f.degree or 0) + 1))
    wide = all(f(Fraction(rng.randint(-10 ** 6, 10 ** 6))).denominator == 1 for _ in range(100))
    assert crit == small
    if crit:
        assert wide


def test_multivariate_integrality_examples():
    xy = MultiPoly(2, {(1, 1): 1})
    assert is_integral_on_lattice(xy)
    half = xy / 2
    assert not is_integral_on_lattice(half)
    assert nonintegral_point(half) == ((1, 1), Fraction(1, 2))
    cc = MultiPoly.from_tensor_binomial(2, {(2, 3): 1})
    assert is_integral_on_lattice(cc)


@given(st.integers(1, 3), st.data())
def test_multivariate_criterion_vs_grid(v, data):
    from itertools import product
    degs = [data.draw(st.integers(0, 4)) for _ in range(v)]
    terms = {}
    for e in product(*[range(d + 1) for d in degs]):
        if data.draw(st.booleans()):
            terms[e] = data.draw(fractions((1, 2, 3, 6), span=4))
    g = MultiPoly(v, terms)
    grid = all(Fraction(g(*p)).denominator == 1 for p in product(*[range(d + 1) for d in degs]))
    assert is_integral_on_lattice(g) == grid


def test_binomial_derivative_matrix_matches_poly():
    M = binomial_derivative_matrix(5)
    for k in range(5):
        d = to_binomial(Poly.binomial(k).derivative())
        assert [M[j][k] for j in range(5)] == [d.coeff(j) for j in range(5)]


@pytest.mark.parametrize("text,expected", [
    ("3/2*X^2 - X + 1", Poly([1, -1, Fraction(3, 2)])),
    ("C(X,2) + 2*C(X,5)", Poly.binomial(2) + Poly.binomial(5) * 2),
    (" X ^ 3 ", X ** 3),
    ("(X+1)*(X-1)", X ** 2 - 1),
    ("-C(X,2)/3", Poly.binomial(2) / -3),
])
def test_parse(text, expected):
    assert parse_poly(text) == expected


@pytest.mark.parametrize("bad", ["X^", "C(X,)", "2**X", "(X+1", "Y"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad)


@given(polys(max_degree=8))
def test_format_roundtrip(f):
    assert parse_poly(format_poly(f)) == f
    assert parse_poly(format_binomial(f)) == f
