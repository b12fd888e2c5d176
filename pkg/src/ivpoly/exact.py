"""Exact integer-matrix machinery: Hermite normal form and congruence lattices.

Rationals are ``fractions.Fraction`` throughout the package (always reduced,
positive denominator), so there is no separate rational type here.

Matrices are plain lists of integer rows.  The row lattice of a matrix is the
set of integer combinations of its rows.  The canonical form used everywhere
is the *lower-triangular* row HNF:

* zero rows are dropped;
* every row has a pivot, its last nonzero entry, and the pivot is positive;
* rows are sorted by pivot column (strictly increasing);
* in each pivot column, the entries of the rows below the pivot row lie in
  ``[0, pivot)``.

Reading rows as polynomial coefficient vectors, the pivot column is the
degree, so a basis in this form is ordered by degree.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

IMatrix = list[list[int]]


class DimensionError(ValueError):
    pass


def _ncols(rows: Sequence[Sequence[int]], ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if not rows:
        raise DimensionError("cannot infer column count of an empty matrix")
    return len(rows[0])


def hnf(rows: Iterable[Sequence[int]], ncols: int | None = None) -> IMatrix:
    """Canonical lower-triangular row Hermite normal form of ``rows``.

    >>> hnf([[1, 2], [3, 4]])
    [[1, 0], [0, 2]]
    >>> hnf([[0, 0]])
    []
    """
    rows = [list(map(int, r)) for r in rows]
    n = _ncols(rows, ncols)
    for r in rows:
        if len(r) != n:
            raise DimensionError("ragged matrix")
    active = [r for r in rows if any(r)]
    pivots: list[tuple[int, list[int]]] = []
    for col in range(n - 1, -1, -1):
        nz = [r for r in active if r[col]]
        if not nz:
            continue
        rest = [r for r in active if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            keep = [p]
            pc = p[col]
            for r in nz[1:]:
                q = r[col] // pc
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        pivots.append((col, p))
        active = rest
    pivots.reverse()
    out = [p for _, p in pivots]
    cols = [c for c, _ in pivots]
    for j in range(len(out)):
        row = out[j]
        for i in range(j - 1, -1, -1):
            c = cols[i]
            q = row[c] // out[i][c]
            if q:
                pr = out[i]
                row = [a - q * b for a, b in zip(row, pr)]
        out[j] = row
    return out


def pivot_columns(h: IMatrix) -> list[int]:
    """Pivot column of each row of a matrix already in HNF."""
    cols = []
    for r in h:
        c = len(r) - 1
        while r[c] == 0:
            c -= 1
        cols.append(c)
    return cols


def pivots(h: IMatrix) -> list[int]:
    return [r[c] for r, c in zip(h, pivot_columns(h))]


def lattice_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]],
                  ncols: int | None = None) -> bool:
    """True iff the row lattices of ``a`` and ``b`` coincide."""
    na = _ncols(a, ncols) if a or ncols is not None else None
    nb = _ncols(b, ncols) if b or ncols is not None else None
    if na is None and nb is None:
        return True
    if na is not None and nb is not None and na != nb:
        raise DimensionError(f"column counts differ: {na} vs {nb}")
    n = na if na is not None else nb
    return hnf(a, n) == hnf(b, n)


def reduce_vector(h: IMatrix, v: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduce ``v`` against the HNF basis ``h``.

    Returns ``(remainder, coefficients)`` with ``v = coefficients @ h +
    remainder``; the remainder is zero iff ``v`` lies in the lattice.
    Reduction stops at the first column that cannot be cleared.
    """
    v = list(v)
    cols = pivot_columns(h)
    coeffs = [0] * len(h)
    by_col = {c: i for i, c in enumerate(cols)}
    for col in range(len(v) - 1, -1, -1):
        if not v[col]:
            continue
        i = by_col.get(col)
        if i is None:
            return v, coeffs
        q, rem = divmod(v[col], h[i][col])
        if rem:
            return v, coeffs
        coeffs[i] = q
        v = [a - q * b for a, b in zip(v, h[i])]
    return v, coeffs


def lattice_contains(h: IMatrix, v: Sequence[int]) -> bool:
    rem, _ = reduce_vector(h, v)
    return not any(rem)


def is_sublattice(small: IMatrix, big: IMatrix) -> bool:
    """Every row of ``small`` lies in the row lattice ``big`` (given in HNF)."""
    return all(lattice_contains(big, r) for r in small)


def congruence_lattice(n: int, conditions: Iterable[tuple[Sequence[int], int]]) -> IMatrix:
    """HNF basis of ``{c in Z^n : a.c = 0 (mod m) for every (a, m)}``.

    Conditions are imposed one at a time.  For the current basis B and one
    congruence, the coefficient vectors x with (x B).a = 0 (mod m) are the
    rows of HNF([I | B a] over [0 | m]) with vanishing last entry; the new
    basis is x B.  Keeping each step small avoids the entry growth of one
    big stacked reduction.  ``m = 0`` means exact equality.
    """
    basis = [[int(i == j) for j in range(n)] for i in range(n)]
    for a, m in conditions:
        m = abs(int(m))
        if m == 1:
            continue
        a = [int(t) for t in a]
        vals = [sum(x * y for x, y in zip(b, a)) for b in basis]
        if m:
            vals = [v % m for v in vals]
        if not any(vals):
            continue
        k = len(basis)
        rows = [[int(i == j) for j in range(k)] + [vals[i]] for i in range(k)]
        if m:
            rows.append([0] * k + [m])
        h = hnf(rows, k + 1)
        kernel = [r[:k] for r in h if not r[k]]
        basis = hnf(([sum(x * b[c] for x, b in zip(r, basis)) for c in range(n)] for r in kernel), n)
    return basis


def determinant_index(h: IMatrix) -> int:
    """Index of a full-rank lattice in Z^n (product of HNF pivots)."""
    if h and len(h) != len(h[0]):
        raise DimensionError("lattice is not full rank")
    out = 1
    for p in pivots(h):
        out *= p
    return out


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def is_integral(v: Fraction | int) -> bool:
    return Fraction(v).denominator == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def inverse_mod(a: int, m: int) -> int:
    g, s, _ = xgcd(a % m, m)
    if g != 1:
        raise ZeroDivisionError(f"{a} is not invertible modulo {m}")
    return s % m


def fraction_mod(q: Fraction, m: int) -> int:
    """Image of a rational with denominator prime to ``m`` in Z/mZ."""
    q = Fraction(q)
    if gcd(q.denominator, m) != 1:
        raise ZeroDivisionError(f"denominator of {q} is not prime to {m}")
    return q.numerator * inverse_mod(q.denominator, m) % m
