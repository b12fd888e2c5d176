"""Exact polynomials over Q: monomial basis, binomial basis, several variables.

``Poly`` is dense (coefficient of X^k at index k), ``BinomPoly`` stores the
coefficients with respect to C(X, k) = X(X-1)...(X-k+1)/k!, and ``MultiPoly``
is a sparse map from exponent tuples to coefficients.

A univariate polynomial maps Z into Z iff all its binomial coordinates are
integers; the same holds coordinatewise for the tensor basis
C(X1, k1)...C(Xv, kv) on Z^v.  Both facts are what the membership deciders
in this package rest on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _trim(coeffs: Iterable[Number]) -> tuple[Fraction, ...]:
    cs = [_frac(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@lru_cache(maxsize=None)
def stirling2_row(k: int) -> tuple[int, ...]:
    """S(k, j) for j = 0..k."""
    if k == 0:
        return (1,)
    prev = stirling2_row(k - 1)
    row = [0] * (k + 1)
    for j in range(1, k + 1):
        row[j] = j * (prev[j] if j < k else 0) + prev[j - 1]
    return tuple(row)


@lru_cache(maxsize=None)
def stirling1_row(k: int) -> tuple[int, ...]:
    """Signed s(k, j): X(X-1)...(X-k+1) = sum_j s(k, j) X^j."""
    if k == 0:
        return (1,)
    prev = stirling1_row(k - 1)
    row = [0] * (k + 1)
    for j in range(k + 1):
        a = prev[j - 1] if j >= 1 else 0
        b = prev[j] if j < k else 0
        row[j] = a - (k - 1) * b
    return tuple(row)


@lru_cache(maxsize=None)
def monomial_in_binomial(k: int) -> tuple[int, ...]:
    """Binomial coordinates of X^k: S(k, j) * j!."""
    return tuple(s * factorial(j) for j, s in enumerate(stirling2_row(k)))


@lru_cache(maxsize=None)
def binomial_in_monomial(k: int) -> tuple[Fraction, ...]:
    f = factorial(k)
    return tuple(Fraction(s, f) for s in stirling1_row(k))


class Poly:
    """Univariate polynomial over Q in the monomial basis (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def binomial(cls, k: int) -> "Poly":
        """The polynomial C(X, k)."""
        return cls(binomial_in_monomial(k))

    @property
    def degree(self) -> int | None:
        """Degree, or ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .parsing import format_poly
        return f"Poly({format_poly(self)!r})"

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Number):
        c = _frac(c)
        return Poly(a / c for a in self.coeffs)

    def __pow__(self, e: int):
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any value supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [k * c for k, c in enumerate(cs)][1:]
        return Poly(cs)

    def shift(self, c: Number) -> "Poly":
        """f(X + c)."""
        c = _frac(c)
        out = [Fraction(0)] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if a:
                for j in range(k + 1):
                    out[j] += a * comb(k, j) * c ** (k - j)
        return Poly(out)

    def compose(self, g: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * g + c
        return out

    def is_integral(self) -> bool:
        """All monomial coefficients are integers (f in Z[X])."""
        return all(c.denominator == 1 for c in self.coeffs)

    def to_binomial(self) -> "BinomPoly":
        return to_binomial(self)


def _as_poly(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly([v])
    return NotImplemented


class BinomPoly:
    """Univariate polynomial in the binomial basis C(X, k) (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("BinomPoly is immutable")

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, BinomPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("binom", self.coeffs))

    def __repr__(self):
        from .parsing import format_binomial
        return f"BinomPoly({format_binomial(self.to_poly())!r})"

    def integral_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def first_nonintegral(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c.denominator != 1:
                return k
        return None

    def to_poly(self) -> Poly:
        return from_binomial(self)


def to_binomial(f: Poly) -> BinomPoly:
    """Binomial coordinates of ``f`` (via Stirling numbers of the second kind)."""
    n = len(f.coeffs)
    out = [Fraction(0)] * n
    for k, a in enumerate(f.coeffs):
        if a:
            for j, s in enumerate(monomial_in_binomial(k)):
                out[j] += a * s
    return BinomPoly(out)


def from_binomial(b: BinomPoly | Sequence[Number]) -> Poly:
    cs = b.coeffs if isinstance(b, BinomPoly) else _trim(b)
    out = [Fraction(0)] * len(cs)
    for k, a in enumerate(cs):
        if a:
            for j, s in enumerate(binomial_in_monomial(k)):
                out[j] += a * s
    return Poly(out)


def derivative(f: Poly) -> Poly:
    return f.derivative()


def shift(f: Poly, c: Number) -> Poly:
    return f.shift(c)


def binomial_derivative_matrix(dim: int, order: int = 1) -> list[list[Fraction]]:
    """Matrix of d^order/dX^order on binomial coordinates of degree < dim.

    Column k holds the binomial coordinates of the derivative of C(X, k).
    """
    mat = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(dim):
        d = to_binomial(Poly.binomial(k).derivative(order))
        for j, c in enumerate(d.coeffs):
            mat[j][k] = c
    return mat


class MultiPoly:
    """Sparse polynomial over Q in ``nvars`` variables, monomial basis.

    Variable 0 is conventionally X; further variables are Y, or fresh
    parameters introduced by the membership deciders.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Number] | None = None):
        t = {}
        for e, c in (terms or {}).items():
            c = _frac(c)
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                t[tuple(e)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", t)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def from_poly(cls, f: Poly, nvars: int = 1, var: int = 0) -> "MultiPoly":
        terms = {}
        for k, c in enumerate(f.coeffs):
            e = [0] * nvars
            e[var] = k
            terms[tuple(e)] = c
        return cls(nvars, terms)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def constant(cls, nvars: int, c: Number) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def from_tensor_binomial(cls, nvars: int, coeffs: Mapping[tuple[int, ...], Number]) -> "MultiPoly":
        out = cls(nvars)
        for e, c in coeffs.items():
            term = cls.constant(nvars, c)
            for i, k in enumerate(e):
                term = term * cls.from_poly(Poly.binomial(k), nvars, i)
            out = out + term
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: int | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        return max(e[var] for e in self.terms)

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {dict(sorted(self.terms.items()))})"

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        if isinstance(other, Poly):
            return MultiPoly.from_poly(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, t)

    __rmul__ = __mul__

    def __truediv__(self, c: Number):
        c = _frac(c)
        return MultiPoly(self.nvars, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, *point):
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total += v
        return total

    def extend(self, nvars: int) -> "MultiPoly":
        """Same polynomial viewed in more variables (appended at the end)."""
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly(nvars, {e + pad: c for e, c in self.terms.items()})

    def shift_var(self, var: int, other: int, c: Number) -> "MultiPoly":
        """Substitute X_var -> X_var + c * X_other."""
        c = _frac(c)
        t: dict[tuple[int, ...], Fraction] = {}
        for e, a in self.terms.items():
            k = e[var]
            for j in range(k + 1):
                ne = list(e)
                ne[var] = k - j
                ne[other] += j
                ne = tuple(ne)
                t[ne] = t.get(ne, 0) + a * comb(k, j) * c ** j
        return MultiPoly(self.nvars, t)

    def partial(self, var: int) -> "MultiPoly":
        t = {}
        for e, a in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                t[tuple(ne)] = a * e[var]
        return MultiPoly(self.nvars, t)

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace variable i by ``values[i]`` (all in a common ring)."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        target = values[0].nvars if values else 0
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = MultiPoly.constant(target, 1) if k == 0 else power(i, k - 1) * values[i]
            return powers[key]

        out = MultiPoly(target)
        for e, a in self.terms.items():
            term = MultiPoly.constant(target, a)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def specialize(self, var: int, value: Number) -> "MultiPoly":
        """Set X_var = value, keeping the variable count (exponent becomes 0)."""
        value = _frac(value)
        t: dict[tuple[int, ...], Fraction] = {}
        for e, a in self.terms.items():
            ne = list(e)
            ne[var] = 0
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + a * value ** e[var]
        return MultiPoly(self.nvars, t)

    def to_univariate(self, var: int = 0) -> Poly:
        """Collapse to a Poly in ``var``; all other exponents must be zero."""
        cs: dict[int, Fraction] = {}
        for e, a in self.terms.items():
            if any(k for i, k in enumerate(e) if i != var):
                raise ValueError("polynomial depends on other variables")
            cs[e[var]] = a
        n = max(cs, default=-1) + 1
        return Poly(cs.get(k, 0) for k in range(n))

    def tensor_binomial_coefficients(self) -> dict[tuple[int, ...], Fraction]:
        """Coordinates in the basis prod_i C(X_i, k_i)."""
        cur: dict[tuple[int, ...], Fraction] = dict(self.terms)
        for var in range(self.nvars):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for e, a in cur.items():
                for j, s in enumerate(monomial_in_binomial(e[var])):
                    if s:
                        ne = e[:var] + (j,) + e[var + 1:]
                        nxt[ne] = nxt.get(ne, 0) + a * s
            cur = {e: c for e, c in nxt.items() if c}
        return cur


def is_integral_on_lattice(g: MultiPoly) -> bool:
    """True iff g(Z^v) is contained in Z (tensor-binomial criterion)."""
    return all(c.denominator == 1 for c in g.tensor_binomial_coefficients().values())


def nonintegral_tensor_index(g: MultiPoly) -> tuple[int, ...] | None:
    """A multi-index whose tensor-binomial coefficient is not an integer.

    Picks a minimal one in the (total degree, lexicographic) order, so the
    evaluation box below it is as small as possible.
    """
    bad = [e for e, c in g.tensor_binomial_coefficients().items() if c.denominator != 1]
    if not bad:
        return None
    return min(bad, key=lambda e: (sum(e), e))


def nonintegral_point(g: MultiPoly) -> tuple[tuple[int, ...], Fraction] | None:
    """An integer point where ``g`` takes a non-integral value, if any.

    A non-integral tensor-binomial coefficient at multi-index a is an
    alternating sum of the values on the box prod [0, a_i], so scanning that
    box is guaranteed to find one.
    """
    idx = nonintegral_tensor_index(g)
    if idx is None:
        return None
    for pt in product(*(range(k + 1) for k in idx)):
        v = g(*pt)
        if v.denominator != 1:
            return pt, v
    raise AssertionError("tensor-binomial inversion failed to produce a witness")
