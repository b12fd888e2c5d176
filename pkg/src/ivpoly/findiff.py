"""The difference quotient operator on polynomials.

For f in Q[X] there is a unique g in Q[X, Y] with Y*g(X, Y) = f(X+Y) - f(X);
``delta(f)`` returns it.  Specializing Y = y gives ``delta_at(f, y)``, with
``delta_at(f, 0) == f'``.  ``delta_by(f, h)`` substitutes an arbitrary
polynomial displacement h(X, Y) for the second argument, which is what the
composition rule needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .poly import MultiPoly, Number, Poly


@dataclass(frozen=True)
class DeltaResult:
    """g(X, Y) with Y*g = f(X+Y) - f(X); variables are (X, Y)."""

    g: MultiPoly

    def at(self, y: Number) -> Poly:
        return self.g.specialize(1, y).to_univariate(0)


def delta(f: Poly) -> DeltaResult:
    # Y-divided expansion: delta X^k = sum_{j=1..k} C(k, j) X^(k-j) Y^(j-1)
    terms: dict[tuple[int, int], Fraction] = {}
    for k, a in enumerate(f.coeffs):
        if a:
            for j in range(1, k + 1):
                e = (k - j, j - 1)
                terms[e] = terms.get(e, 0) + a * comb(k, j)
    return DeltaResult(MultiPoly(2, terms))


def delta_at(f: Poly, y: Number) -> Poly:
    """Delta_y f as a polynomial in X."""
    y = Fraction(y)
    if y == 0:
        return f.derivative()
    # (f(X+y) - f(X)) / y, exact for y != 0
    return (f.shift(y) - f) / y


def delta_by(f: Poly, h: MultiPoly, at: MultiPoly | None = None) -> MultiPoly:
    """(Delta_h f)(at) for a polynomial displacement h.

    Both ``h`` and ``at`` live in the same multivariate ring; ``at`` defaults
    to the first variable of that ring.
    """
    if at is None:
        at = MultiPoly.variable(h.nvars, 0)
    return delta(f).g.substitute([at, h])


def y_delta(g: MultiPoly, var: int, fresh: int, u: int) -> MultiPoly:
    """The parametrized operator  y * Delta_{y*u}  acting on variable ``var``.

    ``fresh`` is the index of the parameter y.  For u != 0 this is
    (g(X + u*y) - g(X)) / u; for u = 0 it is y * dg/dX.
    """
    if u == 0:
        return g.partial(var) * MultiPoly.variable(g.nvars, fresh)
    return (g.shift_var(var, fresh, u) - g) / u
