"""Seeded random inputs for property checks.

Uniformly random rational polynomials are almost never members of the
smaller rings, so candidates are drawn as a mix: lattice members, members
with one coordinate nudged, and free rational polynomials.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .poly import Poly, from_binomial

DENOMINATORS = (1, 1, 1, 2, 3, 4, 5, 6, 8, 720)


def rng_for(seed: int, *salt) -> random.Random:
    return random.Random(repr((seed,) + salt))


def random_poly(rng: random.Random, degree: int, denominators: Sequence[int] = (1,),
                span: int = 5) -> Poly:
    """Monomial coefficients a/d with |a| <= span and d from ``denominators``."""
    return Poly(Fraction(rng.randint(-span, span), rng.choice(denominators)) for _ in range(degree + 1))


def random_binomial(rng: random.Random, degree: int, denominators: Sequence[int] = DENOMINATORS,
                    span: int = 4) -> Poly:
    """Binomial coordinates a/d; integral coordinates are common by construction."""
    return from_binomial([Fraction(rng.randint(-span, span), rng.choice(denominators))
                          for _ in range(degree + 1)])


def random_from_lattice(rng: random.Random, basis: Sequence[Sequence[int]], span: int = 3) -> Poly:
    n = len(basis[0]) if basis else 0
    v = [0] * n
    for row in basis:
        c = rng.randint(-span, span)
        if c:
            v = [a + c * b for a, b in zip(v, row)]
    return from_binomial(v)


def nudge(rng: random.Random, f: Poly, degree: int) -> Poly:
    """Add a small multiple of a random C(X,k), possibly fractional."""
    k = rng.randint(0, degree)
    c = Fraction(rng.choice((1, -1, 2)), rng.choice((1, 1, 2, 3)))
    return f + Poly.binomial(k) * c


def mixed_candidate(rng: random.Random, basis: Sequence[Sequence[int]], degree: int,
                    denominators: Sequence[int] = DENOMINATORS) -> Poly:
    roll = rng.random()
    if roll < 0.45:
        return random_from_lattice(rng, basis)
    if roll < 0.8:
        return nudge(rng, random_from_lattice(rng, basis), degree)
    return random_binomial(rng, rng.randint(0, degree), denominators)
