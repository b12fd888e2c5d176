"""Membership in Int(Z), Int^(k)(Z), Int(Z; mZ) and the multiset rings Int(Z; S).

Int(Z; S) is defined recursively:  Int(Z; {}) = Int(Z), and f lies in
Int(Z; S + {s}) when f lies in Int(Z; S) and, for every sub-multiset T of S
and every integer y,

    y * Delta_{y * s * prod(S - T)} f  lies in  Int(Z; T).

The quantifier over y is discharged symbolically: y becomes a fresh
polynomial variable, the recursion is unfolded into a finite list of
multivariate polynomials, and each one is tested for integrality on all of
Z^v with the tensor-binomial criterion.  Since the unfolded conditions are
exactly "these polynomials are integer-valued at every integer point", the
procedure is a decision, not a heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .findiff import delta_at, y_delta
from .poly import MultiPoly, Poly, nonintegral_point, to_binomial

MAX_MULTISET = 4


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    """Replayable evidence that a polynomial is *not* a member.

    kind:
      ``point``       f^(order)(point) is not an integer
      ``congruence``  f(point + modulus) - f(point) is not divisible by modulus
      ``condition``   nested y*Delta_{y*u} steps evaluated at (x, y1, ..)
                      give a non-integer
      ``component``   a component of a ring polynomial fails; see ``inner``
      ``denominator`` a coefficient's denominator is not invertible on M
      ``ring-point``  evaluation at a ring element leaves the integral ring
    """

    kind: str
    point: tuple = ()
    value: Fraction | None = None
    order: int = 0
    modulus: int | None = None
    steps: tuple[int, ...] = ()
    component: object = None
    inner: "Witness | None" = None
    note: str = ""

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.point != ():
            d["point"] = [str(p) for p in self.point]
        if self.value is not None:
            d["value"] = str(self.value)
        if self.order:
            d["order"] = self.order
        if self.modulus is not None:
            d["modulus"] = self.modulus
        if self.steps:
            d["steps"] = list(self.steps)
        if self.component is not None:
            d["component"] = self.component if isinstance(self.component, (int, str)) else str(self.component)
        if self.inner is not None:
            d["inner"] = self.inner.to_dict()
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.member

    def to_dict(self) -> dict:
        d: dict = {"member": self.member}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


MEMBER = MembershipVerdict(True)


@dataclass(frozen=True)
class MultisetSpec:
    """A finite multiset of integers, stored sorted."""

    elements: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(int(e) for e in self.elements)))

    @classmethod
    def of(cls, items: Iterable[int]) -> "MultisetSpec":
        return cls(tuple(items))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _point_witness(f: Poly, order: int = 0) -> Witness | None:
    g = f.derivative(order) if order else f
    k = to_binomial(g).first_nonintegral()
    if k is None:
        return None
    for x in range(k + 1):
        v = g(Fraction(x))
        if v.denominator != 1:
            return Witness("point", (x,), v, order=order)
    raise AssertionError("binomial inversion failed to produce a witness")


def in_int(f: Poly) -> MembershipVerdict:
    """f(Z) contained in Z, decided by integrality of binomial coordinates."""
    w = _point_witness(f)
    return MEMBER if w is None else MembershipVerdict(False, w)


def in_int_k(f: Poly, k: int) -> MembershipVerdict:
    """f, f', ..., f^(k) all integer-valued."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    for j in range(k + 1):
        w = _point_witness(f, j)
        if w is not None:
            return MembershipVerdict(False, w)
    return MEMBER


def in_int_mod(f: Poly, m: int) -> MembershipVerdict:
    """Membership in Int(Z; mZ): integer-valued and preserving congruence mod m.

    f(a + m) = f(a) (mod m) for all integers a telescopes to every pair
    a = b (mod m), so the test is f in Int(Z) and (f(X+m) - f(X))/m in Int(Z).
    """
    if m == 0:
        raise ValueError("modulus 0: Int(Z; 0) is Int^(1)(Z), use in_int_k(f, 1)")
    m = abs(m)
    v = in_int(f)
    if not v:
        return v
    d = (f.shift(m) - f) / m
    k = to_binomial(d).first_nonintegral()
    if k is None:
        return MEMBER
    for x in range(k + 1):
        diff = f(Fraction(x + m)) - f(Fraction(x))
        if diff % m != 0:
            return MembershipVerdict(False, Witness("congruence", (x,), diff, modulus=m))
    raise AssertionError("congruence witness search failed")


def _unfold(g: MultiPoly, seq: Sequence[int], depth: int, steps: tuple[int, ...]) -> Witness | None:
    if not seq:
        hit = nonintegral_point(g)
        if hit is None:
            return None
        pt, val = hit
        return Witness("condition", tuple(pt[: depth + 1]), val, steps=steps)
    *prev, s = seq
    w = _unfold(g, prev, depth, steps)
    if w is not None:
        return w
    idx = range(len(prev))
    for size in range(len(prev) + 1):
        for keep in combinations(idx, size):
            u = s
            for i in idx:
                if i not in keep:
                    u *= prev[i]
            h = y_delta(g, 0, depth + 1, u)
            w = _unfold(h, [prev[i] for i in keep], depth + 1, steps + (u,))
            if w is not None:
                return w
    return None


def satisfies_sequence(f: Poly, seq: Sequence[int]) -> MembershipVerdict:
    """Run the recursive definition with the elements in the given order."""
    nvars = 1 + len(seq)
    w = _unfold(MultiPoly.from_poly(f, nvars), list(seq), 0, ())
    return MEMBER if w is None else MembershipVerdict(False, w)


def in_int_multiset(f: Poly, S: MultisetSpec | Iterable[int], cap: int = MAX_MULTISET) -> MembershipVerdict:
    if not isinstance(S, MultisetSpec):
        S = MultisetSpec.of(S)
    if len(S) > cap:
        raise CapExceeded(f"multiset of size {len(S)} exceeds cap {cap}")
    return satisfies_sequence(f, S.elements)


def condition_count(size: int) -> int:
    """Number of integrality tests the unfolding performs for |S| = size."""
    counts = [1]
    for m in range(1, size + 1):
        prev = m - 1
        counts.append(counts[prev] + sum(comb(prev, k) * counts[k] for k in range(prev + 1)))
    return counts[size]


def replay(f: Poly, w: Witness) -> bool:
    """True iff the witness really shows that ``f`` is not a member."""
    if w.kind == "point":
        (x,) = w.point
        return f.derivative(w.order)(Fraction(x)).denominator != 1
    if w.kind == "congruence":
        (x,) = w.point
        a, b = f(Fraction(x)), f(Fraction(x + w.modulus))
        if a.denominator != 1 or b.denominator != 1:
            return True
        return (b - a) % w.modulus != 0
    if w.kind == "condition":
        x, *ys = w.point
        g = f
        for u, y in zip(w.steps, ys):
            g = delta_at(g, y * u) * y
        return g(Fraction(x)).denominator != 1
    raise ValueError(f"cannot replay a {w.kind!r} witness on a univariate polynomial")


def sampled_multiset(f: Poly, seq: Sequence[int], ys: Sequence[int] = range(-5, 6)) -> bool:
    """The recursive definition with y restricted to ``ys`` at every level.

    Only a falsification check: a False here must agree with the symbolic
    decision, while True can miss failures that need larger y.
    """
    if not in_int(f):
        return False
    if not seq:
        return True
    *prev, s = seq
    if not sampled_multiset(f, prev, ys):
        return False
    idx = range(len(prev))
    for size in range(len(prev) + 1):
        for keep in combinations(idx, size):
            u = s
            for i in idx:
                if i not in keep:
                    u *= prev[i]
            for y in ys:
                g = delta_at(f, y * u) * y
                if not sampled_multiset(g, [prev[i] for i in keep], ys):
                    return False
    return True
