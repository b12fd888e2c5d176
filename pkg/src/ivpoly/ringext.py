"""The rings Q[rho_1..rho_n] with rho_i^2 = r_i rho_i, and Int over Z[rho_1..rho_n].

Elements are maps from subsets of {1..n} (bitmasks) to rationals; subset T
stands for rho_T = prod_{i in T} rho_i, so rho_S rho_T = (prod_{S&T} r_i) rho_{S|T}.
Relation r_i = 0 gives a dual generator, r_i = 2 the split-complex one, and
a unit r_i splits the ring as a product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .findiff import delta_at
from .membership import MEMBER, MembershipVerdict, Witness, in_int, in_int_mod, in_int_multiset
from .parsing import _mask_name, format_ring_poly, parse_ring_poly
from .partitions import mask_partitions
from .poly import Number, Poly

MAX_GENERATORS = 16
MAX_MEMBERSHIP_GENERATORS = 4


class RelationMismatch(ValueError):
    pass


def _relations(rel: Iterable[int]) -> tuple[int, ...]:
    rel = tuple(int(r) for r in rel)
    if not 1 <= len(rel) <= MAX_GENERATORS:
        raise ValueError(f"need 1..{MAX_GENERATORS} generators, got {len(rel)}")
    return rel


def mask_scale(relations: Sequence[int], a: int, b: int) -> int:
    """The integer c with rho_a * rho_b = c * rho_(a|b)."""
    c = 1
    both = a & b
    i = 0
    while both:
        if both & 1:
            c *= relations[i]
        both >>= 1
        i += 1
    return c


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def mask_label(mask: int) -> str:
    return _mask_name(mask) if mask else "1"


class GenDualElem:
    __slots__ = ("relations", "coeffs")

    def __init__(self, relations: Iterable[int], coeffs: Mapping[int, Number] | None = None):
        rel = _relations(relations)
        full = (1 << len(rel)) - 1
        cs = {}
        for m, v in (coeffs or {}).items():
            if m & ~full or m < 0:
                raise ValueError(f"subset mask {m} outside {len(rel)} generators")
            v = Fraction(v)
            if v:
                cs[m] = v
        object.__setattr__(self, "relations", rel)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("GenDualElem is immutable")

    @classmethod
    def scalar(cls, relations, c: Number) -> "GenDualElem":
        return cls(relations, {0: c})

    @classmethod
    def generator(cls, relations, i: int) -> "GenDualElem":
        """rho_(i+1), zero-based ``i``."""
        return cls(relations, {1 << i: 1})

    @property
    def n(self) -> int:
        return len(self.relations)

    def coeff(self, mask: int) -> Fraction:
        return self.coeffs.get(mask, Fraction(0))

    @property
    def base(self) -> Fraction:
        return self.coeff(0)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def _check(self, other: "GenDualElem"):
        if self.relations != other.relations:
            raise RelationMismatch(f"relations {self.relations} vs {other.relations}")

    def _coerce(self, other):
        if isinstance(other, GenDualElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return GenDualElem.scalar(self.relations, other)
        return None

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (GenDualElem, int, Fraction)) else None
        return o is not None and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.relations, frozenset(self.coeffs.items())))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cs = dict(self.coeffs)
        for m, v in o.coeffs.items():
            cs[m] = cs.get(m, 0) + v
        return GenDualElem(self.relations, cs)

    __radd__ = __add__

    def __neg__(self):
        return GenDualElem(self.relations, {m: -v for m, v in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    __rmul__ = __mul__

    def __repr__(self):
        return f"GenDualElem({list(self.relations)}, {format_elem(self)})"

    def to_dict(self) -> dict:
        return {"relations": list(self.relations),
                "coeffs": {mask_label(m): str(v) for m, v in sorted(self.coeffs.items())}}


def format_elem(z: GenDualElem) -> str:
    if not z.coeffs:
        return "0"
    out = []
    for m in sorted(z.coeffs, key=lambda m: (bin(m).count("1"), m)):
        v = z.coeffs[m]
        out.append(str(v) if m == 0 else f"{v}*{_mask_name(m)}")
    return " + ".join(out)


def mul(a: GenDualElem, b: GenDualElem) -> GenDualElem:
    a._check(b)
    cs: dict[int, Fraction] = {}
    for ma, va in a.coeffs.items():
        for mb, vb in b.coeffs.items():
            c = mask_scale(a.relations, ma, mb)
            if c:
                m = ma | mb
                cs[m] = cs.get(m, 0) + c * va * vb
    return GenDualElem(a.relations, cs)


def conj_norm(z: GenDualElem) -> tuple[GenDualElem, Fraction]:
    """Conjugate x + y(r - rho) and norm x^2 + r x y of z = x + y rho."""
    if z.n != 1:
        raise ValueError("conjugate and norm are defined for one generator")
    (r,) = z.relations
    x, y = z.coeff(0), z.coeff(1)
    conj = GenDualElem(z.relations, {0: x + r * y, 1: -y})
    return conj, x * x + r * x * y


def is_regular(z: GenDualElem) -> bool:
    """Non-zerodivisor test over Z: both x and x + r y nonzero."""
    if z.n != 1:
        raise ValueError("regularity test is for one generator")
    (r,) = z.relations
    x, y = z.coeff(0), z.coeff(1)
    return x != 0 and x + r * y != 0


class GenDualPoly:
    """F = sum_T f_T rho_T with f_T in Q[X]."""

    __slots__ = ("relations", "components")

    def __init__(self, relations: Iterable[int], components: Mapping[int, Poly] | None = None):
        rel = _relations(relations)
        full = (1 << len(rel)) - 1
        comps = {}
        for m, p in (components or {}).items():
            if m & ~full or m < 0:
                raise ValueError(f"subset mask {m} outside {len(rel)} generators")
            if not isinstance(p, Poly):
                p = Poly([p])
            if not p.is_zero():
                comps[m] = p
        object.__setattr__(self, "relations", rel)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("GenDualPoly is immutable")

    @classmethod
    def parse(cls, text: str, relations: Sequence[int] | None = None) -> "GenDualPoly":
        rel, parts = parse_ring_poly(text, relations)
        return cls(rel, parts)

    def format(self, binomial: bool = True, header: bool = True) -> str:
        return format_ring_poly(self.relations, self.components, binomial, header)

    @property
    def n(self) -> int:
        return len(self.relations)

    def component(self, mask: int) -> Poly:
        return self.components.get(mask, Poly())

    def degree(self) -> int:
        return max((p.degree for p in self.components.values()), default=0)

    def __eq__(self, other):
        return (isinstance(other, GenDualPoly) and self.relations == other.relations
                and self.components == other.components)

    def __hash__(self):
        return hash((self.relations, frozenset(self.components.items())))

    def __repr__(self):
        return f"GenDualPoly({self.format(header=False)!r}, relations={list(self.relations)})"

    def __add__(self, other: "GenDualPoly"):
        if self.relations != other.relations:
            raise RelationMismatch("relations differ")
        comps = dict(self.components)
        for m, p in other.components.items():
            comps[m] = comps.get(m, Poly()) + p
        return GenDualPoly(self.relations, comps)

    def __neg__(self):
        return GenDualPoly(self.relations, {m: -p for m, p in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "GenDualPoly"):
        if self.relations != other.relations:
            raise RelationMismatch("relations differ")
        comps: dict[int, Poly] = {}
        for ma, pa in self.components.items():
            for mb, pb in other.components.items():
                c = mask_scale(self.relations, ma, mb)
                if c:
                    m = ma | mb
                    comps[m] = comps.get(m, Poly()) + pa * pb * c
        return GenDualPoly(self.relations, comps)

    def to_dict(self) -> dict:
        return {"relations": list(self.relations), "text": self.format(header=False)}


def eval_direct(F: GenDualPoly, z: GenDualElem) -> GenDualElem:
    """Substitute X -> z by Horner in the ring."""
    if F.relations != z.relations:
        raise RelationMismatch(f"relations {F.relations} vs {z.relations}")
    out = GenDualElem(z.relations)
    for m, f in F.components.items():
        out = out + f(z) * GenDualElem(z.relations, {m: 1})
    return out


@dataclass(frozen=True)
class ClosedTerm:
    """f_U^(k)(x_empty) * prod x_B contributing to the coefficient of eps_S."""

    target: int
    component: int
    blocks: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.blocks)

    def describe(self) -> str:
        d = "'" * self.order if self.order <= 3 else f"^({self.order})"
        xs = "".join(f"*x[{mask_label(b)}]" for b in self.blocks)
        return f"eps[{mask_label(self.target)}] += f[{mask_label(self.component)}]{d}(x){xs}"


def closed_dual_terms(F: GenDualPoly, z: GenDualElem):
    """Terms of the set-partition closed form with their numeric values.

    The coefficient of eps_S in F(z) is the sum over U within S and over
    partitions {B_1..B_k} of S - U of f_U^(k)(x_empty) * prod x_(B_i).
    Yields ``(ClosedTerm, value)`` in a fixed order.
    """
    if any(z.relations):
        raise ValueError("closed set-partition form needs all relations zero")
    if F.relations != z.relations:
        raise RelationMismatch(f"relations {F.relations} vs {z.relations}")
    n = z.n
    x0 = z.base
    derivs: dict[tuple[int, int], Fraction] = {}
    for S in range(1 << n):
        U = S
        while True:
            f = F.components.get(U)
            if f is not None:
                for blocks in mask_partitions(S & ~U):
                    val = Fraction(1)
                    for b in blocks:
                        val *= z.coeff(b)
                    if val:
                        key = (U, len(blocks))
                        if key not in derivs:
                            derivs[key] = f.derivative(len(blocks))(x0)
                        val *= derivs[key]
                    yield ClosedTerm(S, U, tuple(blocks)), val
            if U == 0:
                break
            U = (U - 1) & S


def eval_closed_dual(F: GenDualPoly, z: GenDualElem) -> GenDualElem:
    cs: dict[int, Fraction] = {}
    for t, v in closed_dual_terms(F, z):
        if v:
            cs[t.target] = cs.get(t.target, 0) + v
    return GenDualElem(z.relations, cs)


def closed_term_count(F: GenDualPoly, z: GenDualElem, nonzero: bool = True) -> int:
    return sum(1 for _, v in closed_dual_terms(F, z) if v or not nonzero)


def eval_closed_rho_forms(F: GenDualPoly, z: GenDualElem) -> tuple[GenDualElem, GenDualElem]:
    """Both one-generator closed forms.

    first:  f(x) + y*Delta_{yr} f(x)*rho + g(x + yr)*rho
    second: f(x + yr) + y*Delta_{yr} f(x)*(rho - r) + g(x + yr)*rho
    where F = f + g rho and z = x + y rho.
    """
    if z.n != 1 or F.n != 1:
        raise ValueError("one generator only")
    if F.relations != z.relations:
        raise RelationMismatch(f"relations {F.relations} vs {z.relations}")
    (r,) = z.relations
    x, y = z.coeff(0), z.coeff(1)
    f, g = F.component(0), F.component(1)
    d = y * delta_at(f, y * r)(x)
    gv = g(x + y * r)
    first = GenDualElem(z.relations, {0: f(x), 1: d + gv})
    second = GenDualElem(z.relations, {0: f(x + y * r) - r * d, 1: d + gv})
    return first, second


def eval_closed_rho(F: GenDualPoly, z: GenDualElem) -> GenDualElem:
    first, second = eval_closed_rho_forms(F, z)
    if first != second:
        raise AssertionError("closed forms disagree")
    return first


def component_multiset(relations: Sequence[int], mask: int) -> tuple[int, ...]:
    """{r_i : i not in mask}, the multiset governing component f_mask."""
    return tuple(r for i, r in enumerate(relations) if not mask >> i & 1)


def in_int_ext(F: GenDualPoly) -> MembershipVerdict:
    """Membership in Int(Z[rho_1..rho_n]) by the componentwise criterion."""
    if F.n > MAX_MEMBERSHIP_GENERATORS:
        from .membership import CapExceeded
        raise CapExceeded(f"{F.n} generators exceeds cap {MAX_MEMBERSHIP_GENERATORS}")
    for mask in sorted(F.components, key=lambda m: (bin(m).count("1"), m)):
        v = in_int_multiset(F.components[mask], component_multiset(F.relations, mask))
        if not v:
            return MembershipVerdict(False, Witness("component", component=mask_label(mask), inner=v.witness,
                                                    note=f"multiset {list(component_multiset(F.relations, mask))}"))
    return MEMBER


def dense_set_oracle(F: GenDualPoly, D: int | None = None) -> MembershipVerdict:
    """Evaluate on x + sum b_i eps_i with x in 0..D+n and b in {0,1}^n."""
    if any(F.relations):
        raise ValueError("dense set oracle needs all relations zero")
    n = F.n
    if D is None:
        D = F.degree()
    if D < F.degree():
        raise ValueError("degree bound below the polynomial's degree")
    for x in range(D + n + 1):
        for bits in product((0, 1), repeat=n):
            coeffs = {0: x}
            for i, b in enumerate(bits):
                if b:
                    coeffs[1 << i] = 1
            z = GenDualElem(F.relations, coeffs)
            val = eval_direct(F, z)
            for m, v in sorted(val.coeffs.items()):
                if v.denominator != 1:
                    return MembershipVerdict(False, Witness(
                        "ring-point", (x,) + bits, v, component=mask_label(m)))
    return MEMBER


def sampled_ring_check(F: GenDualPoly, values: Iterable[int]) -> MembershipVerdict:
    """Falsification only: evaluate at every x + sum y_T rho_T with entries from ``values``."""
    values = list(values)
    n = F.n
    for entries in product(values, repeat=1 << n):
        z = GenDualElem(F.relations, dict(enumerate(entries)))
        val = eval_direct(F, z)
        for m, v in sorted(val.coeffs.items()):
            if v.denominator != 1:
                return MembershipVerdict(False, Witness("ring-point", tuple(entries), v, component=mask_label(m)))
    return MEMBER


def replay_ring_point(F: GenDualPoly, w: Witness) -> bool:
    if w.kind != "ring-point":
        raise ValueError("not a ring-point witness")
    n = F.n
    pt = w.point
    if len(pt) == n + 1 and all(b in (0, 1) for b in pt[1:]) and not any(F.relations):
        coeffs = {0: pt[0]}
        coeffs.update({1 << i: b for i, b in enumerate(pt[1:]) if b})
    else:
        coeffs = dict(enumerate(pt))
    return not eval_direct(F, GenDualElem(F.relations, coeffs)).is_integral()


def pullback_point(z: GenDualElem) -> tuple[Fraction, Fraction]:
    """x + y rho -> (x, x + r y): the ring map Q[rho] -> Q x Q for r != 0."""
    if z.n != 1:
        raise ValueError("one generator only")
    (r,) = z.relations
    return z.coeff(0), z.coeff(0) + r * z.coeff(1)


@dataclass(frozen=True)
class PullbackResult:
    pair: tuple[Poly, Poly]
    fiber_ok: bool
    reason: str = ""

    def to_dict(self) -> dict:
        from .parsing import format_binomial
        return {"pair": [format_binomial(p) for p in self.pair], "fiber_ok": self.fiber_ok,
                "reason": self.reason}


def pullback_iso(F: GenDualPoly) -> PullbackResult:
    """f + g rho -> (f, f + r g) and the fiber-product membership test."""
    if F.n != 1:
        raise ValueError("one generator only")
    (r,) = F.relations
    if r == 0:
        raise ValueError("pullback needs r != 0")
    f, g = F.component(0), F.component(1)
    h = f + g * r
    if not in_int_mod(f, r):
        return PullbackResult((f, h), False, "first coordinate not in Int(Z; rZ)")
    if not in_int_mod(h, r):
        return PullbackResult((f, h), False, "second coordinate not in Int(Z; rZ)")
    if not in_int(g):
        return PullbackResult((f, h), False, "difference not in r*Int(Z)")
    return PullbackResult((f, h), True)


def pullback_inverse(pair: tuple[Poly, Poly], r: int) -> GenDualPoly:
    f, h = pair
    return GenDualPoly((r,), {0: f, 1: (h - f) / r})
