"""Nagata idealization Z(+)M for M = Z^n, Z/mZ, Q.

Elements are pairs (x, m) with (x, m)(y, n) = (xy, xn + ym); module elements
square to zero.  A polynomial is F = f + h*eps with f over the base and h
module-valued, and F(x + m eps) = (f(x), f'(x) m + h(x)).

Module elements are stored per kind: a tuple of Fractions for Z^n, an int in
0..m-1 for Z/mZ, a Fraction for Q.  Base parts are Fractions; for Z/mZ they
must have denominators prime to m, since only those act on the module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, Sequence

from .exact import fraction_mod
from .membership import MEMBER, MembershipVerdict, Witness, in_int_k
from .parsing import ParseError, format_binomial, parse_poly
from .poly import Poly
from .ringext import GenDualElem, GenDualPoly, eval_direct, in_int_ext


class SpecMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ModuleSpec:
    """kind is 'free' (param = rank n), 'zmod' (param = m >= 2) or 'rationals'."""

    kind: str
    param: int = 0

    def __post_init__(self):
        if self.kind == "free" and self.param < 1:
            raise ValueError("free module needs rank >= 1")
        if self.kind == "zmod" and self.param < 2:
            raise ValueError("Z/mZ needs m >= 2")
        if self.kind not in ("free", "zmod", "rationals"):
            raise ValueError(f"unknown module kind {self.kind!r}")

    def __str__(self):
        if self.kind == "free":
            return "Z(+)Z" if self.param == 1 else f"Z(+)Z^{self.param}"
        if self.kind == "zmod":
            return f"Z(+)Z/{self.param}"
        return "Z(+)Q"

    def zero(self):
        if self.kind == "free":
            return (Fraction(0),) * self.param
        return 0 if self.kind == "zmod" else Fraction(0)

    def normalize(self, a):
        if self.kind == "free":
            a = tuple(Fraction(v) for v in a)
            if len(a) != self.param:
                raise ValueError(f"expected {self.param} module coordinates")
            return a
        if self.kind == "zmod":
            return fraction_mod(Fraction(a), self.param)
        return Fraction(a)

    def add(self, a, b):
        if self.kind == "free":
            return tuple(u + v for u, v in zip(a, b))
        if self.kind == "zmod":
            return (a + b) % self.param
        return a + b

    def scale(self, c: Fraction, a):
        """c * a; for Z/mZ the scalar must have denominator prime to m."""
        if self.kind == "free":
            return tuple(c * v for v in a)
        if self.kind == "zmod":
            return fraction_mod(Fraction(c), self.param) * a % self.param
        return c * a

    def is_integral(self, a) -> bool:
        if self.kind == "free":
            return all(v.denominator == 1 for v in a)
        return True

    def acts(self, c: Fraction) -> bool:
        """Whether the rational c lies in the localization acting on M."""
        return self.kind != "zmod" or gcd(Fraction(c).denominator, self.param) == 1

    def format(self, a) -> str:
        if self.kind == "free":
            return "(" + ", ".join(str(v) for v in a) + ")"
        if self.kind == "zmod":
            return f"[{a}]"
        return str(a)

    def grid(self) -> list:
        """Module elements that suffice for the evaluation oracle."""
        if self.kind == "free":
            pts = [self.zero()]
            for i in range(self.param):
                pts.append(tuple(Fraction(int(i == j)) for j in range(self.param)))
            pts.append((Fraction(1),) * self.param)
            pts.append((Fraction(-2),) + (Fraction(3),) * (self.param - 1))
            return pts
        if self.kind == "zmod":
            return list(range(self.param))
        return [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(2, 7)]


def FreeZn(n: int) -> ModuleSpec:
    return ModuleSpec("free", n)


def ZmodM(m: int) -> ModuleSpec:
    return ModuleSpec("zmod", m)


def RationalsQ() -> ModuleSpec:
    return ModuleSpec("rationals")


_SPEC_RE = re.compile(r"^\s*Z\s*\(\+\)\s*(?:Z\s*(?:\^\s*(\d+)|/\s*(\d+))?|(Q))\s*$")


def parse_module_spec(text: str) -> ModuleSpec:
    """'Z(+)Z', 'Z(+)Z^3', 'Z(+)Z/4' or 'Z(+)Q'."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"unknown module spec {text!r}")
    rank, mod, q = m.groups()
    try:
        if q:
            return RationalsQ()
        if mod:
            return ZmodM(int(mod))
        return FreeZn(int(rank) if rank else 1)
    except ValueError as e:
        raise ParseError(str(e)) from None


@dataclass(frozen=True)
class IdealElem:
    spec: ModuleSpec
    x: Fraction
    m: object

    @classmethod
    def make(cls, spec: ModuleSpec, x, m=None) -> "IdealElem":
        x = Fraction(x)
        if not spec.acts(x):
            raise ValueError(f"base part {x} does not act on {spec}")
        return cls(spec, x, spec.zero() if m is None else spec.normalize(m))

    def _check(self, other: "IdealElem"):
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other: "IdealElem") -> "IdealElem":
        self._check(other)
        return IdealElem(self.spec, self.x + other.x, self.spec.add(self.m, other.m))

    def __mul__(self, other: "IdealElem") -> "IdealElem":
        return ideal_mul(self, other)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.spec.is_integral(self.m)

    def __str__(self):
        return f"({self.x}, {self.spec.format(self.m)})"

    def to_dict(self) -> dict:
        return {"x": str(self.x), "m": self.spec.format(self.m)}


def ideal_mul(a: IdealElem, b: IdealElem) -> IdealElem:
    a._check(b)
    s = a.spec
    return IdealElem(s, a.x * b.x, s.add(s.scale(a.x, b.m), s.scale(b.x, a.m)))


@dataclass(frozen=True)
class IdealPoly:
    """f + h eps; h is a tuple of n Polys for Z^n and a single Poly otherwise."""

    spec: ModuleSpec
    f: Poly
    h: object

    @classmethod
    def make(cls, spec: ModuleSpec, f: Poly, h=None) -> "IdealPoly":
        if spec.kind == "free":
            if h is None:
                h = (Poly(),) * spec.param
            elif isinstance(h, Poly):
                h = (h,) if spec.param == 1 else None
                if h is None:
                    raise ValueError(f"need {spec.param} module components")
            h = tuple(h)
            if len(h) != spec.param:
                raise ValueError(f"need {spec.param} module components")
        else:
            h = Poly() if h is None else h
            if spec.kind == "zmod" and all(spec.acts(c) for c in h.coeffs):
                h = Poly(fraction_mod(c, spec.param) for c in h.coeffs)
        return cls(spec, f, h)

    def h_parts(self) -> tuple[Poly, ...]:
        return self.h if self.spec.kind == "free" else (self.h,)

    def degree(self) -> int:
        return max([p.degree or 0 for p in (self.f,) + self.h_parts()])

    def derivative(self, order: int = 1) -> "IdealPoly":
        hs = tuple(p.derivative(order) for p in self.h_parts())
        return IdealPoly.make(self.spec, self.f.derivative(order), hs if self.spec.kind == "free" else hs[0])

    def coefficient(self, k: int) -> IdealElem:
        s = self.spec
        if s.kind == "free":
            m = tuple(p.coeff(k) for p in self.h)
        else:
            m = s.normalize(self.h.coeff(k))
        return IdealElem.make(s, self.f.coeff(k), m)

    def h_at(self, x: Fraction):
        s = self.spec
        if s.kind == "free":
            return tuple(p(Fraction(x)) for p in self.h)
        return s.normalize(self.h(Fraction(x)))

    def format(self) -> str:
        hs = self.h_parts()
        ht = ", ".join(format_binomial(p) for p in hs)
        return f"({format_binomial(self.f)} ; {ht}) over {self.spec}"

    def to_dict(self) -> dict:
        return {"text": self.format()}


def parse_ideal_poly(text: str, spec: ModuleSpec | None = None) -> IdealPoly:
    """'(f ; h1, h2) over Z(+)Z^2'; the ``over`` clause may be replaced by ``spec``."""
    m = re.match(r"^\s*\((.*)\)\s*(?:over\s+(.+?))?\s*$", text, re.S)
    if not m:
        raise ParseError("expected '(f ; h) over <module>'")
    body, over = m.groups()
    if over:
        parsed = parse_module_spec(over)
        if spec is not None and spec != parsed:
            raise ParseError(f"module {parsed} disagrees with {spec}")
        spec = parsed
    if spec is None:
        raise ParseError("module not given")
    if ";" not in body:
        raise ParseError("expected ';' between base and module parts")
    ftxt, htxt = body.split(";", 1)
    f = parse_poly(ftxt)
    hs = [parse_poly(t) for t in _split_top(htxt)] if htxt.strip() else []
    if spec.kind == "free":
        if not hs:
            hs = [Poly()] * spec.param
        if len(hs) != spec.param:
            raise ParseError(f"expected {spec.param} module components, got {len(hs)}")
        return IdealPoly.make(spec, f, tuple(hs))
    if len(hs) > 1:
        raise ParseError("expected one module component")
    return IdealPoly.make(spec, f, hs[0] if hs else Poly())


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def _check_defined(F: IdealPoly) -> Witness | None:
    """F must have coefficients in the total quotient ring."""
    s = F.spec
    if s.kind != "zmod":
        return None
    for name, p in (("f", F.f), ("h", F.h)):
        for c in p.coeffs:
            if not s.acts(c):
                return Witness("denominator", value=c, modulus=s.param, component=name)
    return None


def is_defined(F: IdealPoly) -> bool:
    """F has coefficients in the total quotient ring of Z(+)M."""
    return _check_defined(F) is None


def ideal_eval(F: IdealPoly, z: IdealElem) -> IdealElem:
    """Closed form (f(x), f'(x) m + h(x))."""
    if F.spec != z.spec:
        raise SpecMismatch(f"{F.spec} vs {z.spec}")
    s = F.spec
    base = F.f(z.x)
    mod = s.add(s.scale(F.f.derivative()(z.x), z.m), F.h_at(z.x))
    return IdealElem(s, base, mod)


def ideal_horner(F: IdealPoly, z: IdealElem) -> IdealElem:
    """Horner evaluation using only ideal_mul and addition."""
    if F.spec != z.spec:
        raise SpecMismatch(f"{F.spec} vs {z.spec}")
    acc = IdealElem.make(F.spec, 0)
    for k in range(F.degree(), -1, -1):
        acc = ideal_mul(acc, z) + F.coefficient(k)
    return acc


def in_int_idealization(F: IdealPoly, k: int = 0) -> MembershipVerdict:
    """Membership in Int^(k)(Z(+)M) by the base/module decomposition."""
    s = F.spec
    if k < 0:
        raise ValueError("k must be nonnegative")
    if s.kind == "free":
        v = in_int_k(F.f, k + 1)
        if not v:
            return MembershipVerdict(False, Witness("component", component="f", inner=v.witness))
        for i, p in enumerate(F.h):
            v = in_int_k(p, k)
            if not v:
                return MembershipVerdict(False, Witness("component", component=f"h{i + 1}", inner=v.witness))
        return MEMBER
    w = _check_defined(F)
    if w is not None:
        return MembershipVerdict(False, w)
    v = in_int_k(F.f, k)
    if not v:
        return MembershipVerdict(False, Witness("component", component="f", inner=v.witness))
    return MEMBER


def grid_points(F: IdealPoly, k: int = 0) -> Iterable[tuple[int, IdealElem]]:
    s = F.spec
    for x in range(F.degree() + k + 2):
        for m in s.grid():
            yield x, IdealElem(s, Fraction(x), m)


def ideal_grid_oracle(F: IdealPoly, k: int = 0) -> MembershipVerdict:
    """Evaluate F, F', .., F^(k) by Horner at grid points of Z(+)M.

    Every component of the value is a polynomial of degree <= deg F in x and
    affine in the module element, so consecutive x-values and a module
    spanning set decide integrality.
    """
    w = _check_defined(F)
    if w is not None:
        return MembershipVerdict(False, w)
    for j in range(k + 1):
        G = F.derivative(j) if j else F
        for x, z in grid_points(F, k):
            val = ideal_horner(G, z)
            if not val.is_integral():
                return MembershipVerdict(False, Witness(
                    "ring-point", (j, x, F.spec.format(z.m)), note=f"value {val}", order=j))
    return MEMBER


# Z(+)Z and Z[eps] ----------------------------------------------------------

def to_dual_elem(z: IdealElem) -> GenDualElem:
    if z.spec != FreeZn(1):
        raise SpecMismatch("canonical bijection is for Z(+)Z")
    return GenDualElem((0,), {0: z.x, 1: z.m[0]})


def to_dual_poly(F: IdealPoly) -> GenDualPoly:
    if F.spec != FreeZn(1):
        raise SpecMismatch("canonical bijection is for Z(+)Z")
    return GenDualPoly((0,), {0: F.f, 1: F.h[0]})


def from_dual_elem(z: GenDualElem) -> IdealElem:
    if z.relations != (0,):
        raise SpecMismatch("canonical bijection is for Z[eps]")
    return IdealElem(FreeZn(1), z.coeff(0), (z.coeff(1),))


# Z[delta_1..delta_n] = Z[eps_1..eps_n]/(products) -------------------------

def delta_ring_eval(F: IdealPoly, z: IdealElem) -> IdealElem:
    """Evaluate in Z[eps_1..eps_n] and drop every eps_S with |S| >= 2.

    The quotient map onto Z[delta] is a ring map, so this is evaluation in
    Z[delta_1..delta_n] = Z(+)Z^n computed with the hyper-dual arithmetic.
    """
    s = F.spec
    if s.kind != "free":
        raise SpecMismatch("delta rings correspond to free modules")
    n = s.param
    rel = (0,) * n
    G = GenDualPoly(rel, {0: F.f, **{1 << i: F.h[i] for i in range(n)}})
    w = GenDualElem(rel, {0: z.x, **{1 << i: z.m[i] for i in range(n)}})
    val = eval_direct(G, w)
    return IdealElem(s, val.coeff(0), tuple(val.coeff(1 << i) for i in range(n)))


def in_int_delta_ring(F: IdealPoly) -> MembershipVerdict:
    """Grid oracle for Int(Z[delta_1..delta_n]) through the hyper-dual evaluator."""
    for x, z in grid_points(F, 0):
        val = delta_ring_eval(F, z)
        if not val.is_integral():
            return MembershipVerdict(False, Witness("ring-point", (0, x, F.spec.format(z.m)), note=f"value {val}"))
    return MEMBER


def base_only_dual_poly(f: Poly, n: int) -> GenDualPoly:
    return GenDualPoly((0,) * n, {0: f})


def find_first_vs_second_order(max_degree: int = 8) -> Poly:
    """Lowest-degree basis row of Int^(1)(Z) that is not in Int^(2)(Z)."""
    from .exact import lattice_contains
    from .lattices import basis_int_k
    first, second = basis_int_k(1, max_degree), basis_int_k(2, max_degree)
    for row in first.basis:
        if not lattice_contains(second.basis, row):
            return first.polys()[first.basis.index(row)]
    raise LookupError("no separating polynomial up to this degree")


def strict_zmodp_predicate(F: IdealPoly) -> bool:
    """Z_(p)[X] cap Int^(1)(Z); stricter than membership for odd p, kept for comparison."""
    s = F.spec
    if s.kind != "zmod":
        raise SpecMismatch("Z/p only")
    if _check_defined(F) is not None:
        return False
    return bool(in_int_k(F.f, 1))


# canned corollary checks ---------------------------------------------------

def _random_ideal_poly(rng, spec: ModuleSpec, k: int, degree: int = 6) -> IdealPoly:
    from .lattices import basis_int_k
    from .sampling import mixed_candidate, random_binomial, random_poly
    f = mixed_candidate(rng, basis_int_k(k + 1 if rng.random() < 0.6 else k, degree).basis, degree)
    if spec.kind == "free":
        hs = tuple(mixed_candidate(rng, basis_int_k(k, degree).basis, degree) for _ in range(spec.param))
        return IdealPoly.make(spec, f, hs)
    if spec.kind == "zmod":
        # mostly keep denominators prime to m so the interesting branch is exercised
        roll = rng.random()
        if roll < 0.6:
            f = _coprime_int_poly(rng, spec.param, degree)
            if roll < 0.15:
                f = f + Poly.binomial(rng.randint(1, degree)) * Fraction(1, rng.choice((1, 2, 3)))
        elif roll < 0.85:
            f = random_binomial(rng, degree, [d for d in (1, 1, 2, 3, 5, 6, 7) if gcd(d, spec.param) == 1])
        dens = (1, 1, 3, 5) if rng.random() < 0.9 else (2, 3)
        dens = [d for d in dens if gcd(d, spec.param) == 1] or [spec.param]
        return IdealPoly.make(spec, f, random_poly(rng, rng.randint(0, degree), dens))
    return IdealPoly.make(spec, f, random_poly(rng, rng.randint(0, degree), (1, 2, 7, 9)))


def _m_part(k: int, m: int) -> int:
    """Largest divisor of k! built from primes dividing m."""
    out, rest = 1, factorial(k)
    for p in range(2, m + 1):
        if m % p == 0 and all(p % q for q in range(2, p)):
            while rest % p == 0:
                rest //= p
                out *= p
    return out


def _coprime_int_poly(rng, m: int, degree: int) -> Poly:
    """Integer-valued with monomial denominators prime to m."""
    f = Poly()
    for k in range(degree + 1):
        f = f + Poly.binomial(k) * (rng.randint(-3, 3) * _m_part(k, m))
    return f


def canned_corollary_checks(seed: int = 0, count: int = 40) -> list[dict]:
    """Each corollary's decomposition predicate against evaluation oracles."""
    from .sampling import rng_for
    out: list[dict] = []

    def record(name, ok, **detail):
        out.append({"name": name, "status": "pass" if ok else "fail", **detail})

    # (n+1)-dimensional dual numbers Z[delta_1, delta_2] = Z(+)Z^2
    rng = rng_for(seed, "delta")
    spec = FreeZn(2)
    bad, members = [], 0
    for _ in range(count):
        F = _random_ideal_poly(rng, spec, 0)
        a, b, c = in_int_idealization(F), in_int_delta_ring(F), ideal_grid_oracle(F)
        members += a.member
        if not (a.member == b.member == c.member):
            bad.append(F.format())
    record("dual numbers Z[delta1,delta2] = Z(+)Z^2", not bad, samples=count, members=members, mismatches=bad[:3])

    # Z(+)Z/I for composite and prime moduli, and Z(+)Z/p specifically
    for m in (4, 6, 3):
        rng = rng_for(seed, "zmod", m)
        spec = ZmodM(m)
        bad, members = [], 0
        for _ in range(count):
            F = _random_ideal_poly(rng, spec, 0)
            a, b = in_int_idealization(F), ideal_grid_oracle(F)
            members += a.member
            if a.member != b.member:
                bad.append(F.format())
        record(f"Z(+)Z/{m}", not bad, samples=count, members=members, mismatches=bad[:3])

    # the stricter base condition Z_(p)[X] cap Int^(1)(Z) rejects C(X,2), which is a member
    F = IdealPoly.make(ZmodM(3), Poly.binomial(2))
    z = IdealElem.make(ZmodM(3), 0, 1)
    out.append({
        "name": "Z(+)Z/3 strict base condition",
        "status": "note",
        "polynomial": F.format(),
        "strict_predicate": strict_zmodp_predicate(F),
        "decomposition": in_int_idealization(F).member,
        "grid_oracle": ideal_grid_oracle(F).member,
        "sample_value": str(ideal_eval(F, z)),
    })

    # Z(+)Q
    rng = rng_for(seed, "Q")
    spec = RationalsQ()
    ex = IdealPoly.make(spec, Poly.binomial(2), Poly.x() ** 9 / 7)
    bad, members = [], 0
    for _ in range(count):
        F = _random_ideal_poly(rng, spec, 0)
        a, b = in_int_idealization(F), ideal_grid_oracle(F)
        members += a.member
        if a.member != b.member:
            bad.append(F.format())
    ok_ex = in_int_idealization(ex).member and ideal_grid_oracle(ex).member
    record("Z(+)Q", not bad and ok_ex, samples=count, members=members, example=ex.format(),
           example_member=ok_ex, mismatches=bad[:3])

    # k = 0 and k = 1 filtrations nest, and k = 1 matches the grid oracle
    rng = rng_for(seed, "nest")
    bad = []
    for spec in (FreeZn(1), FreeZn(2), ZmodM(4), RationalsQ()):
        for _ in range(count // 2):
            F = _random_ideal_poly(rng, spec, 1)
            a1, a0 = in_int_idealization(F, 1), in_int_idealization(F, 0)
            if (a1.member and not a0.member) or a1.member != ideal_grid_oracle(F, 1).member:
                bad.append(F.format())
    record("k=1 inside k=0", not bad, mismatches=bad[:3])

    # Z(+)Z = Z[eps]
    rng = rng_for(seed, "eps")
    bad = []
    for _ in range(count):
        F = _random_ideal_poly(rng, FreeZn(1), 0)
        if in_int_idealization(F).member != in_int_ext(to_dual_poly(F)).member:
            bad.append(F.format())
    record("Z(+)Z = Z[eps]", not bad, mismatches=bad[:3])
    return out


def delta_vs_eps_separation(n: int = 2) -> dict:
    """A base-only polynomial lying in Int(Z[delta]) but not in Int(Z[eps])."""
    f = find_first_vs_second_order()
    F = IdealPoly.make(FreeZn(n), f)
    in_delta = in_int_idealization(F).member and in_int_delta_ring(F).member
    G = base_only_dual_poly(f, n)
    eps_v = in_int_ext(G)
    from .ringext import dense_set_oracle
    dense = dense_set_oracle(G)
    return {
        "polynomial": format_binomial(f),
        "in_delta_ring": in_delta,
        "in_eps_ring": eps_v.member,
        "eps_dense_oracle": dense.member,
        "eps_witness": None if dense.witness is None else dense.witness.to_dict(),
        "separates": in_delta and not eps_v.member and not dense.member,
    }
