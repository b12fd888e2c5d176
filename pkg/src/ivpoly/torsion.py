"""Polynomial torsion over finite rings Z/n1 x ... x Z/nt.

A polynomial over R = prod Z/n_i is a tuple of integer coefficient vectors,
one per factor, and vanishes on R iff each factor's vector vanishes on
Z/n_i.  For one factor the vanishing polynomials of degree <= D form a
lattice L in Z^(D+1) containing n Z^(D+1); the slice itself is L / n Z^(D+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, gcd, prod

from .exact import IMatrix, congruence_lattice, hnf, inverse_mod, lattice_contains, lattice_equal, pivots
from .idealization import ModuleSpec
from .lattices import identity_lattice
from .poly import Poly, from_binomial

MAX_FUNCTION_COUNT_RING = 64


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class FiniteRingSpec:
    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli or any(n < 2 for n in self.moduli):
            raise ValueError("factors must be Z/n with n >= 2")

    @property
    def size(self) -> int:
        return prod(self.moduli)

    def __str__(self):
        return " x ".join(f"Z/{n}" for n in self.moduli)

    def elements(self):
        from itertools import product
        return product(*(range(n) for n in self.moduli))

    def is_reduced(self) -> bool:
        """Brute force: no nonzero nilpotent in any factor."""
        for n in self.moduli:
            for a in range(1, n):
                if pow(a, n, n) == 0:
                    return False
        return True


def ZmodN(n: int) -> FiniteRingSpec:
    return FiniteRingSpec((n,))


def ProductOfZmod(ns) -> FiniteRingSpec:
    return FiniteRingSpec(tuple(ns))


def parse_ring_spec(text: str) -> FiniteRingSpec:
    """'Z/6', 'F_5' or 'Z/2 x Z/3'."""
    parts = []
    for piece in text.replace("*", "x").split("x"):
        piece = piece.strip().replace(" ", "")
        for prefix in ("Z/", "F_", "F"):
            if piece.startswith(prefix):
                piece = piece[len(prefix):]
                break
        if not piece.isdigit():
            raise ValueError(f"cannot read ring factor {piece!r}")
        parts.append(int(piece))
    return FiniteRingSpec(tuple(parts))


def evaluation_conditions(n: int, D: int) -> list[tuple[list[int], int]]:
    return [([pow(x, j, n) for j in range(D + 1)], n) for x in range(n)]


def factor_vanishing_lattice(n: int, D: int) -> IMatrix:
    """Lattice of integer coefficient vectors whose polynomial vanishes on Z/n."""
    return congruence_lattice(D + 1, evaluation_conditions(n, D))


def _symmetric(c: int, n: int) -> int:
    c %= n
    return c - n if c > n // 2 else c


@dataclass
class VanishingIdealSlice:
    ring: FiniteRingSpec
    degree: int
    lattices: list[IMatrix]

    def factor_generators(self, i: int) -> list[tuple[int, ...]]:
        """Basis rows of the i-th factor that are nonzero modulo n_i."""
        n = self.ring.moduli[i]
        out = []
        for row in self.lattices[i]:
            r = tuple(_symmetric(c, n) for c in row)
            if any(r):
                out.append(r)
        return out

    def generators(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(i, g) for i in range(len(self.ring.moduli)) for g in self.factor_generators(i)]

    def factor_size(self, i: int) -> int:
        n = self.ring.moduli[i]
        return n ** (self.degree + 1) // prod(pivots(self.lattices[i]))

    def size(self) -> int:
        return prod(self.factor_size(i) for i in range(len(self.ring.moduli)))

    def is_zero(self) -> bool:
        return self.size() == 1

    def contains(self, poly: tuple[tuple[int, ...], ...]) -> bool:
        return all(lattice_contains(L, list(v) + [0] * (self.degree + 1 - len(v)))
                   for L, v in zip(self.lattices, poly))

    def replay(self) -> bool:
        """Every generator vanishes at every point of its factor."""
        for i, g in self.generators():
            n = self.ring.moduli[i]
            for x in range(n):
                if sum(c * pow(x, j, n) for j, c in enumerate(g)) % n:
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "ring": str(self.ring),
            "degree": self.degree,
            "size": self.size(),
            "generators": [{"factor": f"Z/{self.ring.moduli[i]}", "poly": format_mod(g, self.ring.moduli[i])}
                           for i, g in self.generators()],
        }


def format_mod(coeffs, n: int) -> str:
    from .parsing import format_poly
    return format_poly(Poly([_symmetric(c, n) for c in coeffs])) + f" (mod {n})"


def vanishing_ideal(R: FiniteRingSpec, D: int) -> VanishingIdealSlice:
    if D < 0:
        raise ValueError("D must be nonnegative")
    return VanishingIdealSlice(R, D, [factor_vanishing_lattice(n, D) for n in R.moduli])


# principality -------------------------------------------------------------

def _min_monic_mod_p(L: IMatrix, p: int) -> tuple[int, ...] | None:
    """Lowest-degree nonzero element of (L mod p), scaled monic."""
    echelon: dict[int, list[int]] = {}
    for row in L:
        v = [c % p for c in row]
        while any(v):
            d = max(j for j, c in enumerate(v) if c)
            if d in echelon:
                e = echelon[d]
                f = v[d] * inverse_mod(e[d], p) % p
                v = [(a - f * b) % p for a, b in zip(v, e)]
            else:
                echelon[d] = v
                break
    if not echelon:
        return None
    d = min(echelon)
    v = echelon[d]
    inv = inverse_mod(v[d], p)
    return tuple(c * inv % p for c in v[: d + 1])


def _crt_idempotent(n: int, q: int) -> int:
    """e = 1 mod q, e = 0 mod n/q for a prime power q exactly dividing n."""
    r = n // q
    return r * inverse_mod(r, q) % n


@dataclass
class PrincipalityResult:
    ring: FiniteRingSpec
    degree: int
    principal: bool
    reduced: bool
    generator: list[tuple[int, ...]] | None = None
    certificates: list[dict] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return self.principal == self.reduced

    def to_dict(self) -> dict:
        d = {"ring": str(self.ring), "degree": self.degree, "principal": self.principal,
             "reduced": self.reduced, "agrees": self.agrees, "certificates": self.certificates}
        if self.generator is not None:
            d["generator"] = [format_mod(g, n) for g, n in zip(self.generator, self.ring.moduli)]
        return d


def _factor_principal(n: int, D: int, L: IMatrix, certs: list[dict]) -> tuple[int, ...] | None:
    """Generator of the Z/n slice, or None with a certificate appended."""
    X = Poly.x()
    g = [0] * (D + 1)
    spans: list[list[int]] = [[n * int(i == j) for j in range(D + 1)] for i in range(D + 1)]
    for p, e in factorize(n):
        q = p ** e
        u = _min_monic_mod_p(L, p)
        target = tuple(int(c) % p for c in (X ** p - X).coeffs)
        if u != target:
            # p^(e-1)(X^p - X) vanishes, so a generator would reduce to a divisor of X^p - X;
            # but the reduction must also have the minimal degree of the image, which is larger.
            wit = [0] * (D + 1)
            ep = _crt_idempotent(n, q)
            for j, c in enumerate((X ** p - X).coeffs):
                wit[j] = int(c) * (q // p) * ep % n
            certs.append({
                "factor": f"Z/{n}", "local": f"Z/{q}",
                "min_monic_mod_p": format_mod(u, p) if u else None,
                "expected": format_mod(target, p),
                "vanishing_witness": format_mod(wit, n),
                "witness_in_slice": lattice_contains(L, wit),
            })
            return None
        ep = _crt_idempotent(n, q)
        for j, c in enumerate(target):
            g[j] = (g[j] + c * ep) % n
        for shift in range(D - p + 1):
            row = [0] * (D + 1)
            for j, c in enumerate(target):
                row[j + shift] = c * ep % n
            spans.append(row)
    if not lattice_equal(spans, L, D + 1):
        certs.append({"factor": f"Z/{n}", "note": "local generators do not span the slice"})
        return None
    return tuple(_symmetric(c, n) for c in g)


def is_principal_slicewise(R: FiniteRingSpec, D: int | None = None) -> PrincipalityResult:
    if D is None:
        D = R.size
    if D < R.size:
        raise ValueError(f"need D >= |R| = {R.size}")
    sl = vanishing_ideal(R, D)
    certs: list[dict] = []
    gens = []
    ok = True
    for n, L in zip(R.moduli, sl.lattices):
        g = _factor_principal(n, D, L, certs)
        if g is None:
            ok = False
        gens.append(g)
    return PrincipalityResult(R, D, ok, R.is_reduced(), gens if ok else None, certs)


# polynomial functions -----------------------------------------------------

def _check_cap(R: FiniteRingSpec):
    if R.size > MAX_FUNCTION_COUNT_RING:
        raise ValueError(f"|R| = {R.size} exceeds cap {MAX_FUNCTION_COUNT_RING}")


def count_by_kernel(R: FiniteRingSpec) -> int:
    """|R[X]_{<|R|}| / |vanishing slice|, one factor at a time."""
    _check_cap(R)
    N = R.size
    sl = vanishing_ideal(R, N - 1)
    out = 1
    for i, n in enumerate(R.moduli):
        out *= n ** N // sl.factor_size(i)
    return out


def count_by_image(R: FiniteRingSpec) -> int:
    """Index computation on the lattice spanned by evaluation vectors of X^j."""
    _check_cap(R)
    N = R.size
    out = 1
    for n in R.moduli:
        rows = [[pow(x, j, n) for x in range(n)] for j in range(N)]
        rows += [[n * int(i == j) for j in range(n)] for i in range(n)]
        out *= n ** n // prod(pivots(hnf(rows, n)))
    return out


def count_by_enumeration(R: FiniteRingSpec, limit: int = 200_000) -> int:
    """Breadth-first closure of the zero function under adding x -> x^j."""
    _check_cap(R)
    N = R.size
    total = 1
    for n in R.moduli:
        gens = [tuple(pow(x, j, n) for x in range(n)) for j in range(N)]
        seen = {tuple([0] * n)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for f in frontier:
                for g in gens:
                    h = tuple((a + b) % n for a, b in zip(f, g))
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            if len(seen) > limit:
                raise ValueError("enumeration limit exceeded")
            frontier = nxt
        total *= len(seen)
    return total


def kempner_count(R: FiniteRingSpec) -> int:
    return prod(prod(n // gcd(n, factorial(k)) for k in range(n)) for n in R.moduli)


def poly_function_count(R: FiniteRingSpec, method: str = "kernel") -> int:
    methods = {"kernel": count_by_kernel, "image": count_by_image,
               "enumerate": count_by_enumeration, "kempner": kempner_count}
    if method not in methods:
        raise ValueError(f"unknown method {method!r}")
    return methods[method](R)


# Int(Z, M) = M[X] ----------------------------------------------------------

@dataclass
class TorsionResult:
    module: str
    degree: int
    equal: bool
    witness: Poly | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        from .parsing import format_binomial
        return {"module": self.module, "degree": self.degree, "equal": self.equal,
                "witness": None if self.witness is None else format_binomial(self.witness),
                "reason": self.reason}


def int_equals_MX(M: ModuleSpec, D: int) -> TorsionResult:
    """Whether every integer-valued module polynomial of degree <= D has module coefficients."""
    if M.kind == "free":
        # Int(Z) in binomial coordinates is Z^(D+1); Z[X] is spanned by the X^k
        from .poly import to_binomial
        zx = [[int(to_binomial(Poly.x() ** k).coeff(j)) for j in range(D + 1)] for k in range(D + 1)]
        zx = hnf(zx, D + 1)
        full = identity_lattice(D).basis
        if lattice_equal(zx, full, D + 1):
            return TorsionResult(str(M), D, True, reason="binomial and monomial lattices agree")
        for row in full:
            if not lattice_contains(zx, row):
                return TorsionResult(str(M), D, False, from_binomial(row),
                                     "Q/Z has polynomial torsion")
    if M.kind == "rationals":
        return TorsionResult(str(M), D, True, reason="T(M)/M = 0")
    return TorsionResult(str(M), D, True, reason="units act invertibly, T(M) = M")


def submodule_vanishing_size(n: int, d: int, D: int) -> int:
    """Size of the slice of vanishing polynomials with coefficients in dZ/nZ."""
    if n % d:
        raise ValueError("d must divide n")
    conds = evaluation_conditions(n, D) + [([int(i == j) for j in range(D + 1)], d) for i in range(D + 1)]
    L = congruence_lattice(D + 1, conds)
    return (n // d) ** (D + 1) * d ** (D + 1) // prod(pivots(L)) if L else 1
