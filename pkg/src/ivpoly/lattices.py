"""Degree-filtered Z-module bases of Int(Z; mZ) and Int^(k)(Z).

A polynomial of degree <= D is integer-valued iff its binomial coordinates
are integers, so each slice is a lattice in Z^(D+1) between m*Z^(D+1) (or
the derivative-denominator analogue) and Z^(D+1).  The extra conditions are
linear congruences on the coordinates, solved with ``congruence_lattice``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

from .exact import (IMatrix, congruence_lattice, hnf, is_sublattice, lattice_contains,
                    pivot_columns, pivots)
from .membership import in_int_k, in_int_mod
from .parsing import format_binomial
from .poly import Poly, binomial_derivative_matrix, from_binomial, to_binomial


@dataclass(frozen=True)
class IntLattice:
    """Rows are basis polynomials in binomial coordinates, in canonical HNF."""

    degree: int
    basis: IMatrix
    label: str = ""

    @property
    def pivots(self) -> list[int]:
        return pivots(self.basis)

    @property
    def pivot_columns(self) -> list[int]:
        return pivot_columns(self.basis)

    def polys(self) -> list[Poly]:
        return [from_binomial(r) for r in self.basis]

    def contains(self, f: Poly) -> bool:
        b = to_binomial(f)
        if b.degree is not None and b.degree > self.degree:
            return False
        if not b.integral_coefficients():
            return False
        v = [int(b.coeff(k)) for k in range(self.degree + 1)]
        return lattice_contains(self.basis, v)

    def extended(self, degree: int) -> IMatrix:
        """Basis rows padded with zeros to a higher degree bound."""
        return [r + [0] * (degree - self.degree) for r in self.basis]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "degree": self.degree,
            "hnf": self.basis,
            "pivots": self.pivots,
            "rows": [format_binomial(p) for p in self.polys()],
        }


def mod_congruences(m: int, D: int) -> list[tuple[list[int], int]]:
    """Congruences on binomial coordinates c_0..c_D for Int(Z; mZ).

    f(X+m) - f(X) = sum_j (sum_{k>j} C(m, k-j) c_k) C(X, j) by Vandermonde,
    and every such coordinate must vanish mod m.
    """
    conds = []
    for j in range(D + 1):
        row = [comb(m, k - j) if k > j else 0 for k in range(D + 1)]
        conds.append((row, m))
    return conds


def basis_int_mod(m: int, D: int) -> IntLattice:
    if m < 1 or D < 0:
        raise ValueError("need m >= 1 and D >= 0")
    basis = congruence_lattice(D + 1, mod_congruences(m, D))
    return IntLattice(D, basis, f"Int(Z;{m}Z), deg<={D}")


def derivative_congruences(k: int, D: int) -> list[tuple[list[int], int]]:
    """Integrality of the j-th derivative (j = 1..k) as congruences."""
    conds = []
    for order in range(1, k + 1):
        mat = binomial_derivative_matrix(D + 1, order)
        for row in mat:
            d = 1
            for v in row:
                d = lcm(d, v.denominator)
            if d > 1:
                conds.append(([int(v * d) for v in row], d))
    return conds


def basis_int_k(k: int, D: int) -> IntLattice:
    if k < 0 or D < 0:
        raise ValueError("need k >= 0 and D >= 0")
    basis = congruence_lattice(D + 1, derivative_congruences(k, D))
    return IntLattice(D, basis, f"Int^({k})(Z), deg<={D}")


def basis_int_mod_deriv(m: int, D: int) -> IntLattice:
    """{f in Int(Z; mZ) : f' in Int(Z; mZ)}, degree <= D."""
    if m < 1 or D < 0:
        raise ValueError("need m >= 1 and D >= 0")
    mat = binomial_derivative_matrix(D + 1, 1)
    conds = mod_congruences(m, D) + derivative_congruences(1, D)
    for row, mod in mod_congruences(m, D):
        # row . (mat c) = 0 mod m, cleared of denominators
        lin = [sum(row[i] * mat[i][j] for i in range(D + 1)) for j in range(D + 1)]
        d = 1
        for v in lin:
            d = lcm(d, v.denominator)
        conds.append(([int(v * d) for v in lin], mod * d))
    return IntLattice(D, congruence_lattice(D + 1, conds), f"Int^(1)(Z;{m}Z), deg<={D}")


def identity_lattice(D: int) -> IntLattice:
    return IntLattice(D, [[int(i == j) for j in range(D + 1)] for i in range(D + 1)], f"Int(Z), deg<={D}")


def lattice_from_polys(polys, D: int, label: str = "") -> IntLattice:
    """HNF of the Z-span of integer-valued polynomials of degree <= D."""
    rows = []
    for p in polys:
        b = to_binomial(p)
        if b.degree is not None and b.degree > D:
            raise ValueError(f"degree {b.degree} exceeds bound {D}")
        if not b.integral_coefficients():
            raise ValueError("polynomial is not integer-valued")
        rows.append([int(b.coeff(j)) for j in range(D + 1)])
    return IntLattice(D, hnf(rows, D + 1), label)


def mod4_conjectured_generators(D: int) -> list[Poly]:
    """Z, ZX, 2C(X,2), 2C(X,3), 2C(X,4)+C(X,2), 2C(X,5)+C(X,3), then 4C(X,k)."""
    B = Poly.binomial
    gens = [B(0), B(1), B(2) * 2, B(3) * 2, B(4) * 2 + B(2), B(5) * 2 + B(3)]
    gens += [B(k) * 4 for k in range(6, D + 1)]
    return [g for g in gens if g.degree is not None and g.degree <= D]


@dataclass
class ConjectureReport:
    degree: int
    computed: IntLattice
    conjectured: IntLattice
    generators_member: list[bool]
    conjecture_in_computed: bool
    verdict: str
    witness: Poly | None = None
    witness_side: str = ""
    index_ratio: Fraction = field(default=Fraction(1))

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "verdict": self.verdict,
            "generators_member": self.generators_member,
            "conjecture_in_computed": self.conjecture_in_computed,
            "index_ratio": str(self.index_ratio),
            "witness": None if self.witness is None else {
                "binomial": format_binomial(self.witness),
                "in": self.witness_side,
            },
            "computed": self.computed.to_dict(),
            "conjectured": self.conjectured.to_dict(),
        }


def conjecture_check_mod4(D: int) -> ConjectureReport:
    """Compare the conjectured Z-basis of Int(Z; 4Z) with the computed slice."""
    if D < 6:
        raise ValueError("the conjectured pattern needs D >= 6")
    gens = mod4_conjectured_generators(D)
    members = [bool(in_int_mod(g, 4)) for g in gens]
    computed = basis_int_mod(4, D)
    conj = lattice_from_polys(gens, D, f"conjectured Int(Z;4Z), deg<={D}")
    sub = is_sublattice(conj.basis, computed.basis)
    ratio = Fraction(_index(conj.basis), _index(computed.basis))
    witness, side = None, ""
    if conj.basis == computed.basis:
        verdict = "EQUAL"
    else:
        verdict = "CONJECTURE-PROPER-SUBLATTICE" if sub else "INCOMPARABLE"
        for r in computed.basis:
            if not lattice_contains(conj.basis, r):
                witness, side = from_binomial(r), "computed-not-conjectured"
                break
        if witness is None:
            for r in conj.basis:
                if not lattice_contains(computed.basis, r):
                    witness, side = from_binomial(r), "conjectured-not-computed"
                    break
    return ConjectureReport(D, computed, conj, members, sub, verdict, witness, side, ratio)


def _index(h: IMatrix) -> int:
    out = 1
    for p in pivots(h):
        out *= p
    return out


def self_consistent(lat: IntLattice, kind: str, param: int) -> bool:
    """Every basis row passes the defining membership oracle."""
    test = (lambda f: in_int_mod(f, param)) if kind == "mod" else (lambda f: in_int_k(f, param))
    return all(bool(test(p)) for p in lat.polys())
