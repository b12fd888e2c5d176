"""The acceptance criteria as runnable checks, grouped into suites.

Every check is a top-level function ``check(seed) -> CheckResult`` so that
suites can be fanned out to worker processes.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable

from .exact import hnf
from .findiff import delta, delta_at, delta_by
from .idealization import (FreeZn, IdealElem, RationalsQ, ZmodM, _random_ideal_poly, canned_corollary_checks,
                           delta_vs_eps_separation, from_dual_elem, ideal_eval, ideal_horner, ideal_mul,
                           in_int_idealization, is_defined, to_dual_elem, to_dual_poly)
from .lattices import basis_int_k, basis_int_mod, basis_int_mod_deriv, conjecture_check_mod4, lattice_from_polys
from .membership import (in_int, in_int_mod, in_int_multiset, replay, sampled_multiset)
from .partitions import bell
from .poly import MultiPoly, Poly, from_binomial, to_binomial
from .ringext import (GenDualElem, GenDualPoly, closed_term_count, dense_set_oracle, eval_closed_dual,
                      eval_direct, in_int_ext, pullback_iso)
from .sampling import mixed_candidate, random_binomial, random_from_lattice, random_poly, rng_for
from .torsion import (ZmodN, count_by_enumeration, count_by_image, count_by_kernel, int_equals_MX,
                      is_principal_slicewise, kempner_count, vanishing_ideal)

DEFAULT_SEED = 20240601


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    duration: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key}: {self.title}"

    def to_dict(self) -> dict:
        return {"key": self.key, "title": self.title, "passed": self.passed, "details": self.details}


# 1 ------------------------------------------------------------------------

def check_c1(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = rng_for(seed, "c1")
    roundtrip_bad = 0
    for _ in range(1000):
        f = random_poly(rng, rng.randint(0, 12), (1, 2, 3, 5, 7, 12))
        if from_binomial(to_binomial(f)) != f:
            roundtrip_bad += 1
    agree_bad, members = 0, 0
    for _ in range(500):
        f = random_binomial(rng, rng.randint(0, 8), (1, 1, 1, 1, 2, 3, 6))
        v = in_int(f).member
        brute = all(f(Fraction(x)).denominator == 1 for x in range((f.degree or 0) + 1))
        members += v
        agree_bad += v != brute
    return CheckResult("c1", "binomial basis round-trip and integrality criterion",
                       roundtrip_bad == 0 and agree_bad == 0,
                       {"roundtrip_samples": 1000, "roundtrip_failures": roundtrip_bad,
                        "criterion_samples": 500, "members": members, "disagreements": agree_bad})


# 2 ------------------------------------------------------------------------

def _random_elem(rng, relations) -> GenDualElem:
    return GenDualElem(relations, {m: Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
                                   for m in range(1 << len(relations))})


def _random_ring_poly_free(rng, relations, degree, denominators=(1, 2, 3)) -> GenDualPoly:
    return GenDualPoly(relations, {m: random_poly(rng, rng.randint(0, degree), denominators)
                                   for m in range(1 << len(relations)) if rng.random() < 0.8})


def check_c2(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = rng_for(seed, "c2")
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 4)
        rel = (0,) * n
        F = _random_ring_poly_free(rng, rel, 5)
        z = _random_elem(rng, rel)
        bad += eval_closed_dual(F, z) != eval_direct(F, z)
    counts, full_counts = {}, {}
    X = Poly.x()
    for n in range(1, 5):
        rel = (0,) * n
        z = GenDualElem(rel, {m: m + 2 for m in range(1 << n)})
        counts[n] = closed_term_count(GenDualPoly(rel, {0: X ** (n + 3)}), z)
        full_counts[n] = closed_term_count(GenDualPoly(rel, {m: X ** (n + 3) + m for m in range(1 << n)}), z)
    bell_ok = all(counts[n] == bell(n + 1) for n in counts)
    full_ok = all(full_counts[n] == bell(n + 2) - bell(n + 1) for n in full_counts)
    return CheckResult("c2", "closed set-partition evaluation and Bell counts",
                       bad == 0 and bell_ok and full_ok,
                       {"samples": 500, "disagreements": bad,
                        "single_component_terms": counts, "expected_bell": {n: bell(n + 1) for n in counts},
                        "all_component_terms": full_counts})


# 3 ------------------------------------------------------------------------

def _component_lattices(relations, D):
    from .ringext import component_multiset
    out = {}
    for mask in range(1 << len(relations)):
        S = component_multiset(relations, mask)
        if all(s == 0 for s in S):
            out[mask] = basis_int_k(len(S), D).basis
        elif len(S) == 1:
            out[mask] = basis_int_mod(abs(S[0]), D).basis if S[0] else basis_int_k(1, D).basis
        else:
            # Z[X] lies in every Int(Z; S)
            out[mask] = hnf([[int(to_binomial(Poly.x() ** k).coeff(j)) for j in range(D + 1)]
                             for k in range(D + 1)], D + 1)
    return out


def random_ring_poly(rng, relations, D: int) -> GenDualPoly:
    """Biased toward members: each component is a lattice member, one may be nudged."""
    comps = {}
    for mask, L in _component_lattices(relations, D).items():
        if rng.random() < 0.15:
            continue
        comps[mask] = mixed_candidate(rng, L, D) if rng.random() < 0.3 else random_from_lattice(rng, L)
    return GenDualPoly(relations, comps)


def check_c3(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = rng_for(seed, "c3")
    per_n = {}
    ok = True
    for n in (1, 2, 3):
        rel = (0,) * n
        bad, members = 0, 0
        for _ in range(200):
            F = random_ring_poly(rng, rel, 5)
            a, b = in_int_ext(F).member, dense_set_oracle(F, 5).member
            members += a
            bad += a != b
        per_n[n] = {"samples": 200, "members": members, "disagreements": bad}
        ok &= bad == 0
    return CheckResult("c3", "componentwise criterion vs polynomially dense subset", ok, per_n)


# 4 ------------------------------------------------------------------------

def check_c4(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = rng_for(seed, "c4")
    prod_bad = chain_bad = comm_bad = 0
    for _ in range(200):
        f = random_poly(rng, rng.randint(0, 6), (1, 2, 3))
        g = random_poly(rng, rng.randint(0, 6), (1, 2, 3))
        gF, fF = MultiPoly.from_poly(g, 2), MultiPoly.from_poly(f, 2)
        lhs = delta(f * g).g
        rhs = delta(f).g * gF.shift_var(0, 1, 1) + fF * delta(g).g
        prod_bad += lhs != rhs
    for _ in range(200):
        f = random_poly(rng, rng.randint(0, 4), (1, 2, 3))
        g = random_poly(rng, rng.randint(0, 4), (1, 2, 3))
        gF = MultiPoly.from_poly(g, 2)
        lhs = delta(f.compose(g)).g
        rhs = delta_by(f, gF.shift_var(0, 1, 1) - gF, gF) * delta(g).g
        chain_bad += lhs != rhs
    for _ in range(200):
        f = random_poly(rng, rng.randint(0, 7), (1, 2, 5))
        y, z = rng.randint(-3, 3), rng.randint(-3, 3)
        comm_bad += delta_at(delta_at(f, y), z) != delta_at(delta_at(f, z), y)
    return CheckResult("c4", "difference operator product, chain and commutation laws",
                       prod_bad == chain_bad == comm_bad == 0,
                       {"product_failures": prod_bad, "chain_failures": chain_bad,
                        "commutation_failures": comm_bad, "samples_each": 200})


# 5 ------------------------------------------------------------------------

def check_c5(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = rng_for(seed, "c5")
    out = {}
    ok = True
    for r in (2, 3, 4, 6):
        L = basis_int_mod(r, 8).basis
        bad, members, unreplayed = 0, 0, 0
        for _ in range(300):
            f = mixed_candidate(rng, L, 8)
            a, b = in_int_multiset(f, [r]), in_int_mod(f, r)
            members += b.member
            bad += a.member != b.member
            for v in (a, b):
                if not v.member and not replay(f, v.witness):
                    unreplayed += 1
        out[r] = {"samples": 300, "members": members, "disagreements": bad, "unreplayable_witnesses": unreplayed}
        ok &= bad == 0 and unreplayed == 0
    return CheckResult("c5", "multiset recursion vs congruence criterion", ok, out)


def check_sampling(seed: int = DEFAULT_SEED) -> CheckResult:
    """Symbolic discharge of the y-quantifier vs direct sampling of y in -5..5."""
    rng = rng_for(seed, "sampling")
    contradictions, missed, members, total = 0, 0, 0, 0
    for S in ([2], [3], [0], [2, 0], [0, 2], [2, 3], [0, 0], [4]):
        # a nearby lattice, so candidates mix members and non-members
        L = basis_int_k(len(S), 6).basis if 0 in S else basis_int_mod(prod(S), 6).basis
        for _ in range(25):
            f = mixed_candidate(rng, L, 6)
            exact = in_int_multiset(f, S).member
            sampled = sampled_multiset(f, S)
            total += 1
            members += exact
            if exact and not sampled:
                contradictions += 1
            if sampled and not exact:
                missed += 1
    return CheckResult("s3-sampling", "symbolic y-discharge vs sampled y", contradictions == 0,
                       {"samples": total, "members": members, "contradictions": contradictions,
                        "sampling_missed_failures": missed})


def check_mixed(seed: int = DEFAULT_SEED) -> CheckResult:
    """Relations (r, 0): base component is Int(Z; r) intersected with {f' in Int(Z; r)}."""
    rng = rng_for(seed, "mixed")
    bad, members = 0, 0
    for r in (2, 3, 4):
        lat = basis_int_mod_deriv(r, 6)
        for _ in range(30):
            f = mixed_candidate(rng, lat.basis, 6)
            a = in_int_multiset(f, [r, 0]).member
            b = in_int_multiset(f, [r]).member and in_int_multiset(f.derivative(), [r]).member
            members += a
            bad += a != b or a != lat.contains(f)
    return CheckResult("s3-mixed", "mixed rho/eps ring base component", bad == 0,
                       {"samples": 90, "members": members, "disagreements": bad})


# 6 ------------------------------------------------------------------------

def zx_plus_p_int(p: int, D: int):
    gens = [Poly.x() ** k for k in range(D + 1)] + [Poly.binomial(k) * p for k in range(D + 1)]
    return lattice_from_polys(gens, D)


def check_c6(seed: int = DEFAULT_SEED) -> CheckResult:
    two = basis_int_mod(2, 8)
    eq2 = two.basis == zx_plus_p_int(2, 8).basis
    patterns = {}
    ok = eq2
    for p in (2, 3, 5):
        lat = basis_int_mod(p, 10)
        expected = [1 if k < p else p for k in range(11)]
        literal = [1 if k <= p else p for k in range(11)]
        w = in_int_mod(Poly.binomial(p), p)
        patterns[p] = {
            "pivots": lat.pivots,
            "matches_zx_plus_p_int": lat.basis == zx_plus_p_int(p, 10).basis,
            "matches_boundary_below_p": lat.pivots == expected,
            "matches_boundary_at_p": lat.pivots == literal,
            "C(X,p)_witness": None if w.member else w.witness.to_dict(),
            "witness_replays": (not w.member) and replay(Poly.binomial(p), w.witness),
        }
        ok &= (patterns[p]["matches_zx_plus_p_int"] and patterns[p]["matches_boundary_below_p"]
               and patterns[p]["witness_replays"])
    return CheckResult("c6", "worked bases Z[X] + p Int(Z)", ok,
                       {"mod2_deg8_equals_zx_plus_2int": eq2, "patterns": patterns,
                        "note": "pivot p already at C(X,p): C(X,p) is not congruence-preserving mod p"})


# 7 ------------------------------------------------------------------------

def check_c7(seed: int = DEFAULT_SEED) -> CheckResult:
    r1 = conjecture_check_mod4(12)
    r2 = conjecture_check_mod4(12)
    det = r1.to_dict() == r2.to_dict()
    ok = all(r1.generators_member) and r1.conjecture_in_computed and det
    return CheckResult("c7", "conjectured basis of Int(Z; 4Z) at degree 12", ok,
                       {"verdict": r1.verdict, "deterministic": det, **r1.to_dict()})


# 8 ------------------------------------------------------------------------

def check_c8(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = rng_for(seed, "c8")
    out, ok = {}, True
    for r in (2, 3, 4):
        bad, members = 0, 0
        for _ in range(200):
            F = random_ring_poly(rng, (r,), 6)
            a = in_int_ext(F).member
            b = pullback_iso(F).fiber_ok
            members += a
            bad += a != b
        out[r] = {"samples": 200, "members": members, "disagreements": bad}
        ok &= bad == 0
    # trivial kernel: (f, f + r g) = (0, 0) forces f = g = 0
    kernel_ok = True
    for r in (2, 3, 4, -2):
        for _ in range(20):
            F = _random_ring_poly_free(rng, (r,), 4)
            f, h = pullback_iso(F).pair
            if f.is_zero() and h.is_zero() and F.components:
                kernel_ok = False
    out["kernel_trivial"] = kernel_ok
    return CheckResult("c8", "pullback fiber condition vs componentwise criterion", ok and kernel_ok, out)


# 9 ------------------------------------------------------------------------

def check_c9(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = rng_for(seed, "c9")
    out, ok = {}, True
    for spec in (FreeZn(1), FreeZn(3), ZmodM(4), ZmodM(5), RationalsQ()):
        bad = 0
        for _ in range(300):
            F = _random_ideal_poly(rng, spec, 0)
            while not is_defined(F):
                F = _random_ideal_poly(rng, spec, 0)
            z = IdealElem.make(spec, rng.randint(-5, 5), _random_module_elem(rng, spec))
            a, b = ideal_eval(F, z), ideal_horner(F, z)
            bad += a != b
        out[str(spec)] = {"samples": 300, "disagreements": bad}
        ok &= bad == 0
    bad, members, mulbad = 0, 0, 0
    for _ in range(300):
        F = _random_ideal_poly(rng, FreeZn(1), 0)
        a, b = in_int_idealization(F).member, in_int_ext(to_dual_poly(F)).member
        members += a
        bad += a != b
        u = IdealElem.make(FreeZn(1), rng.randint(-4, 4), (rng.randint(-4, 4),))
        v = IdealElem.make(FreeZn(1), rng.randint(-4, 4), (rng.randint(-4, 4),))
        mulbad += from_dual_elem(to_dual_elem(u) * to_dual_elem(v)) != ideal_mul(u, v)
    out["Z(+)Z vs Z[eps]"] = {"samples": 300, "members": members, "disagreements": bad,
                              "product_mismatches": mulbad}
    ok &= bad == 0 and mulbad == 0
    canned = canned_corollary_checks(seed)
    out["corollaries"] = canned
    ok &= all(c["status"] != "fail" for c in canned)
    sep = delta_vs_eps_separation()
    out["delta_vs_eps"] = sep
    ok &= sep["separates"]
    return CheckResult("c9", "idealization evaluation, Z[eps] bijection, corollaries", ok, out)


def _random_module_elem(rng, spec):
    if spec.kind == "free":
        return tuple(rng.randint(-5, 5) for _ in range(spec.param))
    if spec.kind == "zmod":
        return rng.randrange(spec.param)
    return Fraction(rng.randint(-5, 5), rng.randint(1, 6))


# 10 -----------------------------------------------------------------------

def check_c10(seed: int = DEFAULT_SEED) -> CheckResult:
    out = {}
    fields_ok = True
    for p in (2, 3, 5):
        sl = vanishing_ideal(ZmodN(p), p)
        gens = sl.factor_generators(0)
        target = tuple(c % p for c in [0, -1] + [0] * (p - 2) + [1])
        got = [tuple(c % p for c in g) for g in gens]
        out[f"F_{p}"] = {"generators": sl.to_dict()["generators"], "is_X^p-X": got == [target]}
        fields_ok &= got == [target] and sl.replay()
    gilmer = {n: is_principal_slicewise(ZmodN(n)) for n in range(2, 31)}
    gilmer_bad = [n for n, r in gilmer.items() if not r.agrees]
    counts = {}
    counts_ok = True
    for n in range(2, 13):
        R = ZmodN(n)
        k, im, kem = count_by_kernel(R), count_by_image(R), kempner_count(R)
        row = {"kernel": k, "image": im, "kempner": kem}
        if kem <= 50_000:
            row["enumeration"] = count_by_enumeration(R)
        counts[n] = row
        counts_ok &= len(set(row.values())) == 1
    mx = int_equals_MX(FreeZn(1), 2)
    mx_ok = (not mx.equal) and mx.witness == Poly.binomial(2)
    out.update({
        "gilmer_mismatches": gilmer_bad,
        "nonprincipal": [n for n, r in gilmer.items() if not r.principal],
        "function_counts": counts,
        "int_equals_MX(Z)": mx.to_dict(),
    })
    return CheckResult("c10", "vanishing ideals, Gilmer criterion, polynomial function counts",
                       fields_ok and not gilmer_bad and counts_ok and mx_ok, out)


CHECKS: dict[str, Callable[[int], CheckResult]] = {
    "c1": check_c1, "c2": check_c2, "c3": check_c3, "c4": check_c4, "c5": check_c5,
    "s3-sampling": check_sampling, "s3-mixed": check_mixed,
    "c6": check_c6, "c7": check_c7, "c8": check_c8, "c9": check_c9, "c10": check_c10,
}

SUITES = {
    "section2": ["c2", "c3"],
    "section3": ["c1", "c4", "c5", "s3-sampling", "s3-mixed", "c6", "c7", "c8"],
    "section4": ["c9"],
    "section5": ["c10"],
}
SUITES["all"] = ["c1", "c2", "c3", "c4", "c5", "s3-sampling", "s3-mixed", "c6", "c7", "c8", "c9", "c10"]

ANCHORS = {
    "c1": "binomial basis of Int(Z)",
    "c2": "closed evaluation formulas on hyper-dual numbers; Bell-number term counts",
    "c3": "Int(Z[eps_1..eps_n]) decomposition; polynomially dense subset",
    "c4": "product and chain rules for the difference operator; commutation",
    "c5": "Int(Z; rZ) = Int(Z; r)",
    "s3-sampling": "quantifier over y in the recursive definition of Int(Z; S)",
    "s3-mixed": "mixed rho/eps decomposition",
    "c6": "Int(Z; pZ) = Z[X] + p Int(Z)",
    "c7": "conjectured basis of Int(Z; 4Z)",
    "c8": "fiber product description of Int(Z[rho])",
    "c9": "idealization theorem and corollaries",
    "c10": "vanishing ideals over finite rings; principality iff reduced",
}


def run_check(key: str, seed: int = DEFAULT_SEED) -> CheckResult:
    t = time.perf_counter()
    r = CHECKS[key](seed)
    r.duration = time.perf_counter() - t
    return r


def threads() -> int:
    try:
        return max(1, int(os.environ.get("IVPOLY_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, seed: int = DEFAULT_SEED, workers: int | None = None) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    keys = SUITES[name]
    workers = threads() if workers is None else workers
    if workers > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(keys))) as ex:
            return list(ex.map(run_check, keys, [seed] * len(keys)))
    return [run_check(k, seed) for k in keys]
