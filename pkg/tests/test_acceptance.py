"""Acceptance criteria 1-10 at exact tolerance.

Each criterion prints one PASS/FAIL line (shown in the pytest terminal
summary, or directly when this file is run as a script).
"""

import pytest

from ivpoly.checks import DEFAULT_SEED, run_check
from ivpoly.lattices import basis_int_mod

LINES: dict[int, str] = {}

CRITERIA = {
    1: ("c1", "binomial round-trip (1000) and integrality criterion vs evaluation (500)"),
    2: ("c2", "closed dual evaluation vs Horner (500) and Bell-number term counts"),
    3: ("c3", "componentwise membership vs dense-set oracle, n = 1, 2, 3 (200 each)"),
    4: ("c4", "difference operator product, chain and commutation laws (200 each)"),
    5: ("c5", "multiset recursion vs congruence criterion, r = 2, 3, 4, 6 (300 each)"),
    6: ("c6", "worked bases Z[X] + p Int(Z) and prime pivot pattern"),
    7: ("c7", "Int(Z; 4Z) conjecture at degree 12"),
    8: ("c8", "pullback fiber condition vs componentwise membership, r = 2, 3, 4"),
    9: ("c9", "idealization evaluation, Z[eps] bijection, corollaries, delta vs eps"),
    10: ("c10", "vanishing ideals, principality vs reducedness, function counts"),
}


def record(n, passed, extra=""):
    key, title = CRITERIA[n]
    LINES[n] = f"criterion {n:>2} [{'PASS' if passed else 'FAIL'}] {title}" + (f" -- {extra}" if extra else "")
    print(LINES[n])


@pytest.fixture(scope="module")
def results():
    return {}


def _run(n, results):
    key = CRITERIA[n][0]
    if key not in results:
        results[key] = run_check(key, DEFAULT_SEED)
    return results[key]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 7, 8, 9, 10])
def test_criterion(n, results):
    r = _run(n, results)
    extra = f"verdict {r.details['verdict']}" if n == 7 else ""
    record(n, r.passed, extra)
    assert r.passed, r.details


def test_criterion_6(results):
    r = _run(6, results)
    literal = all(p["matches_boundary_at_p"] for p in r.details["patterns"].values())
    # the literal boundary (pivot 1 through k = p) cannot hold: C(X,p) fails the congruence
    # test mod p, and the same criterion's Z[X] + p Int(Z) equality forces pivot p at k = p
    record(6, literal, "as written 'pivot 1 for k <= p' is contradicted by C(X,p); "
                       f"Z[X] + p Int(Z) equality and boundary 'k < p' {'PASS' if r.passed else 'FAIL'}")
    assert r.passed, r.details
    assert not literal


@pytest.mark.xfail(strict=True, reason="literal criterion 6 boundary; see decisions ledger")
@pytest.mark.parametrize("p", [2, 3, 5])
def test_criterion_6_literal_boundary(p):
    assert basis_int_mod(p, 10).pivots == [1 if k <= p else p for k in range(11)]


def test_supplementary_checks():
    for key in ("s3-sampling", "s3-mixed"):
        r = run_check(key, DEFAULT_SEED)
        assert r.passed, (key, r.details)


def test_reproducible_with_seed():
    a, b = run_check("c5", 11), run_check("c5", 11)
    assert a.to_dict() | {"duration": 0} == b.to_dict() | {"duration": 0}


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
