import pytest

from ivpoly.checks import ANCHORS, CHECKS, SUITES, run_check, run_suite, threads


def test_suites_cover_every_check():
    assert set(SUITES["all"]) == set(CHECKS) == set(ANCHORS)
    sections = [k for name, keys in SUITES.items() if name != "all" for k in keys]
    assert sorted(sections) == sorted(SUITES["all"])


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("section7")


def test_threads_env(monkeypatch):
    monkeypatch.setenv("IVPOLY_THREADS", "3")
    assert threads() == 3
    monkeypatch.setenv("IVPOLY_THREADS", "zero")
    assert threads() == 1


def test_parallel_matches_serial():
    serial = [run_check("c1")]
    keys = ["c1", "c4"]
    from ivpoly import checks
    checks.SUITES["_pair"] = keys
    try:
        par = run_suite("_pair", workers=2)
    finally:
        del checks.SUITES["_pair"]
    assert [r.key for r in par] == keys and all(r.passed for r in par)
    assert serial[0].to_dict() | {"duration": 0} == par[0].to_dict() | {"duration": 0}
