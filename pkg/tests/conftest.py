from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from ivpoly import Poly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fractions(denominators=(1, 2, 3, 4, 5, 6), span=6):
    return st.builds(Fraction, st.integers(-span, span), st.sampled_from(denominators))


def polys(max_degree=6, denominators=(1, 2, 3, 4, 5, 6)):
    return st.lists(fractions(denominators), min_size=1, max_size=max_degree + 1).map(Poly)


def int_matrices(max_rows=4, max_cols=4, span=9):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(-span, span), min_size=n, max_size=n),
                           min_size=1, max_size=max_rows))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
