from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from preserver_lab import LinearOperator, Poly1, QQi

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

small_int = st.integers(-5, 5)
small_frac = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 4))
gauss = st.builds(QQi, small_frac, small_frac)


def real_polys(max_deg=6):
    return st.lists(small_int, min_size=2, max_size=max_deg + 1).map(Poly1).filter(
        lambda p: p.degree >= 1)


def complex_polys(max_deg=6):
    return st.lists(gauss, min_size=2, max_size=max_deg + 1).map(Poly1).filter(
        lambda p: p.degree >= 1)


def real_rooted(max_deg=6):
    return st.lists(small_frac, min_size=1, max_size=max_deg).map(
        lambda rs: Poly1.from_roots([QQi(r) for r in rs]))


def disk_operator(n):
    """T(z^k) = (n - k) z^k + k z^(k-1), i.e. T f = n f - z f' + f'."""
    z = Poly1.z()
    return LinearOperator.from_function(
        lambda k: (lambda f: f * n - z * f.derivative() + f.derivative())(Poly1.monomial(k)), n)


@pytest.fixture
def z():
    return Poly1.z()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
