import os

import pytest
from hypothesis import HealthCheck, settings

from zsigram.dynamics import normalize
from zsigram.exact import Poly, RatFunc

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

X = Poly.gen()
T = Poly.gen()


def qt_x():
    """x as a polynomial with Q(t) coefficients."""
    return Poly([RatFunc(0), RatFunc(1)])


def qmap(f, g=1):
    return normalize(f, g)


def qt(c):
    return RatFunc.coerce(c)


@pytest.fixture
def x2p1():
    return normalize(X**2 + 1)


@pytest.fixture
def x2pt():
    return normalize(Poly([RatFunc(T), RatFunc(0), RatFunc(1)]))


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  {detail}")
