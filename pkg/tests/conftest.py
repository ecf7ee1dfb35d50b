import cmath
import sys

import pytest

from ellipsum import EllipticParams


@pytest.fixture
def params():
    # |q| = 0.45, |p| = 0.2, generic phases
    return EllipticParams(0.45 ** 0.25 * cmath.exp(0.31j), 0.2 ** (1 / 6) * cmath.exp(0.17j))


@pytest.fixture
def basic_params():
    return EllipticParams(0.5 ** 0.25 * cmath.exp(0.23j), 0)


def naive_theta(x, p, factors=500):
    out = 1 + 0j
    pj = 1 + 0j
    for _ in range(factors):
        out *= (1 - pj * x) * (1 - pj * p / x)
        pj *= p
    return out


def naive_fact(a, n, q, p, factors=500):
    out = 1 + 0j
    for k in range(n):
        out *= naive_theta(a * q ** k, p, factors)
    return out


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
