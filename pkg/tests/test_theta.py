import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_theta
from ellipsum import NomeOutOfRange, TruncationPolicy, ZeroArgument, rel_residual, theta, theta_multi
from ellipsum.errors import TruncationExhausted
from ellipsum.theta import addition_formula_residual, euler_infinite_product

moduli = st.floats(0.3, 1.5)
phases = st.floats(0, 2 * cmath.pi)
nomes = st.floats(0.01, 0.6)
# with a real positive nome the zeros p^k sit on the positive real axis
off_axis = st.floats(0.3, 2 * cmath.pi - 0.3)


def polar(r, phi):
    return r * cmath.exp(1j * phi)


@given(moduli, phases, nomes, phases)
@settings(max_examples=60, deadline=None)
def test_theta_matches_naive_product(r, phi, pm, pphi):
    x, p = polar(r, phi), polar(pm, pphi)
    assert rel_residual(theta(x, p), naive_theta(x, p)) < 1e-13


@given(moduli, off_axis, nomes)
@settings(max_examples=60, deadline=None)
def test_inversion_and_p_shift(r, phi, p):
    x = polar(r, phi)
    assert rel_residual(theta(1 / x, p), -theta(x, p) / x) < 1e-12
    assert rel_residual(theta(p * x, p), -theta(x, p) / x) < 1e-12


def test_triple_product():
    # theta(x; p) (p; p)_inf = sum_k (-1)^k p^{k(k-1)/2} x^k
    p, x = 0.3 * cmath.exp(0.4j), 0.8 * cmath.exp(1.1j)
    series = sum((-1) ** k * p ** (k * (k - 1) // 2) * x ** k for k in range(-60, 61))
    assert rel_residual(theta(x, p) * euler_infinite_product(p, p), series) < 1e-13


def test_basic_case_and_zeros():
    assert theta(0.7 + 0.2j, 0) == pytest.approx(1 - (0.7 + 0.2j))
    assert abs(theta(1.0, 0.3)) == 0
    assert theta_multi([], 0.3) == 1


def test_addition_formula():
    vals = [0.8 + 0.3j, 1.1 - 0.4j, 0.6 + 0.9j, -0.7 + 0.5j]
    assert addition_formula_residual(*vals, 0.25 + 0.1j) < 1e-12


def test_errors():
    with pytest.raises(ZeroArgument):
        theta(0, 0.3)
    with pytest.raises(NomeOutOfRange):
        theta(0.5, 1.0)
    with pytest.raises(TruncationExhausted):
        theta(0.5, 0.9, TruncationPolicy(max_factors=3))
