import cmath

import pytest

from conftest import naive_fact
from ellipsum import EllipticParams, PoleHit, elliptic_binomial, qp_fact, qp_fact_multi, rel_residual
from ellipsum.pochhammer import qp_fact_pshift_residual


def test_positive_n_matches_naive(params):
    a = 0.9 * cmath.exp(0.7j)
    for n in range(7):
        assert rel_residual(qp_fact(a, n, params), naive_fact(a, n, params.q, params.p)) < 1e-13


def test_negative_n_is_reciprocal(params):
    a = 1.2 * cmath.exp(-0.4j)
    q = params.q
    for n in range(1, 5):
        assert rel_residual(qp_fact(a, -n, params), 1 / naive_fact(a * q ** (-n), n, q, params.p)) < 1e-12


def test_negative_n_pole():
    params = EllipticParams(0.5 ** 0.25, 0)
    with pytest.raises(PoleHit):
        qp_fact(params.q ** 2, -2, params)   # factor theta(1) = 0


def test_half_base_and_multi(params):
    a, b = 0.8 + 0.1j, 0.5 - 0.6j
    half = qp_fact(a, 4, params, base=params.q_half)
    assert rel_residual(half, naive_fact(a, 4, params.q_half, params.p)) < 1e-13
    assert qp_fact_multi([a, b], 3, params) == pytest.approx(qp_fact(a, 3, params) * qp_fact(b, 3, params))


def test_p_shift(params):
    assert qp_fact_pshift_residual(0.7 + 0.4j, 5, params) < 1e-12


def gaussian_binomial(m, k, q):
    # q-Pascal: [m, k] = [m-1, k-1] + q^k [m-1, k]
    if k < 0 or k > m:
        return 0
    if m == 0:
        return 1
    return gaussian_binomial(m - 1, k - 1, q) + q ** k * gaussian_binomial(m - 1, k, q)


def test_elliptic_binomial_reduces_to_gaussian(basic_params):
    q = basic_params.q
    for m in range(7):
        for k in range(m + 1):
            assert rel_residual(elliptic_binomial(m, k, basic_params), gaussian_binomial(m, k, q)) < 1e-13


def test_elliptic_binomial_symmetric(params):
    for m in range(6):
        for k in range(m + 1):
            assert rel_residual(elliptic_binomial(m, k, params), elliptic_binomial(m, m - k, params)) < 1e-12
