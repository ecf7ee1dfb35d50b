import cmath
import math

import pytest

from conftest import naive_fact, naive_theta
from ellipsum import BalanceViolation, BalancedQuintuple, EllipticParams, VwpSpec, ft_rhs, rel_residual, vwp_sum
from ellipsum.series import csum, ft_10v9_spec, jackson_8phi7_residual, vwp_terms


def naive_vwp(a1, upper, n, q, p):
    total = 0j
    for k in range(n + 1):
        num = naive_fact(a1, k, q, p)
        den = naive_fact(q, k, q, p)
        for a in upper:
            num *= naive_fact(a, k, q, p)
            den *= naive_fact(a1 * q / a, k, q, p)
        total += naive_theta(a1 * q ** (2 * k), p) / naive_theta(a1, p) * num / den * q ** k
    return total


def quintuple(params, n):
    return BalancedQuintuple.solve(0.7 * cmath.exp(0.3j), 1.1 * cmath.exp(-1.2j),
                                   0.9 * cmath.exp(2.0j), 1.3 * cmath.exp(0.8j), n, params)


def test_vwp_matches_naive_loop(params):
    for n in range(5):
        spec = ft_10v9_spec(quintuple(params, n), params)
        assert rel_residual(vwp_sum(spec, params), naive_vwp(spec.a1, spec.upper, n, params.q, params.p)) < 1e-12


def test_frenkel_turaev_fixed_points(params):
    for n in range(7):
        q5 = quintuple(params, n)
        assert rel_residual(vwp_sum(ft_10v9_spec(q5, params), params), ft_rhs(q5, params)) < 1e-10


def test_jackson_basic_case(basic_params):
    for n in range(7):
        assert jackson_8phi7_residual(quintuple(basic_params, n), basic_params) < 1e-11


def test_n_zero_is_one(params):
    spec = ft_10v9_spec(quintuple(params, 0), params)
    assert vwp_terms(spec, params) == [1]


def test_balance_violations(params):
    q = params.q
    with pytest.raises(BalanceViolation):
        vwp_sum(VwpSpec(0.5, [0.3, 0.4, 0.6, 0.7, q ** -2], 2), params)
    with pytest.raises(BalanceViolation):
        vwp_sum(VwpSpec(0.5, [0.3, q ** -3], 2), params)


def test_csum_compensates():
    vals = [1e16, 1.0, -1e16, 1j * 1e16, 1j, -1j * 1e16]
    assert csum(vals) == 1 + 1j
    assert math.isclose(csum([0.1] * 10).real, 1.0, rel_tol=0, abs_tol=0)
