import cmath

import numpy as np
import pytest

from ellipsum import EllipticParams, TruncationPolicy, ZeroArgument, cubic_fact_1, cubic_fact_2, gamma, rel_residual
from ellipsum.cubic import (
    cooper_toh_residual_1,
    cooper_toh_residual_2,
    degeneration_check,
    empirical_order,
    gamma_bruteforce,
    gamma_functional_eq_residual,
    gamma_splitting_residuals,
    gamma_symmetry_residuals,
)
from ellipsum.errors import TruncationExhausted


def test_matches_double_loop_oracle():
    rng = np.random.default_rng(11)
    for _ in range(40):
        z, a = (complex(r * np.exp(1j * f)) for r, f in zip(rng.uniform(0.3, 1.5, 2), rng.uniform(0, 6.3, 2)))
        p = complex(rng.uniform(0.05, 0.5) * np.exp(1j * rng.uniform(0, 6.3)))
        assert rel_residual(gamma(z, a, p), gamma_bruteforce(z, a, p)) < 1e-12


def test_far_peak_matches_oracle():
    # magnitude peak well away from the origin
    z, a, p = 3.0 * cmath.exp(0.4j), 0.2 * cmath.exp(-1.0j), 0.6
    assert rel_residual(gamma(z, a, p), gamma_bruteforce(z, a, p, radius=60)) < 1e-12


def test_borwein_lambert_series():
    # gamma(1, 1; p) = 1 + 6 sum_{n>=1} (p^{3n-2}/(1 - p^{3n-2}) - p^{3n-1}/(1 - p^{3n-1}))
    p = 0.35 * cmath.exp(0.9j)
    lam = 1 + 6 * sum(p ** (3 * n - 2) / (1 - p ** (3 * n - 2)) - p ** (3 * n - 1) / (1 - p ** (3 * n - 1))
                      for n in range(1, 200))
    assert rel_residual(gamma(1, 1, p), lam) < 1e-13


def test_structure_at_fixed_point():
    z, a = 0.8 * cmath.exp(0.6j), 1.2 * cmath.exp(-0.3j)
    s = 0.3 ** (1 / 6) * cmath.exp(0.2j)
    p = s ** 6
    assert max(gamma_symmetry_residuals(z, a, p)) < 1e-12
    for lam in range(-2, 3):
        for mu in range(-2, 3):
            assert gamma_functional_eq_residual(z, a, s, lam, mu) < 1e-11
    assert max(gamma_splitting_residuals(z, a, s)) < 1e-12
    assert cooper_toh_residual_1(0.9 + 0.2j, 1.1 - 0.5j, 0.7 + 0.6j, 0.8j, p) < 1e-11
    assert cooper_toh_residual_2(z, 0.9 + 0.3j, 1.2 - 0.1j, 0.6 + 0.7j, s) < 1e-11


def test_cubic_factorials_low_order():
    params = EllipticParams(0.5 ** 0.25 * cmath.exp(0.2j), 0.2 ** (1 / 6))
    a, z = 0.9 + 0.3j, 1.1 - 0.2j
    assert cubic_fact_1(a, z, 0, params) == 1
    assert cubic_fact_1(a, z, 1, params) == gamma(z, a, params.p)
    assert cubic_fact_2(a, z, 1, params) == gamma(a, z, params.p_third)
    # n = 2 nodes: gamma(z q^{-1/2}, a q^{1/2}) gamma(z q^{1/2}, a q^{1/2})
    h = params.q_half
    two = gamma(z / h, a * h, params.p) * gamma(z * h, a * h, params.p)
    assert rel_residual(cubic_fact_1(a, z, 2, params), two) < 1e-14


def test_first_degeneration_converges_linearly():
    res = degeneration_check("first", 0.7 + 0.2j, 1.1 - 0.4j, 0.5 ** 0.25, 3, [1e-3, 1e-4, 1e-5])
    assert res[0] > res[1] > res[2]
    assert all(0.8 < x < 1.2 for x in empirical_order([1e-3, 1e-4, 1e-5], res))


def test_errors():
    with pytest.raises(ZeroArgument):
        gamma(0, 1, 0.3)
    with pytest.raises(TruncationExhausted):
        gamma(1.0, 1.0, 0.3, TruncationPolicy(max_factors=2))
    with pytest.raises(ValueError):
        degeneration_check("third", 0.5, 0.5, 0.8, 1, [1e-3])
    assert gamma(0.4, 0.7, 0) == 1
