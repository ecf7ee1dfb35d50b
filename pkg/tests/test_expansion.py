import cmath
import itertools

import numpy as np
import pytest

from ellipsum import (
    DegreeOverflow,
    MultivarConfig,
    WcnElement,
    interpolate_multi,
    quadratic_taylor_coeffs,
    reconstruct_multi,
    rel_residual,
    taylor_coeffs,
    taylor_coeffs_multi,
)
from ellipsum.expansion import (
    interpolate_value,
    interpolation_prefactor_multi,
    quad_basis_values,
    wp_basis_values,
)

A, C = 0.8 * cmath.exp(0.5j), 1.1 * cmath.exp(-0.9j)
COEFFS = [0.3, -1.2 + 0.4j, 0.7j, 0.5, 1.1 - 0.2j]


@pytest.mark.parametrize("method", ["explicit", "recursive"])
def test_taylor_recovers_known_coefficients(params, method):
    f = WcnElement(COEFFS, A, C).evaluator(params)
    got = taylor_coeffs(f, A, C, len(COEFFS) - 1, params, method=method)
    assert np.allclose(got.f_k, COEFFS, rtol=0, atol=1e-9)
    z = 1.3 * cmath.exp(2.2j)
    assert rel_residual(got.evaluate(z, params), f(z)) < 1e-9


def test_taylor_about_other_point(params):
    # expanding about a different a gives a different basis but the same function
    f = WcnElement(COEFFS, A, C).evaluator(params)
    b = 0.6 * cmath.exp(-1.4j)
    got = taylor_coeffs(f, b, C, len(COEFFS) - 1, params)
    z = 0.9 * cmath.exp(1.9j)
    assert rel_residual(got.evaluate(z, params), f(z)) < 1e-9


def test_degree_overflow(params):
    f = WcnElement(COEFFS, A, C).evaluator(params)
    with pytest.raises(DegreeOverflow):
        taylor_coeffs(f, A, C, 2, params)


def test_quadratic_recovers_known_coefficients(params):
    coeffs = [1.0, 0.4 - 0.3j, -0.8j, 0.25]
    f = lambda z: sum(ck * bk for ck, bk in zip(coeffs, quad_basis_values(C, 3, z, params)))
    got = quadratic_taylor_coeffs(f, C, 3, params)
    assert np.allclose(got.f_k, coeffs, rtol=0, atol=1e-9)


def test_interpolation_reproduces_function(params):
    f = WcnElement(COEFFS, A, C).evaluator(params)
    z = 1.2 * cmath.exp(-0.8j)
    assert rel_residual(interpolate_value(f, 0.7 * cmath.exp(1.0j), C, 4, z, params), f(z)) < 1e-9


def test_multivariate_roundtrip_and_interpolation(params):
    cfg = MultivarConfig([A, 0.7 + 0.4j], [C, 0.9 - 0.5j], [2, 3])
    rng = np.random.default_rng(3)
    tensor = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))

    def f(zs):
        b0 = wp_basis_values(cfg.a[0], cfg.c[0], 2, zs[0], params)
        b1 = wp_basis_values(cfg.a[1], cfg.c[1], 3, zs[1], params)
        return sum(tensor[i, j] * b0[i] * b1[j] for i, j in itertools.product(range(3), range(4)))

    got = taylor_coeffs_multi(f, cfg, params)
    assert np.allclose(got, tensor, rtol=0, atol=1e-8)
    zs = [1.1 * cmath.exp(0.3j), 0.8 * cmath.exp(-2.0j)]
    assert rel_residual(reconstruct_multi(got, cfg, zs, params), f(zs)) < 1e-9
    nodes = MultivarConfig([0.6 * cmath.exp(1.2j), 0.9 * cmath.exp(-0.2j)], cfg.c, cfg.n)
    lhs = interpolate_multi(f, nodes, zs, params)
    assert rel_residual(lhs, interpolation_prefactor_multi(nodes, zs, params) * f(zs)) < 1e-9
