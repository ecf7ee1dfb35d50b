import cmath

from ellipsum import (
    WcnElement,
    apply_D,
    apply_D_iter,
    apply_D_multi,
    cooper_explicit,
    cooper_explicit_multi,
    rel_residual,
    wp_basis,
)
from ellipsum.operator import degree_lowering_rhs, symmetry_probe

A, C = 0.8 * cmath.exp(0.5j), 1.1 * cmath.exp(-0.9j)
ZS = [0.9 * cmath.exp(0.7j), 1.2 * cmath.exp(-2.1j)]


def test_constants_are_annihilated(params):
    g = apply_D(lambda z: 2.5 + 1j, C, params)
    assert all(abs(g(z)) == 0 for z in ZS)


def test_degree_lowering_closed_form(params):
    for n in range(1, 5):
        g = apply_D(wp_basis(A, C, n, params), C, params)
        for z in ZS:
            assert rel_residual(g(z), degree_lowering_rhs(A, C, n, z, params)) < 1e-11


def test_explicit_equals_recursive(params):
    f = WcnElement([0.3, -1.2 + 0.4j, 0.7j, 0.5, 1.1 - 0.2j], A, C).evaluator(params)
    for m in range(5):
        for z in ZS:
            assert rel_residual(cooper_explicit(f, C, m, z, params), apply_D_iter(f, C, m, params)(z)) < 1e-9


def test_annihilation_above_degree(params):
    f = WcnElement([0.3, -1.2 + 0.4j, 0.7j], A, C).evaluator(params)
    top = abs(cooper_explicit(f, C, 2, ZS[0], params))
    assert abs(cooper_explicit(f, C, 3, ZS[0], params)) < 1e-9 * top


def test_iterate_preserves_symmetry(params):
    f = WcnElement([1.0, 0.4 - 0.3j, 0.8j], A, C).evaluator(params)
    assert symmetry_probe(f, ZS) < 1e-13
    assert symmetry_probe(apply_D_iter(f, C, 2, params), ZS) < 1e-10


def test_separable_multivariate_factorises(params):
    g1 = WcnElement([0.5, 1.0 - 0.2j, 0.3j], A, C).evaluator(params)
    g2 = WcnElement([1.0, -0.4, 0.6 + 0.1j, 0.2], 0.7 + 0.4j, 0.9 - 0.5j).evaluator(params)
    f = lambda zs: g1(zs[0]) * g2(zs[1])
    cs = [C, 0.9 - 0.5j]
    for ns in [(1, 2), (2, 1), (2, 3)]:
        want = cooper_explicit(g1, cs[0], ns[0], ZS[0], params) * cooper_explicit(g2, cs[1], ns[1], ZS[1], params)
        assert rel_residual(cooper_explicit_multi(f, cs, ns, ZS, params), want) < 1e-10
        fwd = apply_D_multi(f, cs, ns, params)(ZS)
        rev = apply_D_multi(f, cs, ns, params, order=[1, 0])(ZS)
        assert rel_residual(fwd, want) < 1e-9
        assert rel_residual(rev, want) < 1e-9
