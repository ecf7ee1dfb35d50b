"""Operator, Taylor-expansion and interpolation identities in one variable."""
from __future__ import annotations

import math

from ..expansion import (
    interpolation_prefactor,
    interpolation_weight,
    quad_basis_values,
    quadratic_weight,
    taylor_weight,
)
from ..operator import WcnElement, apply_D, apply_D_iter, cooper_terms, degree_lowering_rhs, wp_basis, wp_basis_values
from .common import params_of, rand_complex, rand_primitives, tracked_iterate, tracked_sum
from .registry import Identity, register

N_OPERATOR_MAX = 5


def _element_sample(rng, ranges, extra=(), n_max=N_OPERATOR_MAX):
    pt = rand_primitives(rng, ranges)
    pt["n"] = int(rng.integers(0, n_max + 1))
    pt["a0"] = rand_complex(rng, ranges)
    pt["c"] = rand_complex(rng, ranges)
    pt["coeffs"] = [rand_complex(rng, ranges) for _ in range(pt["n"] + 1)]
    for name in extra:
        pt[name] = rand_complex(rng, ranges)
    return pt


def _element(pt):
    return WcnElement(pt["coeffs"], pt["a0"], pt["c"])


def element_value(pt, z, params, policy) -> complex:
    el = _element(pt)
    vals = wp_basis_values(el.a, el.c, el.n, z, params, policy)
    return tracked_sum((ck * bk for ck, bk in zip(el.coeffs, vals)), "element")


# -- degree lowering ---------------------------------------------------------

def degree_lowering_sides(pt, policy):
    params = params_of(pt)
    a, c, z, n = pt["a"], pt["c"], pt["z"], pt["n"]
    lhs = apply_D(wp_basis(a, c, n, params, policy), c, params, policy)(z)
    return [(lhs, degree_lowering_rhs(a, c, n, z, params, policy))]


def _degree_lowering_sample(rng, ranges):
    pt = rand_primitives(rng, ranges)
    for name in "acz":
        pt[name] = rand_complex(rng, ranges)
    pt["n"] = int(rng.integers(1, ranges.n_max + 1))
    return pt


register(Identity(
    id="degree-lowering",
    anchor="operator on a well-poised monomial: In particular, using (degree-lowering action)",
    summary="a,c,z free, n in 1..6",
    sampler=_degree_lowering_sample,
    sides=degree_lowering_sides, trials=100, tolerance=1e-9,
))


# -- explicit iterate --------------------------------------------------------

def _cooper_sample(rng, ranges):
    pt = _element_sample(rng, ranges, extra="z")
    pt["m"] = int(rng.integers(0, pt["n"] + 1))
    return pt


def cooper_sides(pt, policy):
    """Recursive vs explicit iterate, and annihilation of ``f`` by ``D^{(n+1)}``.

    The annihilation pair is ``(value + scale, scale)`` with ``scale`` the
    total magnitude of the explicit terms, so its residual is ``|value| / scale``
    up to rounding.
    """
    params = params_of(pt)
    f = _element(pt).evaluator(params, policy)
    c, z, m, n = pt["c"], pt["z"], pt["m"], pt["n"]
    recursive = apply_D_iter(f, c, m, params, policy)(z)
    explicit = tracked_iterate(f, c, m, z, params, policy)
    scale = math.fsum(abs(x) for x in cooper_terms(f, c, n + 1, z, params, policy))
    vanishing = apply_D_iter(f, c, n + 1, params, policy)(z)
    return [(recursive, explicit), (vanishing + scale, scale)]


register(Identity(
    id="cooper-explicit-vs-recursive",
    anchor="explicit iterated operator: on a function $f\\in W_c^n$ is given by",
    summary="random f in W_c^n, n in 0..5, m in 0..n; also D^{(n+1)} f = 0 against the term scale",
    sampler=_cooper_sample,
    sides=cooper_sides, trials=100, tolerance=1e-9,
))


# -- Taylor round trip --------------------------------------------------------

def taylor_roundtrip_sides(pt, policy):
    params = params_of(pt)
    f = _element(pt).evaluator(params, policy)
    a, c, n = pt["a"], pt["c"], pt["n"]
    t = params.t
    coeffs = [taylor_weight(a, c, k, params, policy)
              * tracked_iterate(f, c, k, a * t ** (2 * k), params, policy)
              for k in range(n + 1)]
    pairs = []
    for z in pt["probes"]:
        basis = wp_basis_values(a, c, n, z, params, policy)
        pairs.append((element_value(pt, z, params, policy),
                      tracked_sum((fk * bk for fk, bk in zip(coeffs, basis)), "expansion")))
    return pairs


def _roundtrip_sample(rng, ranges):
    pt = _element_sample(rng, ranges, extra="a")
    pt["probes"] = [rand_complex(rng, ranges) for _ in range(3)]
    return pt


register(Identity(
    id="taylor-roundtrip",
    anchor="elliptic Taylor theorem: If $f$ is in $W_c^n$",
    summary="random f in W_c^n (basis point a0), expanded about an independent a; n in 0..5; 3 probes",
    sampler=_roundtrip_sample,
    sides=taylor_roundtrip_sides, trials=100, tolerance=1e-9,
))


# -- interpolation -------------------------------------------------------------

def interpolation_sides(pt, policy):
    params = params_of(pt)
    f = _element(pt).evaluator(params, policy)
    a, c, n, z = pt["a"], pt["c"], pt["n"], pt["z"]
    q = params.q
    lhs = interpolation_prefactor(a, c, n, z, params, policy) * element_value(pt, z, params, policy)
    rhs = tracked_sum(interpolation_weight(a, c, n, k, z, params, policy) * f(a * q ** k)
                      for k in range(n + 1))
    return [(lhs, rhs)]


register(Identity(
    id="interpolation",
    anchor="elliptic interpolation: uniquely determined by its evaluation",
    summary="random f in W_c^n, nodes a q^k, n in 0..5",
    sampler=lambda rng, r: _element_sample(rng, r, extra="az"),
    sides=interpolation_sides, trials=100, tolerance=1e-9,
))


# -- quadratic basis -------------------------------------------------------------

def quadratic_taylor_sides(pt, policy):
    params = params_of(pt)
    f = _element(pt).evaluator(params, policy)
    c, n = pt["c"], pt["n"]
    coeffs = [quadratic_weight(c, k, params, policy)
              * tracked_iterate(f, c, k, params.t, params, policy)
              for k in range(n + 1)]
    pairs = []
    for z in pt["probes"]:
        basis = quad_basis_values(c, n, z, params, policy)
        pairs.append((element_value(pt, z, params, policy),
                      tracked_sum((fk * bk for fk, bk in zip(coeffs, basis)), "expansion")))
    return pairs


def _quadratic_sample(rng, ranges):
    pt = _element_sample(rng, ranges)
    pt["probes"] = [rand_complex(rng, ranges) for _ in range(3)]
    return pt


register(Identity(
    id="quadratic-taylor",
    anchor="quadratic-basis Taylor theorem: also considered the basis",
    summary="random f in W_c^n expanded in (q^{1/4}z, q^{1/4}/z; q^{1/2})_k/(cz, c/z)_k; n in 0..5; 3 probes",
    sampler=_quadratic_sample,
    sides=quadratic_taylor_sides, trials=100, tolerance=1e-9,
))
