"""Multivariate Taylor, operator, interpolation and Karlsson-Minton identities."""
from __future__ import annotations

import itertools
import math

from ..expansion import interpolation_prefactor, interpolation_weight, taylor_weight
from ..operator import apply_D_multi, cooper_terms_multi, wp_basis_values
from .common import Kit, params_of, rand_complex, rand_primitives, tracked_sum
from .registry import Identity, register

MULTI_TRIALS = 50
MULTI_TOL = 1e-8


def _nodes(ns):
    return itertools.product(*(range(n + 1) for n in ns))


def _multi_sample(rng, ranges, extra=()):
    """Random tensor element of W_c^n: ``m`` in {2, 3}, ``n_i`` in 0..n_multi_max."""
    pt = rand_primitives(rng, ranges)
    m = int(rng.integers(2, 4))
    pt["n"] = [int(rng.integers(0, ranges.n_multi_max + 1)) for _ in range(m)]
    pt["a0"] = [rand_complex(rng, ranges) for _ in range(m)]
    pt["c"] = [rand_complex(rng, ranges) for _ in range(m)]
    pt["coeffs"] = [rand_complex(rng, ranges) for _ in _nodes(pt["n"])]
    for name in extra:
        pt[name] = [rand_complex(rng, ranges) for _ in range(m)]
    return pt


def multi_element(pt, params, policy):
    """``f(z) = sum_K coeff_K prod_i basis_{k_i}(z_i)`` in the basis at ``a0``, memoised on ``z``."""
    cache = {}
    ns = pt["n"]

    def f(zs):
        key = tuple(zs)
        if key not in cache:
            vals = [wp_basis_values(a, c, n, z, params, policy)
                    for a, c, n, z in zip(pt["a0"], pt["c"], ns, zs)]
            terms = []
            for coeff, ks in zip(pt["coeffs"], _nodes(ns)):
                for i, k in enumerate(ks):
                    coeff = coeff * vals[i][k]
                terms.append(coeff)
            cache[key] = tracked_sum(terms, "element")
        return cache[key]
    return f


# -- Taylor ------------------------------------------------------------------

def multivar_taylor_sides(pt, policy):
    params = params_of(pt)
    f = multi_element(pt, params, policy)
    a, c, ns = pt["a"], pt["c"], pt["n"]
    t = params.t
    norms = [[taylor_weight(ai, ci, k, params, policy) for k in range(n + 1)]
             for ai, ci, n in zip(a, c, ns)]
    coeffs = {}
    for ks in _nodes(ns):
        zs = [ai * t ** (2 * k) for ai, k in zip(a, ks)]
        val = tracked_sum(cooper_terms_multi(f, c, ks, zs, params, policy), "operator")
        for i, k in enumerate(ks):
            val *= norms[i][k]
        coeffs[ks] = val
    pairs = []
    for zs in pt["probes"]:
        basis = [wp_basis_values(ai, ci, n, z, params, policy) for ai, ci, n, z in zip(a, c, ns, zs)]
        terms = []
        for ks, val in coeffs.items():
            for i, k in enumerate(ks):
                val = val * basis[i][k]
            terms.append(val)
        pairs.append((f(zs), tracked_sum(terms, "expansion")))
    return pairs


def _multivar_taylor_sample(rng, ranges):
    pt = _multi_sample(rng, ranges, extra="a")
    m = len(pt["n"])
    pt["probes"] = [[rand_complex(rng, ranges) for _ in range(m)] for _ in range(2)]
    return pt


register(Identity(
    id="multivar-taylor",
    anchor="multivariate Taylor theorem: If $f(z_1,\\dots, z_m)$ is in",
    summary="random tensor element of W_c^n, m in {2,3}, n_i in 0..3, expanded about independent a_i; 2 probes",
    sampler=_multivar_taylor_sample,
    sides=multivar_taylor_sides, trials=MULTI_TRIALS, tolerance=MULTI_TOL,
))


# -- explicit operator ----------------------------------------------------------

def multivar_operator_sides(pt, policy):
    """Recursive product iterate (two variable orders) vs the explicit nested sum.

    Also checks that raising the first iterate past ``n_1`` annihilates ``f``,
    against the magnitude of the explicit terms.
    """
    params = params_of(pt)
    f = multi_element(pt, params, policy)
    c, ks, zs, ns = pt["c"], pt["k"], pt["z"], pt["n"]
    m = len(ns)
    forward = apply_D_multi(f, c, ks, params, policy)(zs)
    backward = apply_D_multi(f, c, ks, params, policy, order=range(m - 1, -1, -1))(zs)
    explicit = tracked_sum(cooper_terms_multi(f, c, ks, zs, params, policy), "operator")
    over = [ns[0] + 1] + list(ks[1:])
    terms = cooper_terms_multi(f, c, over, zs, params, policy)
    scale = math.fsum(abs(x) for x in terms)
    vanishing = apply_D_multi(f, c, over, params, policy)(zs)
    return [(forward, explicit), (backward, explicit), (vanishing + scale, scale)]


def _multivar_operator_sample(rng, ranges):
    pt = _multi_sample(rng, ranges, extra="z")
    pt["k"] = [int(rng.integers(0, n + 1)) for n in pt["n"]]
    return pt


register(Identity(
    id="multivar-explicit-operator",
    anchor="explicit multivariate iterate: For $\\mathbf n=(n_1,\\dots, n_m)$, $\\mathbf c=(c_1,\\dots, c_m)$,",
    summary="random tensor element, m in {2,3}, n_i in 0..3, k_i in 0..n_i; both variable orders; annihilation past n_1",
    sampler=_multivar_operator_sample,
    sides=multivar_operator_sides, trials=MULTI_TRIALS, tolerance=MULTI_TOL,
))


# -- interpolation ----------------------------------------------------------------

def multivar_interpolation_sides(pt, policy):
    params = params_of(pt)
    f = multi_element(pt, params, policy)
    a, c, ns, zs = pt["a"], pt["c"], pt["n"], pt["z"]
    q = params.q
    lhs = f(zs)
    for ai, ci, n, z in zip(a, c, ns, zs):
        lhs *= interpolation_prefactor(ai, ci, n, z, params, policy)
    weights = [[interpolation_weight(ai, ci, n, k, z, params, policy) for k in range(n + 1)]
               for ai, ci, n, z in zip(a, c, ns, zs)]
    terms = []
    for ks in _nodes(ns):
        w = f([ai * q ** k for ai, k in zip(a, ks)])
        for i, k in enumerate(ks):
            w *= weights[i][k]
        terms.append(w)
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="multivar-interpolation",
    anchor="multivariate interpolation: multivariable elliptic interpolation formula",
    summary="random tensor element, m in {2,3}, n_i in 0..3, nodes a_i q^{k_i}",
    sampler=lambda rng, r: _multi_sample(rng, r, extra="az"),
    sides=multivar_interpolation_sides, trials=MULTI_TRIALS, tolerance=MULTI_TOL,
))


# -- Karlsson-Minton ----------------------------------------------------------------

def _km_shape(rng, ranges, lengths):
    """Draw small shape data and accept it once every ``n_i <= n_multi_max``.

    Per variable: ``s_i`` in 0..2 single parameters ``b_ij`` with lengths from
    ``lengths``.  Per pair ``i < j``: cross power ``w_ij`` in 0..1 and ``r_ij`` in
    0..1 four-fold factors with lengths ``u`` from ``lengths``.
    """
    m = int(rng.integers(2, 4))
    while True:
        v = [[int(rng.choice(lengths)) for _ in range(int(rng.integers(0, 3)))] for _ in range(m)]
        pairs = []
        for i, j in itertools.combinations(range(m), 2):
            us = [int(rng.choice(lengths)) for _ in range(int(rng.integers(0, 2)))]
            pairs.append({"i": i, "j": j, "w": int(rng.integers(0, 2)), "u": us})
        n = [sum(vi) for vi in v]
        for pr in pairs:
            for end in (pr["i"], pr["j"]):
                n[end] += pr["w"] + 2 * sum(pr["u"])
        if max(n) <= ranges.n_multi_max:
            return v, pairs, n


def _km_sample(rng, ranges, lengths):
    pt = rand_primitives(rng, ranges)
    v, pairs, n = _km_shape(rng, ranges, lengths)
    m = len(n)
    pt["n"] = n
    pt["v"] = v
    pt["b"] = [[rand_complex(rng, ranges) for _ in vi] for vi in v]
    for pr in pairs:
        pr["alpha"] = [rand_complex(rng, ranges) for _ in pr["u"]]
    pt["pairs"] = pairs
    pt["a"] = [rand_complex(rng, ranges) for _ in range(m)]
    pt["z"] = [rand_complex(rng, ranges) for _ in range(m)]
    return pt


def _km_common(k_, a, n, zs, ks):
    """Shared very-well-poised factors: left product and the node weight at ``ks``."""
    q = k_.q
    lhs = 1 + 0j
    for ai, ni, z in zip(a, n, zs):
        lhs *= k_.fac(ni, ai * ai * q, q) / k_.fac(ni, ai * q * z, ai * q / z)
    w = 1 + 0j
    for ai, ni, z, k in zip(a, n, zs, ks):
        w *= (q ** k * k_.th(ai * ai * q ** (2 * k)) / k_.th(ai * ai)
              * k_.fac(k, q ** (-ni), ai * ai, ai * z, ai / z)
              / k_.fac(k, q, ai * ai * q ** (ni + 1), ai * q * z, ai * q / z))
    return lhs, w


def multivar_km_sides(pt, policy):
    """Karlsson-Minton identity with factorial blocks of lengths ``v_ij`` and ``u``.

    Removing ``c`` from the interpolation weights leaves ``q^{n_i k_i}`` per
    variable, so each cross factor of pair ``(i, j)`` carries the power
    ``q^{k_j}`` (``q^{w k_j}`` and ``q^{2u k_j}``).
    """
    params = params_of(pt)
    k_ = Kit(params, policy)
    q = k_.q
    a, n, zs = pt["a"], pt["n"], pt["z"]
    lhs, _ = _km_common(k_, a, n, zs, [0] * len(n))
    for i, z in enumerate(zs):
        for b, v in zip(pt["b"][i], pt["v"][i]):
            lhs *= k_.fac(v, b * z, b / z) / k_.fac(v, b * a[i], b / a[i])
    for pr in pt["pairs"]:
        i, j, w = pr["i"], pr["j"], pr["w"]
        ai, aj, zi, zj = a[i], a[j], zs[i], zs[j]
        lhs *= (ai / zi) ** w * k_.th(zi * zj, zi / zj) ** w
        for al, u in zip(pr["alpha"], pr["u"]):
            lhs *= (k_.fac(u, al * zi * zj, al * zi / zj, al * zj / zi, al / (zi * zj))
                    / k_.fac(u, al * ai * aj, al * ai / aj, al * aj / ai, al / (ai * aj)))
    terms = []
    for ks in _nodes(n):
        _, term = _km_common(k_, a, n, zs, ks)
        for i, k in enumerate(ks):
            for b, v in zip(pt["b"][i], pt["v"][i]):
                term *= (k_.fac(k, a[i] * b * q ** v, a[i] * q / b)
                         / k_.fac(k, a[i] * b, a[i] * q ** (1 - v) / b))
        for pr in pt["pairs"]:
            i, j, w = pr["i"], pr["j"], pr["w"]
            ai, aj, ki, kj = a[i], a[j], ks[i], ks[j]
            for al, u in zip(pr["alpha"], pr["u"]):
                term *= (q ** (2 * u * kj)
                         * k_.fac(ki + kj, al * ai * aj * q ** u, q * ai * aj / al)
                         * k_.fac(ki - kj, al * ai * q ** u / aj, q * ai / (aj * al))
                         / k_.fac(ki + kj, al * ai * aj, q ** (1 - u) * ai * aj / al)
                         / k_.fac(ki - kj, al * ai / aj, q ** (1 - u) * ai / (aj * al)))
            term *= q ** (w * kj) * k_.th(ai * aj * q ** (ki + kj), ai * q ** (ki - kj) / aj) ** w
        terms.append(term)
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="multivar-km",
    anchor="multivariable Karlsson-Minton: multivariable elliptic Karlsson--Minton type identity",
    summary=("m in {2,3}; s_i in 0..2 blocks b_ij with v_ij in {1,2}; per pair w_ij in 0..1 and "
             "r_ij in 0..1 four-fold blocks with u in {1,2}; shapes redrawn until n_i <= 3"),
    sampler=lambda rng, r: _km_sample(rng, r, (1, 2)),
    sides=multivar_km_sides, trials=MULTI_TRIALS, tolerance=MULTI_TOL,
))


def multivar_km_theta_sides(pt, policy):
    """Theta-function form: every block of length one."""
    params = params_of(pt)
    k_ = Kit(params, policy)
    q = k_.q
    a, n, zs = pt["a"], pt["n"], pt["z"]
    lhs, _ = _km_common(k_, a, n, zs, [0] * len(n))
    for i, z in enumerate(zs):
        for b in pt["b"][i]:
            lhs *= k_.th(b * z, b / z) / k_.th(b * a[i], b / a[i])
    for pr in pt["pairs"]:
        i, j, w = pr["i"], pr["j"], pr["w"]
        ai, aj, zi, zj = a[i], a[j], zs[i], zs[j]
        lhs *= (ai / zi) ** w * k_.th(zi * zj, zi / zj) ** w
        for al in pr["alpha"]:
            lhs *= (k_.th(al * zi * zj, al * zi / zj, al * zj / zi, al / (zi * zj))
                    / k_.th(al * ai * aj, al * ai / aj, al * aj / ai, al / (ai * aj)))
    terms = []
    for ks in _nodes(n):
        _, term = _km_common(k_, a, n, zs, ks)
        for i, k in enumerate(ks):
            for b in pt["b"][i]:
                term *= (k_.th(a[i] * b * q ** k, a[i] * q ** k / b)
                         / k_.th(a[i] * b, a[i] / b))
        for pr in pt["pairs"]:
            i, j, w = pr["i"], pr["j"], pr["w"]
            ai, aj, ki, kj = a[i], a[j], ks[i], ks[j]
            for al in pr["alpha"]:
                term *= (q ** (2 * kj)
                         * k_.th(al * ai * aj * q ** (ki + kj), q ** (ki + kj) * ai * aj / al,
                                 al * ai * q ** (ki - kj) / aj, q ** (ki - kj) * ai / (aj * al))
                         / k_.th(al * ai * aj, ai * aj / al, al * ai / aj, ai / (aj * al)))
            term *= q ** (w * kj) * k_.th(ai * aj * q ** (ki + kj), ai * q ** (ki - kj) / aj) ** w
        terms.append(term)
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="multivar-km-theta-form",
    anchor="multivariable Karlsson-Minton, theta form: restate the corollary in this equivalent form",
    summary="as multivar-km with every v_ij = u = 1, so the blocks are single theta functions",
    sampler=lambda rng, r: _km_sample(rng, r, (1,)),
    sides=multivar_km_theta_sides, trials=MULTI_TRIALS, tolerance=MULTI_TOL,
))
