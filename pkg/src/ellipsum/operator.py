"""Elliptic Askey-Wilson divided-difference operator and its iterates.

Functions here act on *evaluators*: plain callables ``z -> complex`` that are
expected (not enforced) to satisfy ``f(z) == f(1/z)``.  Operators return new
evaluators, so they compose lazily; nothing is cached.

The single-step operator is

    D_c f(z) = 2 q^{1/2} z theta(c z q^{-1/2}, c z q^{1/2}, c q^{-1/2}/z, c q^{1/2}/z)
               / theta(q, z^2) * (f(q^{1/2} z) - f(q^{-1/2} z)),

and the iterate is ``D^{(k)}_c = D^{(k-1)}_{c q^{3/2}} D_c``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import PoleHit
from .pochhammer import elliptic_binomial, qp_fact
from .series import csum
from .theta import DEFAULT_POLICY, EllipticParams, TruncationPolicy, theta

__all__ = [
    "WcnElement",
    "wp_basis",
    "wp_basis_values",
    "apply_D",
    "apply_D_iter",
    "cooper_terms",
    "cooper_explicit",
    "apply_D_var",
    "apply_D_multi",
    "cooper_terms_multi",
    "cooper_explicit_multi",
    "degree_lowering_rhs",
    "symmetry_probe",
]

Evaluator = Callable[[complex], complex]


def wp_basis_values(a, c, n: int, z, params: EllipticParams,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """``[(az, a/z)_k / (cz, c/z)_k for k = 0..n]`` computed incrementally."""
    p, q = params.p, params.q
    out = [1 + 0j]
    az, a_z, cz, c_z = a * z, a / z, c * z, c / z
    val = 1 + 0j
    for k in range(n):
        den = theta(cz, p, policy) * theta(c_z, p, policy)
        if den == 0:
            raise PoleHit(f"(cz, c/z)_{k + 1} vanishes", index=k, factor=cz)
        val *= theta(az, p, policy) * theta(a_z, p, policy) / den
        out.append(val)
        az *= q
        a_z *= q
        cz *= q
        c_z *= q
    return out


def wp_basis(a, c, k: int, params: EllipticParams,
             policy: TruncationPolicy = DEFAULT_POLICY) -> Evaluator:
    """Well-poised monomial ``z -> (az, a/z; q, p)_k / (cz, c/z; q, p)_k``."""
    def f(z):
        return wp_basis_values(a, c, k, z, params, policy)[k]
    return f


@dataclass
class WcnElement:
    """``f(z) = sum_k coeffs[k] (az, a/z)_k / (cz, c/z)_k``, an element of W_c^n."""

    coeffs: list
    a: complex
    c: complex

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def evaluator(self, params: EllipticParams,
                  policy: TruncationPolicy = DEFAULT_POLICY) -> Evaluator:
        def f(z):
            vals = wp_basis_values(self.a, self.c, self.n, z, params, policy)
            return csum(ck * bk for ck, bk in zip(self.coeffs, vals))
        return f


def apply_D(f: Evaluator, c, params: EllipticParams,
            policy: TruncationPolicy = DEFAULT_POLICY) -> Evaluator:
    """One application of the elliptic Askey-Wilson operator with parameter ``c``."""
    p = params.p
    h = params.q_half
    th_q = theta(params.q, p, policy)

    def g(z):
        den = th_q * theta(z * z, p, policy)
        if den == 0:
            raise PoleHit(f"theta(z^2; p) vanishes at z = {z}", factor=z * z)
        num = (theta(c * z / h, p, policy) * theta(c * z * h, p, policy)
               * theta(c / (h * z), p, policy) * theta(c * h / z, p, policy))
        return 2 * h * z * num / den * (f(h * z) - f(z / h))
    return g


def apply_D_iter(f: Evaluator, c, m: int, params: EllipticParams,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> Evaluator:
    """``D^{(m)}_c f``: step ``j`` uses parameter ``c q^{3j/2}``; ``m = 0`` is the identity."""
    shift = params.t ** 6
    cj = c
    for _ in range(m):
        f = apply_D(f, cj, params, policy)
        cj = cj * shift
    return f


def _cooper_prefactor(c, m, z, params, policy):
    t = params.t
    cm = c * t ** (2 * m - 4)   # c q^{m/2 - 1}
    return ((-2 * z) ** m * t ** (m * (3 - m))
            * qp_fact(cm * z, m + 1, params, policy) * qp_fact(cm / z, m + 1, params, policy)
            / theta(params.q, params.p, policy) ** m)


def _cooper_weight(c, m, k, z, params, policy):
    """Coefficient of ``f(q^{m/2-k} z)`` in the explicit iterate, without prefactor."""
    t, q = params.t, params.q
    z2 = z * z
    num = (q ** (k * (m - k)) * elliptic_binomial(m, k, params, policy) * z ** (2 * (k - m))
           * qp_fact(c * t ** (2 * m - 4 * k) * z, m - 1, params, policy)
           * qp_fact(c * t ** (4 * k - 2 * m) / z, m - 1, params, policy))
    den = (qp_fact(q ** (m - 2 * k + 1) * z2, k, params, policy)
           * qp_fact(q ** (2 * k - m + 1) / z2, m - k, params, policy))
    if den == 0:
        raise PoleHit(f"explicit iterate denominator vanishes at k={k}", index=k)
    return num / den


def cooper_terms(f: Evaluator, c, m: int, z, params: EllipticParams,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """The ``m + 1`` summands of the explicit formula for ``D^{(m)}_c f(z)``."""
    t = params.t
    pref = _cooper_prefactor(c, m, z, params, policy)
    return [pref * _cooper_weight(c, m, k, z, params, policy) * f(t ** (2 * m - 4 * k) * z)
            for k in range(m + 1)]


def cooper_explicit(f: Evaluator, c, m: int, z, params: EllipticParams,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``D^{(m)}_c f(z)`` from ``m + 1`` point evaluations of ``f``."""
    return csum(cooper_terms(f, c, m, z, params, policy))


def degree_lowering_rhs(a, c, n: int, z, params: EllipticParams,
                        policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Closed form of ``D_c`` applied to ``(az, a/z)_n / (cz, c/z)_n``."""
    p, q, h = params.p, params.q, params.q_half
    if n == 0:
        return 0j
    pref = (-2 * a * theta(c / a, p, policy) * theta(a * c * q ** (n - 1), p, policy)
            * theta(q ** n, p, policy) / theta(q, p, policy))
    return pref * wp_basis_values(a * h, c * h ** 3, n - 1, z, params, policy)[n - 1]


# -- several variables -------------------------------------------------------

MultiEvaluator = Callable[[Sequence[complex]], complex]


def _replace(zs, i, value):
    zs = list(zs)
    zs[i] = value
    return zs


def apply_D_var(f: MultiEvaluator, i: int, c, params: EllipticParams,
                policy: TruncationPolicy = DEFAULT_POLICY) -> MultiEvaluator:
    """The operator ``D_{c, q, p; z_i}`` acting on variable ``i`` only."""
    p = params.p
    h = params.q_half
    th_q = theta(params.q, p, policy)

    def g(zs):
        z = zs[i]
        den = th_q * theta(z * z, p, policy)
        if den == 0:
            raise PoleHit(f"theta(z_{i}^2; p) vanishes", factor=z * z)
        num = (theta(c * z / h, p, policy) * theta(c * z * h, p, policy)
               * theta(c / (h * z), p, policy) * theta(c * h / z, p, policy))
        return 2 * h * z * num / den * (f(_replace(zs, i, h * z)) - f(_replace(zs, i, z / h)))
    return g


def apply_D_multi(f: MultiEvaluator, cs: Sequence[complex], ks: Sequence[int],
                  params: EllipticParams, policy: TruncationPolicy = DEFAULT_POLICY,
                  order: Sequence[int] | None = None) -> MultiEvaluator:
    """``D^{(k_1)}_{c_1; z_1} ... D^{(k_m)}_{c_m; z_m} f`` by recursion.

    ``order`` permutes the variables the iterates are applied in; the result
    does not depend on it.
    """
    shift = params.t ** 6
    for i in (order if order is not None else range(len(cs))):
        cj = cs[i]
        for _ in range(ks[i]):
            f = apply_D_var(f, i, cj, params, policy)
            cj = cj * shift
    return f


def cooper_terms_multi(f: MultiEvaluator, cs: Sequence[complex], ns: Sequence[int],
                       zs: Sequence[complex], params: EllipticParams,
                       policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """Summands of the explicit multivariate iterate, one per node ``(k_1, ..., k_m)``."""
    t = params.t
    pref = 1 + 0j
    weights = []
    for c, m, z in zip(cs, ns, zs):
        pref *= _cooper_prefactor(c, m, z, params, policy)
        weights.append([_cooper_weight(c, m, k, z, params, policy) for k in range(m + 1)])
    terms = []
    for ks in itertools.product(*(range(m + 1) for m in ns)):
        w = pref
        pts = []
        for i, k in enumerate(ks):
            w *= weights[i][k]
            pts.append(t ** (2 * ns[i] - 4 * k) * zs[i])
        terms.append(w * f(pts))
    return terms


def cooper_explicit_multi(f: MultiEvaluator, cs: Sequence[complex], ns: Sequence[int],
                          zs: Sequence[complex], params: EllipticParams,
                          policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Explicit multivariate iterate: a nested sum over ``prod (n_i + 1)`` node values."""
    return csum(cooper_terms_multi(f, cs, ns, zs, params, policy))


def symmetry_probe(f: Evaluator, zs) -> float:
    """Largest relative mismatch between ``f(z)`` and ``f(1/z)`` over probe points."""
    worst = 0.0
    for z in zs:
        a, b = f(z), f(1 / z)
        worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    return worst
