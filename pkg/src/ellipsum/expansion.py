"""Elliptic Taylor expansions and interpolation, in one and several variables.

For ``f`` in W_c^n the coefficients in the well-poised basis
``(az, a/z)_k / (cz, c/z)_k`` are read off from ``D^{(k)}_c f`` at
``z = a q^{k/2}``; the quadratic basis ``(q^{1/4} z, q^{1/4}/z; q^{1/2})_k / (cz, c/z)_k``
uses the single point ``z = q^{1/4}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DegreeOverflow, PoleHit
from .operator import (
    apply_D_iter,
    cooper_explicit,
    cooper_explicit_multi,
    wp_basis_values,
)
from .pochhammer import qp_fact, qp_fact_multi
from .series import csum
from .theta import DEFAULT_POLICY, EllipticParams, TruncationPolicy, theta

__all__ = [
    "TaylorCoefficients",
    "QuadraticCoefficients",
    "MultivarConfig",
    "KarlssonMintonConfig",
    "taylor_weight",
    "quadratic_weight",
    "taylor_coeffs",
    "quad_basis_values",
    "quadratic_taylor_coeffs",
    "interpolation_prefactor",
    "interpolation_weight",
    "interpolate",
    "interpolate_value",
    "taylor_coeffs_multi",
    "reconstruct_multi",
    "interpolation_prefactor_multi",
    "interpolate_multi",
]

# fixed probe points for the membership check; away from the unit circle and the real axis
_PROBES = (0.83 * np.exp(0.71j), 1.17 * np.exp(2.3j), 0.91 * np.exp(-1.9j),
           1.29 * np.exp(0.37j), 0.74 * np.exp(-0.52j))


def _iterate(f, c, k, z, params, policy, method):
    if method == "explicit":
        return cooper_explicit(f, c, k, z, params, policy)
    if method == "recursive":
        return apply_D_iter(f, c, k, params, policy)(z)
    raise ValueError(f"unknown method {method!r}")


def _check_membership(f, coeffs, basis, probes, tol):
    for z in probes:
        vals = basis(z)
        parts = [ck * bk for ck, bk in zip(coeffs, vals)]
        approx = csum(parts)
        exact = f(z)
        scale = max(abs(exact), sum(abs(x) for x in parts), 1e-300)
        if abs(approx - exact) > tol * scale:
            raise DegreeOverflow(
                f"expansion misses f at z={z}: residual {abs(approx - exact) / scale:.3g}"
            )


@dataclass
class TaylorCoefficients:
    """Coefficients ``f_k`` of ``f`` in the basis ``(az, a/z)_k / (cz, c/z)_k``."""

    f_k: list
    a: complex
    c: complex

    @property
    def n(self) -> int:
        return len(self.f_k) - 1

    def evaluate(self, z, params: EllipticParams,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
        vals = wp_basis_values(self.a, self.c, self.n, z, params, policy)
        return csum(fk * bk for fk, bk in zip(self.f_k, vals))


def taylor_weight(a, c, k: int, params: EllipticParams,
                  policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Factor turning ``D^{(k)}_c f(a q^{k/2})`` into the ``k``-th Taylor coefficient."""
    q, t = params.q, params.t
    den = ((2 * a) ** k * qp_fact(q, k, params, policy) * qp_fact(c / a, k, params, policy)
           * qp_fact(a * c * q ** (k - 1), k, params, policy))
    if den == 0:
        raise PoleHit(f"Taylor normalisation vanishes at k={k}", index=k)
    return (-1) ** k * t ** (-k * (k - 1)) * theta(q, params.p, policy) ** k / den


def taylor_coeffs(f: Callable, a, c, n: int, params: EllipticParams,
                  policy: TruncationPolicy = DEFAULT_POLICY, method: str = "explicit",
                  check: bool = True, check_tol: float = 1e-6) -> TaylorCoefficients:
    """Elliptic Taylor coefficients of ``f`` in W_c^n.

    ``method`` selects how ``D^{(k)}_c f`` is evaluated: ``"explicit"`` (one
    sum over ``k + 1`` values of ``f``) or ``"recursive"`` (``2**k`` values).
    With ``check`` the expansion is compared against ``f`` at five fixed
    probe points and :class:`DegreeOverflow` is raised on mismatch.
    """
    coeffs = [taylor_weight(a, c, k, params, policy)
              * _iterate(f, c, k, a * params.t ** (2 * k), params, policy, method)
              for k in range(n + 1)]
    out = TaylorCoefficients(coeffs, a, c)
    if check:
        _check_membership(f, coeffs, lambda z: wp_basis_values(a, c, n, z, params, policy),
                          _PROBES, check_tol)
    return out


def quad_basis_values(c, n: int, z, params: EllipticParams,
                      policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """``[(q^{1/4} z, q^{1/4}/z; q^{1/2}, p)_k / (cz, c/z; q, p)_k for k = 0..n]``."""
    p, q, t = params.p, params.q, params.t
    h = params.q_half
    out = [1 + 0j]
    u, v, cz, c_z = t * z, t / z, c * z, c / z
    val = 1 + 0j
    for k in range(n):
        den = theta(cz, p, policy) * theta(c_z, p, policy)
        if den == 0:
            raise PoleHit(f"(cz, c/z)_{k + 1} vanishes", index=k)
        val *= theta(u, p, policy) * theta(v, p, policy) / den
        out.append(val)
        u *= h
        v *= h
        cz *= q
        c_z *= q
    return out


@dataclass
class QuadraticCoefficients:
    """Coefficients of ``f`` in the quadratic basis with denominator parameter ``c``."""

    f_k: list
    c: complex

    @property
    def n(self) -> int:
        return len(self.f_k) - 1

    def evaluate(self, z, params: EllipticParams,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
        vals = quad_basis_values(self.c, self.n, z, params, policy)
        return csum(fk * bk for fk, bk in zip(self.f_k, vals))


def quadratic_weight(c, k: int, params: EllipticParams,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Factor turning ``D^{(k)}_c f(q^{1/4})`` into the ``k``-th quadratic-basis coefficient."""
    q, t = params.q, params.t
    den = (2 ** k * qp_fact(q, k, params, policy)
           * qp_fact(c * t ** (2 * k - 3), 2 * k, params, policy, base=params.q_half))
    if den == 0:
        raise PoleHit(f"quadratic normalisation vanishes at k={k}", index=k)
    return (-1) ** k * t ** (-k) * theta(q, params.p, policy) ** k / den


def quadratic_taylor_coeffs(f: Callable, c, n: int, params: EllipticParams,
                            policy: TruncationPolicy = DEFAULT_POLICY,
                            method: str = "explicit", check: bool = True,
                            check_tol: float = 1e-6) -> QuadraticCoefficients:
    """Coefficients of ``f`` in the quadratic basis, all read at ``z = q^{1/4}``."""
    coeffs = [quadratic_weight(c, k, params, policy)
              * _iterate(f, c, k, params.t, params, policy, method)
              for k in range(n + 1)]
    if check:
        _check_membership(f, coeffs, lambda z: quad_basis_values(c, n, z, params, policy),
                          _PROBES, check_tol)
    return QuadraticCoefficients(coeffs, c)


def interpolation_prefactor(a, c, n: int, z, params: EllipticParams,
                            policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``(a^2 q, q, cz, c/z)_n / (ac, c/a, aqz, aq/z)_n``."""
    q = params.q
    num = qp_fact_multi([a * a * q, q, c * z, c / z], n, params, policy)
    den = qp_fact_multi([a * c, c / a, a * q * z, a * q / z], n, params, policy)
    if den == 0:
        raise PoleHit("interpolation prefactor denominator vanishes")
    return num / den


def interpolation_weight(a, c, n: int, k: int, z, params: EllipticParams,
                         policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Weight of the node value ``f(a q^k)`` in the interpolation sum."""
    q, p = params.q, params.p
    num = qp_fact_multi([q ** (-n), a * a, a * q / c, a * c * q ** n, a * z, a / z],
                        k, params, policy)
    den = qp_fact_multi([q, a * a * q ** (n + 1), a * c, a * q ** (1 - n) / c,
                         a * q * z, a * q / z], k, params, policy)
    if den == 0:
        raise PoleHit(f"interpolation weight denominator vanishes at k={k}", index=k)
    return (q ** k * theta(a * a * q ** (2 * k), p, policy) / theta(a * a, p, policy)
            * num / den)


def interpolate(f: Callable, a, c, n: int, z, params: EllipticParams,
                policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Weighted node sum ``sum_k w_k(z) f(a q^k)``; equals prefactor * f(z) on W_c^n."""
    q = params.q
    return csum(interpolation_weight(a, c, n, k, z, params, policy) * f(a * q ** k)
                for k in range(n + 1))


def interpolate_value(f: Callable, a, c, n: int, z, params: EllipticParams,
                      policy: TruncationPolicy = DEFAULT_POLICY, retries: int = 8) -> complex:
    """``f(z)`` rebuilt from its values at ``a, aq, ..., aq^n``.

    If a node or weight hits a pole, the node set is rotated (``a`` is
    multiplied by a fixed unimodular factor) and the evaluation retried.
    """
    shift = np.exp(0.37j) * 1.03
    for _ in range(retries + 1):
        try:
            return interpolate(f, a, c, n, z, params, policy) / \
                interpolation_prefactor(a, c, n, z, params, policy)
        except (PoleHit, ZeroDivisionError):
            a = a * shift
    raise PoleHit("interpolation nodes kept hitting poles")


# -- several variables -------------------------------------------------------

@dataclass
class MultivarConfig:
    """Per-variable data ``a_i``, ``c_i``, ``n_i`` for ``m`` variables."""

    a: list
    c: list
    n: list

    def __post_init__(self):
        if not (len(self.a) == len(self.c) == len(self.n)):
            raise ValueError("a, c, n must have the same length")

    @property
    def m(self) -> int:
        return len(self.a)


def taylor_coeffs_multi(f: Callable, cfg: MultivarConfig, params: EllipticParams,
                        policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Coefficient tensor of ``f`` in the product well-poised basis."""
    t = params.t
    norms = [[taylor_weight(a, c, k, params, policy) for k in range(n + 1)]
             for a, c, n in zip(cfg.a, cfg.c, cfg.n)]
    out = np.zeros([n + 1 for n in cfg.n], dtype=complex)
    for ks in itertools.product(*(range(n + 1) for n in cfg.n)):
        zs = [a * t ** (2 * k) for a, k in zip(cfg.a, ks)]
        val = cooper_explicit_multi(f, cfg.c, ks, zs, params, policy)
        for i, k in enumerate(ks):
            val *= norms[i][k]
        out[ks] = val
    return out


def reconstruct_multi(coeffs: np.ndarray, cfg: MultivarConfig, zs: Sequence[complex],
                      params: EllipticParams, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``sum_K coeffs[K] prod_i (a_i z_i, a_i/z_i)_{k_i} / (c_i z_i, c_i/z_i)_{k_i}``."""
    out = np.asarray(coeffs, dtype=complex)
    # contract one axis at a time
    for a, c, n, z in zip(cfg.a, cfg.c, cfg.n, zs):
        vals = np.array(wp_basis_values(a, c, n, z, params, policy))
        out = np.tensordot(vals, out, axes=([0], [0]))
    return complex(out)


def interpolation_prefactor_multi(cfg: MultivarConfig, zs, params: EllipticParams,
                                  policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    out = 1 + 0j
    for a, c, n, z in zip(cfg.a, cfg.c, cfg.n, zs):
        out *= interpolation_prefactor(a, c, n, z, params, policy)
    return out


def interpolate_multi(f: Callable, cfg: MultivarConfig, zs: Sequence[complex],
                      params: EllipticParams, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Node sum over ``f(a_1 q^{k_1}, ..., a_m q^{k_m})``; equals prefactor * f(z) on W."""
    q = params.q
    weights = [[interpolation_weight(a, c, n, k, z, params, policy) for k in range(n + 1)]
               for a, c, n, z in zip(cfg.a, cfg.c, cfg.n, zs)]
    terms = []
    for ks in itertools.product(*(range(n + 1) for n in cfg.n)):
        w = 1 + 0j
        for i, k in enumerate(ks):
            w *= weights[i][k]
        terms.append(w * f([a * q ** k for a, k in zip(cfg.a, ks)]))
    return csum(terms)


@dataclass
class KarlssonMintonConfig:
    """Shape data of the multivariable Karlsson-Minton identity.

    ``b[i]`` / ``v[i]`` list the single-variable parameters and their
    factorial lengths for variable ``i``; ``w[(i, j)]`` is the power of the
    cross theta factor for ``i < j``; ``alpha[(i, j)]`` / ``u[(i, j)]`` list the
    four-fold cross factorial parameters and lengths.
    """

    b: list
    v: list
    w: dict = field(default_factory=dict)
    alpha: dict = field(default_factory=dict)
    u: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def s(self) -> list:
        return [len(bi) for bi in self.b]

    @property
    def r(self) -> dict:
        return {key: len(vals) for key, vals in self.alpha.items()}

    def degrees(self) -> list:
        """``n_i`` from the degree balance of the identity."""
        n = [sum(vi) for vi in self.v]
        for (i, j), wij in self.w.items():
            n[i] += wij
            n[j] += wij
        for (i, j), us in self.u.items():
            n[i] += 2 * sum(us)
            n[j] += 2 * sum(us)
        return n

    def numerator(self, zs, params: EllipticParams,
                  policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
        """The theta-product numerator of the test function (no ``c`` denominator)."""
        p = params.p
        out = 1 + 0j
        for i, z in enumerate(zs):
            for b, v in zip(self.b[i], self.v[i]):
                out *= qp_fact(b * z, v, params, policy) * qp_fact(b / z, v, params, policy)
        for (i, j), wij in self.w.items():
            zi, zj = zs[i], zs[j]
            out *= (zi ** -wij * theta(zi * zj, p, policy) ** wij
                    * theta(zi / zj, p, policy) ** wij)
        for (i, j), alphas in self.alpha.items():
            zi, zj = zs[i], zs[j]
            for al, u in zip(alphas, self.u[(i, j)]):
                out *= qp_fact_multi([al * zi * zj, al * zi / zj, al * zj / zi, al / (zi * zj)],
                                     u, params, policy)
        return out

    def function(self, cs, params: EllipticParams,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> Callable:
        """The element ``numerator / prod_i (c_i z_i, c_i/z_i)_{n_i}`` of W_c^n."""
        ns = self.degrees()

        def f(zs):
            den = 1 + 0j
            for c, n, z in zip(cs, ns, zs):
                den *= qp_fact(c * z, n, params, policy) * qp_fact(c / z, n, params, policy)
            return self.numerator(zs, params, policy) / den
        return f
