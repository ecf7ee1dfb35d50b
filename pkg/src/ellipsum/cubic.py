"""Bhargava's cubic theta function and the two cubic shifted factorials.

    gamma(z, a; p) = sum_{k,l in Z} p^{k^2 + kl + l^2} a^{k+l} z^{k-l}

is summed shell by shell in the quadratic form ``Q = k^2 + kl + l^2``.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .errors import NomeOutOfRange, TruncationExhausted, ZeroArgument
from .pochhammer import qp_fact
from .series import csum
from .theta import (
    DEFAULT_POLICY,
    RESIDUAL_FLOOR,
    EllipticParams,
    TruncationPolicy,
    euler_infinite_product,
    rel_residual,
    theta,
)

__all__ = [
    "gamma",
    "gamma_bruteforce",
    "gamma_symmetry_residuals",
    "gamma_functional_eq_residual",
    "gamma_splitting_sides",
    "gamma_splitting_residuals",
    "cooper_toh_terms_1",
    "cooper_toh_terms_2",
    "cooper_toh_residual_1",
    "cooper_toh_residual_2",
    "cubic_fact_1",
    "cubic_fact_2",
    "degeneration_values",
    "degeneration_check",
    "empirical_order",
]

_RADII = (6, 12, 24, 48, 96, 192)


@lru_cache(maxsize=None)
def _lattice(radius: int):
    """Lattice points of the box ``|k|, |l| <= radius`` whose shell lies fully inside it.

    Returns ``(u, v, Q, starts, shell_q)`` sorted by ``Q`` with ``u = k + l``,
    ``v = k - l``; ``starts`` indexes the first point of every shell.
    """
    k, l = np.meshgrid(np.arange(-radius, radius + 1), np.arange(-radius, radius + 1))
    k = k.ravel()
    l = l.ravel()
    Q = k * k + k * l + l * l
    keep = Q < 0.75 * radius * radius   # minimum of Q on the box boundary
    k, l, Q = k[keep], l[keep], Q[keep]
    order = np.lexsort((l, k, Q))
    k, l, Q = k[order], l[order], Q[order]
    starts = np.flatnonzero(np.r_[True, Q[1:] != Q[:-1]])
    return (k + l).astype(float), (k - l).astype(float), Q.astype(float), starts, Q[starts]


def _peak_shell(p, a, z):
    """``(lam, Q*)``: ``-log|p|`` and the shell value at the term-magnitude peak.

    With ``u = k + l``, ``v = k - l`` one has ``Q = (3u^2 + v^2)/4`` and
    ``log|term| = -lam Q + u log|a| + v log|z|``, so on the shell ``Q`` every
    term is at most ``exp(lam (2 sqrt(Q Q*) - Q))``.
    """
    lam = -math.log(abs(p))
    alpha = math.log(abs(a))
    zeta = math.log(abs(z))
    return lam, alpha * alpha / (3 * lam * lam) + zeta * zeta / (lam * lam)


def gamma(z, a, p, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Cubic theta function ``gamma(z, a; p)``.

    Shells are added in increasing ``Q``; summation stops after three
    consecutive quiet shells.  A shell is quiet when it lies past the
    magnitude peak, its sum is below ``tail_tol`` times the largest term
    seen, and the bound on every term of the shell (points times the
    per-term bound of :func:`_peak_shell`) is below the same level.  The bound
    matters when the peak is far from the origin: sparse shells can then miss
    the large terms while later, fuller shells still hit them.  At most
    ``policy.max_factors`` shells are used.
    """
    z = complex(z)
    a = complex(a)
    if z == 0 or a == 0:
        raise ZeroArgument("gamma(z, a; p) needs z, a != 0")
    if p == 0:
        return 1 + 0j
    p = complex(p)
    if abs(p) >= 1 or abs(p) > policy.max_nome:
        raise NomeOutOfRange(f"|p| = {abs(p):.6g} exceeds {policy.max_nome}")
    lp, la, lz = cmath.log(p), cmath.log(a), cmath.log(z)
    lam, q_peak = _peak_shell(p, a, z)
    for radius in _RADII:
        u, v, Q, starts, shell_q = _lattice(radius)
        nshell = len(starts)
        logs = Q * lp + u * la + v * lz
        mags = np.exp(logs.real)
        shell_abs = np.add.reduceat(mags, starts)
        shell_max = np.maximum.reduceat(mags, starts)
        scale = np.maximum.accumulate(shell_max)
        count = np.diff(np.r_[starts, len(Q)])
        bound = lam * (2 * np.sqrt(shell_q * q_peak) - shell_q) + np.log(count)
        level = policy.tail_tol * scale
        quiet = (shell_abs < level) & (shell_q > q_peak) & (bound < np.log(level))
        run = quiet[:-2] & quiet[1:-1] & quiet[2:]
        hits = np.flatnonzero(run)
        if hits.size:
            last = hits[0] + 2
            if last + 1 > policy.max_factors:
                break
            end = starts[last + 1] if last + 1 < nshell else len(Q)
            terms = np.exp(logs[:end])
            return complex(math.fsum(terms.real), math.fsum(terms.imag))
        if nshell > policy.max_factors:
            break
    raise TruncationExhausted(f"gamma({z}, {a}; {p}) did not converge")


def gamma_bruteforce(z, a, p, radius: int = 40) -> complex:
    """Plain double loop over ``|k|, |l| <= radius`` (reference oracle)."""
    total = 0j
    for k in range(-radius, radius + 1):
        for l in range(-radius, radius + 1):
            total += p ** (k * k + k * l + l * l) * a ** (k + l) * z ** (k - l)
    return total


def gamma_symmetry_residuals(z, a, p, policy: TruncationPolicy = DEFAULT_POLICY):
    """Residuals of the two inversion symmetries and the two quasi-periodicities."""
    g = gamma(z, a, p, policy)
    return (
        rel_residual(gamma(1 / z, a, p, policy), g),
        rel_residual(gamma(z, 1 / a, p, policy), g),
        rel_residual(gamma(p * z, a, p, policy), g / (p * z * z)),
        rel_residual(gamma(z, p ** 3 * a, p, policy), g / (p ** 3 * a * a)),
    )


def gamma_functional_eq_residual(z, a, s, lam: int, mu: int,
                                 policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Residual of the two-integer functional equation; ``p = s**6``."""
    p = s ** 6
    lhs = gamma(z, a, p, policy)
    rhs = (p ** (3 * lam * lam + 3 * lam * mu + mu * mu) * a ** (2 * lam + mu) * z ** mu
           * gamma(s ** (3 * mu) * z, s ** (9 * (2 * lam + mu)) * a, p, policy))
    return rel_residual(lhs, rhs)


def _split_cube_sides(z, a, p, policy):
    # one gamma(.; p^3) per residue class of k - l modulo 3
    p3 = p ** 3
    u = cmath.sqrt(a * z ** 3)
    v = a * a / u
    u2 = cmath.sqrt(a / z ** 3)
    v2 = a * a / u2
    rhs = (gamma(u, v, p3, policy) + p * a / z * gamma(u, p3 * v, p3, policy)
           + p * a * z * gamma(u2, p3 * v2, p3, policy))
    return gamma(z, a, p, policy), rhs


def _split_parity_sides(z, a, p, policy):
    p2, p6 = p ** 2, p ** 6
    pref = euler_infinite_product(p6, p6, policy) * euler_infinite_product(p2, p2, policy)
    rhs = pref * (theta(-p ** 3 * a * a, p6, policy) * theta(-p * z * z, p2, policy)
                  + p * a * z * theta(-p6 * a * a, p6, policy) * theta(-p2 * z * z, p2, policy))
    return gamma(z, a, p, policy), rhs


def gamma_splitting_sides(z, a, s, policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """``(gamma, split form)`` pairs for the mod-3 and the parity splitting; ``p = s**6``."""
    p = s ** 6
    if p == 0:
        return [(1 + 0j, 1 + 0j), (1 + 0j, 1 + 0j)]
    return [_split_cube_sides(z, a, p, policy), _split_parity_sides(z, a, p, policy)]


def gamma_splitting_residuals(z, a, s, policy: TruncationPolicy = DEFAULT_POLICY):
    """Residuals of the mod-3 splitting and the parity splitting; ``p = s**6``."""
    return tuple(rel_residual(lhs, rhs) for lhs, rhs in gamma_splitting_sides(z, a, s, policy))


def _three_term(t1, t2, t3):
    return abs(t1 - t2 - t3) / max(abs(t1), abs(t2), abs(t3), RESIDUAL_FLOOR)


def cooper_toh_terms_1(z1, z2, z3, alpha, p, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple:
    """Terms ``(t1, t2, t3)`` of the relation ``t1 - t2 = t3`` in the first slot of ``gamma``."""
    th = lambda x: theta(x, p, policy)
    t1 = gamma(z1, alpha, p, policy) * th(z3 / z2) * th(z2 * z3)
    t2 = gamma(z2, alpha, p, policy) * th(z3 / z1) * th(z1 * z3)
    t3 = z3 / z1 * gamma(z3, alpha, p, policy) * th(z1 / z2) * th(z1 * z2)
    return t1, t2, t3


def cooper_toh_terms_2(z, a1, a2, a3, s, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple:
    """Terms of the relation in the second slot, ``gamma`` with nome ``p^{1/3} = s**2``."""
    p = s ** 6
    p3 = s ** 2
    th = lambda x: theta(x, p, policy)
    t1 = gamma(z, a1, p3, policy) * th(a3 / a2) * th(a2 * a3)
    t2 = gamma(z, a2, p3, policy) * th(a3 / a1) * th(a1 * a3)
    t3 = a3 / a1 * gamma(z, a3, p3, policy) * th(a1 / a2) * th(a1 * a2)
    return t1, t2, t3


def cooper_toh_residual_1(z1, z2, z3, alpha, p, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Three-term relation mixing ``gamma(., alpha; p)`` and ``theta(.; p)`` in ``z``."""
    return _three_term(*cooper_toh_terms_1(z1, z2, z3, alpha, p, policy))


def cooper_toh_residual_2(z, a1, a2, a3, s, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Three-term relation in the second slot, ``gamma`` with nome ``p^{1/3} = s**2``."""
    return _three_term(*cooper_toh_terms_2(z, a1, a2, a3, s, policy))


def cubic_fact_1(a, z, n: int, params: EllipticParams,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``<az, a/z; q, p>_n = prod_{j<n} gamma(z q^{(1-n)/2 + j}, a q^{(n-1)/2}; p)``."""
    if n == 0:
        return 1 + 0j
    t, q, p = params.t, params.q, params.p
    aa = a * t ** (2 * (n - 1))
    zz = z * t ** (2 * (1 - n))
    out = 1 + 0j
    for _ in range(n):
        out *= gamma(zz, aa, p, policy)
        zz *= q
    return out


def cubic_fact_2(a, z, n: int, params: EllipticParams,
                 policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``<<az, a/z; q, p^{1/3}>>_n = prod_{j<n} gamma(a q^{(n-1)/2}, z q^{(1-n)/2 + j}; p^{1/3})``."""
    if n == 0:
        return 1 + 0j
    t, q = params.t, params.q
    p3 = params.p_third
    aa = a * t ** (2 * (n - 1))
    zz = z * t ** (2 * (1 - n))
    out = 1 + 0j
    for _ in range(n):
        out *= gamma(aa, zz, p3, policy)
        zz *= q
    return out


def degeneration_values(family: str, a, z, t, n: int, p_values,
                        policy: TruncationPolicy = DEFAULT_POLICY) -> tuple:
    """Rescaled cubic factorials along ``p_values`` and their basic limit ``(az, a/z; q)_n``.

    ``t`` is ``q^{1/4}``.  For each (real, positive) ``p`` the parameter is
    replaced by ``-a / (p^e (1 + a^2 q^{n-1}))`` with ``e = 1`` for the first
    family and ``e = 1/3`` for the second, and the factorial is multiplied by
    ``(1 + a^2 q^{n-1})^n``.
    """
    if family not in ("first", "second"):
        raise ValueError(f"family must be 'first' or 'second', not {family!r}")
    basic = EllipticParams(t, 0)
    q = basic.q
    target = qp_fact(a * z, n, basic) * qp_fact(a / z, n, basic)
    scale = 1 + a * a * q ** (n - 1)
    values = []
    for pv in p_values:
        params = EllipticParams(t, float(pv) ** (1.0 / 6.0))
        if family == "first":
            val = cubic_fact_1(-a / (params.p * scale), z, n, params, policy)
        else:
            val = cubic_fact_2(-a / (params.p_third * scale), z, n, params, policy)
        values.append(scale ** n * val)
    return values, target


def degeneration_check(family: str, a, z, t, n: int, p_values,
                       policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """Relative residuals between the rescaled cubic factorial and its ``p -> 0`` limit.

    See :func:`degeneration_values` for the substitution.  ``n = 0`` gives
    exact zeros.
    """
    values, target = degeneration_values(family, a, z, t, n, p_values, policy)
    return [rel_residual(v, target) for v in values]


def empirical_order(p_values, residuals) -> list:
    """Consecutive log-log slopes ``log(r_i/r_{i+1}) / log(p_i/p_{i+1})``."""
    out = []
    for (p0, r0), (p1, r1) in zip(zip(p_values, residuals), zip(p_values[1:], residuals[1:])):
        if r0 <= 0 or r1 <= 0:
            out.append(float("nan"))
        else:
            out.append(math.log(r0 / r1) / math.log(p0 / p1))
    return out
