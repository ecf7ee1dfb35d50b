"""Terminating very-well-poised elliptic hypergeometric series.

The series

    _{s+1}V_s(a1; a6, ..., a_{s+1}; q, p)
        = sum_k theta(a1 q^{2k})/theta(a1) * prod_i (a_i)_k / (a1 q / a_i)_k * (q z)^k

with ``(a1)_k/(q)_k`` included in the product, terminates because the last
upper parameter is ``q^{-n}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BalanceViolation, PoleHit
from .pochhammer import qp_fact, qp_fact_multi
from .theta import DEFAULT_POLICY, RESIDUAL_FLOOR, EllipticParams, TruncationPolicy, theta

__all__ = [
    "VwpSpec",
    "BalancedQuintuple",
    "csum",
    "vwp_sum",
    "vwp_terms",
    "ft_rhs",
    "ft_10v9_spec",
    "jackson_8phi7_terms",
    "jackson_8phi7_sides",
    "jackson_8phi7_residual",
]


def csum(values) -> complex:
    """Correctly rounded sum of complex values (real and imaginary parts via fsum)."""
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


@dataclass
class VwpSpec:
    """Parameters of a terminating very-well-poised series.

    ``upper`` holds ``a6, ..., a_{s+1}``; its last entry must equal ``q^{-n}``.
    """

    a1: complex
    upper: list
    n: int
    z_arg: complex = 1.0

    def validate(self, params: EllipticParams, tol_term=1e-12, tol_balance=1e-10):
        q = params.q
        if self.n < 0:
            raise BalanceViolation("termination order n must be nonnegative")
        qn = q ** (-self.n)
        last = self.upper[-1]
        if abs(last - qn) > tol_term * abs(qn):
            raise BalanceViolation(f"last upper parameter {last} != q^-n = {qn}")
        prod = 1 + 0j
        for a in self.upper:
            prod *= a
        lhs = q ** 2 * prod ** 2
        rhs = (self.a1 * q) ** (len(self.upper) - 1)
        if abs(lhs - rhs) > tol_balance * max(abs(lhs), abs(rhs)):
            raise BalanceViolation(
                f"balancing condition fails: q^2 prod(a_i)^2 = {lhs}, (a1 q)^(s-5) = {rhs}"
            )


@dataclass
class BalancedQuintuple:
    """``(a, b, c, d, e, n)`` with ``a^2 q^{n+1} = bcde``; ``e`` is always solved."""

    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    n: int

    @classmethod
    def solve(cls, a, b, c, d, n, params: EllipticParams) -> "BalancedQuintuple":
        e = a ** 2 * params.q ** (n + 1) / (b * c * d)
        return cls(a, b, c, d, e, n)


def vwp_terms(spec: VwpSpec, params: EllipticParams,
              policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """The ``n + 1`` terms of the series, built by the term ratio."""
    q, p = params.q, params.p
    a1 = complex(spec.a1)
    th = lambda x: theta(x, p, policy)
    num_params = [a1] + [complex(a) for a in spec.upper]
    den_params = [q] + [a1 * q / a for a in spec.upper]
    base_vwp = th(a1)
    if base_vwp == 0:
        raise PoleHit("theta(a1; p) vanishes", index=0, factor=a1)
    zq = q * spec.z_arg
    terms = [1 + 0j]
    ratio_prev = 1 + 0j   # prod of factorials at k
    num = list(num_params)
    den = list(den_params)
    for k in range(1, spec.n + 1):
        step = 1 + 0j
        for j in range(len(num)):
            dj = th(den[j])
            if dj == 0:
                raise PoleHit(f"denominator factor vanishes at k={k - 1}", index=k - 1, factor=den[j])
            step *= th(num[j]) / dj
            num[j] *= q
            den[j] *= q
        ratio_prev *= step * zq
        terms.append(th(a1 * q ** (2 * k)) / base_vwp * ratio_prev)
    return terms


def vwp_sum(spec: VwpSpec, params: EllipticParams,
            policy: TruncationPolicy = DEFAULT_POLICY, check: bool = True) -> complex:
    """Evaluate the terminating very-well-poised series with compensated summation."""
    if check:
        spec.validate(params)
    return csum(vwp_terms(spec, params, policy))


def ft_10v9_spec(q5: BalancedQuintuple, params: EllipticParams) -> VwpSpec:
    return VwpSpec(q5.a, [q5.b, q5.c, q5.d, q5.e, params.q ** (-q5.n)], q5.n)


def ft_rhs(q5: BalancedQuintuple, params: EllipticParams,
           policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Closed-form product side of the 10V9 summation."""
    a, b, c, d, n = q5.a, q5.b, q5.c, q5.d, q5.n
    q = params.q
    aq = a * q
    num = qp_fact_multi([aq, aq / (b * c), aq / (b * d), aq / (c * d)], n, params, policy)
    den = qp_fact_multi([aq / b, aq / c, aq / d, aq / (b * c * d)], n, params, policy)
    if den == 0:
        raise PoleHit("10V9 closed form has a vanishing denominator")
    return num / den


def jackson_8phi7_terms(q5: BalancedQuintuple, params: EllipticParams) -> list:
    """Terms of the terminating 8phi7 series (``p = 0``; only ``q`` is used)."""
    basic = EllipticParams(params.t, 0)
    q = basic.q
    a, b, c, d, e, n = q5.a, q5.b, q5.c, q5.d, q5.e, q5.n
    terms = []
    for k in range(n + 1):
        num = (1 - a * q ** (2 * k)) * qp_fact_multi([a, b, c, d, e, q ** (-n)], k, basic)
        den = (1 - a) * qp_fact_multi(
            [q, a * q / b, a * q / c, a * q / d, a * q / e, a * q ** (n + 1)], k, basic
        )
        if den == 0:
            raise PoleHit("8phi7 denominator vanishes", index=k)
        terms.append(num / den * q ** k)
    return terms


def jackson_8phi7_sides(q5: BalancedQuintuple, params: EllipticParams,
                        policy: TruncationPolicy = DEFAULT_POLICY):
    """(sum, closed form) of the terminating 8phi7 summation; uses ``q`` only."""
    basic = EllipticParams(params.t, 0)
    return csum(jackson_8phi7_terms(q5, params)), ft_rhs(q5, basic, policy)


def jackson_8phi7_residual(q5: BalancedQuintuple, params: EllipticParams,
                           policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    lhs, rhs = jackson_8phi7_sides(q5, params, policy)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), RESIDUAL_FLOOR)
