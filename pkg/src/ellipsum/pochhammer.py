"""Theta shifted factorials ``(a; q, p)_n`` for every integer ``n``."""
from __future__ import annotations

from .errors import PoleHit
from .theta import DEFAULT_POLICY, RESIDUAL_FLOOR, EllipticParams, TruncationPolicy, theta

__all__ = [
    "qp_fact",
    "qp_fact_multi",
    "qp_fact_pshift_residual",
    "elliptic_binomial",
]


def qp_fact(a, n: int, params: EllipticParams, policy: TruncationPolicy = DEFAULT_POLICY,
            base=None) -> complex:
    """Theta shifted factorial ``(a; q, p)_n``.

    ``base`` overrides the step (default ``params.q``), e.g. ``params.q_half``
    for factorials in base ``q^{1/2}``.  Negative ``n`` uses the reciprocal
    product ``1 / prod_{k<-n} theta(a q^{n+k})`` and raises :class:`PoleHit`
    when one of those factors vanishes.
    """
    n = int(n)
    if n == 0:
        return 1 + 0j
    step = params.q if base is None else complex(base)
    p = params.p
    x = complex(a)
    if n > 0:
        prod = 1 + 0j
        for _ in range(n):
            prod *= theta(x, p, policy)
            x *= step
        return prod
    for _ in range(-n):
        x /= step
    prod = 1 + 0j
    for k in range(-n):
        th = theta(x, p, policy)
        if th == 0:
            raise PoleHit(f"(a;q,p)_{n} has a vanishing factor at k={k}", index=k, factor=x)
        prod *= th
        x *= step
    return 1 / prod


def qp_fact_multi(values, n: int, params: EllipticParams,
                  policy: TruncationPolicy = DEFAULT_POLICY, base=None) -> complex:
    """``(a_1, ..., a_m; q, p)_n``; the empty list gives 1."""
    prod = 1 + 0j
    for a in values:
        prod *= qp_fact(a, n, params, policy, base)
    return prod


def qp_fact_pshift_residual(a, n: int, params: EllipticParams,
                            policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Relative residual of ``(pa)_n = (-1)^n a^{-n} q^{-n(n-1)/2} (a)_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = params.q
    lhs = qp_fact(params.p * a, n, params, policy)
    rhs = (-1) ** n * a ** (-n) * q ** (-(n * (n - 1) // 2)) * qp_fact(a, n, params, policy)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), RESIDUAL_FLOOR)


def elliptic_binomial(m: int, k: int, params: EllipticParams,
                      policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``[m, k]_{p,q} = (q^{1+k}; q, p)_{m-k} / (q; q, p)_{m-k}``."""
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    q = params.q
    den = qp_fact(q, m - k, params, policy)
    if den == 0:
        raise PoleHit(f"(q;q,p)_{m - k} vanishes", index=m - k)
    return qp_fact(q ** (1 + k), m - k, params, policy) / den
