"""Modified Jacobi theta function and its structural identities.

All functions work in multiplicative notation,

    theta(x; p) = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x),

with ``|p| < 1`` and ``x != 0``.  Fractional powers of the base ``q`` and
the nome ``p`` are never extracted from ``q`` or ``p`` themselves; they are
exact integer powers of the primitives held by :class:`EllipticParams`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NomeOutOfRange, TruncationExhausted, ZeroArgument

__all__ = [
    "EllipticParams",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "rel_residual",
    "theta",
    "theta_multi",
    "theta_inversion_residual",
    "theta_p_shift_residual",
    "addition_formula_terms",
    "addition_formula_residual",
    "euler_infinite_product",
]

RESIDUAL_FLOOR = 1e-300


@dataclass(frozen=True)
class EllipticParams:
    """Base and nome given through primitive roots.

    Parameters
    ----------
    t : complex
        Quarter power of the base, ``q = t**4``.
    s : complex
        Sixth power root of the nome, ``p = s**6``.  ``s = 0`` selects the
        basic (``p = 0``) case.
    """

    t: complex
    s: complex = 0j

    def __post_init__(self):
        t = complex(self.t)
        s = complex(self.s)
        if t == 0:
            raise ZeroArgument("base primitive t must be nonzero")
        if abs(s) ** 6 >= 1:
            raise NomeOutOfRange(f"|p| = {abs(s) ** 6:.6g} is not < 1")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)

    @classmethod
    def from_qp(cls, q, p=0.0):
        """Build from ``q`` and ``p`` using principal roots (input boundary only)."""
        q = complex(q)
        p = complex(p)
        t = q ** 0.25 if q != 0 else 0j
        s = p ** (1.0 / 6.0) if p != 0 else 0j
        return cls(t, s)

    @property
    def q(self) -> complex:
        return self.t ** 4

    @property
    def q_half(self) -> complex:
        return self.t ** 2

    @property
    def q_quarter(self) -> complex:
        return self.t

    @property
    def p(self) -> complex:
        return self.s ** 6

    @property
    def p_half(self) -> complex:
        return self.s ** 3

    @property
    def p_third(self) -> complex:
        return self.s ** 2

    def qpow(self, quarters: int) -> complex:
        """``q**(quarters/4)`` as an exact power of ``t``."""
        return self.t ** quarters

    def with_nome(self, s) -> "EllipticParams":
        return EllipticParams(self.t, s)


@dataclass(frozen=True)
class TruncationPolicy:
    """Controls for infinite products and lattice sums.

    ``tail_tol`` is the relative size below which a factor perturbation (or a
    lattice shell) counts as negligible; ``max_factors`` caps the number of
    product factors or shells.  ``max_nome`` is the admissibility cap on
    ``|p|``; accuracy degrades noticeably above 0.9.
    """

    tail_tol: float = 1e-15
    max_factors: int = 10_000
    max_nome: float = 0.99

    def __post_init__(self):
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")
        if self.max_factors < 1:
            raise ValueError("max_factors must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


def rel_residual(lhs, rhs, floor=RESIDUAL_FLOOR) -> float:
    """``|lhs - rhs| / max(|lhs|, |rhs|, floor)``."""
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), floor)


def _check_nome(p, policy, what="nome"):
    if abs(p) >= 1 or abs(p) > policy.max_nome:
        raise NomeOutOfRange(f"|{what}| = {abs(p):.6g} exceeds {policy.max_nome}")


def theta(x, p, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Modified Jacobi theta function ``theta(x; p)``.

    The product stops once both ``|p^j x|`` and ``|p^{j+1}/x|`` have been
    below ``policy.tail_tol`` for three consecutive factors.  ``p == 0``
    returns exactly ``1 - x``.
    """
    x = complex(x)
    if x == 0:
        raise ZeroArgument("theta(x; p) is undefined at x = 0")
    if p == 0:
        return 1 - x
    p = complex(p)
    _check_nome(p, policy)
    tol = policy.tail_tol
    u = x          # p^j x
    v = p / x      # p^{j+1} / x
    prod = 1 + 0j
    quiet = 0
    for _ in range(policy.max_factors):
        prod *= (1 - u) * (1 - v)
        if abs(u) < tol and abs(v) < tol:
            quiet += 1
            if quiet == 3:
                return prod
        else:
            quiet = 0
        u *= p
        v *= p
    raise TruncationExhausted(
        f"theta({x}, {p}) did not converge within {policy.max_factors} factors"
    )


def theta_multi(xs, p, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``theta(x_1, ..., x_m; p)``, the product of theta over ``xs``."""
    prod = 1 + 0j
    for x in xs:
        prod *= theta(x, p, policy)
    return prod


def theta_inversion_residual(x, p, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Relative residual of ``theta(x) = -x theta(1/x)``."""
    lhs = theta(x, p, policy)
    rhs = -x * theta(1 / x, p, policy)
    return abs(lhs - rhs) / max(abs(lhs), RESIDUAL_FLOOR)


def theta_p_shift_residual(x, p, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Relative residual of ``theta(p x) = -theta(x)/x``; needs ``p != 0``."""
    if p == 0:
        raise ZeroArgument("the p-shift identity needs p != 0 (theta(0; 0) is undefined)")
    lhs = theta(p * x, p, policy)
    rhs = -theta(x, p, policy) / x
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), RESIDUAL_FLOOR)


def addition_formula_terms(x, y, u, v, p, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple:
    """Terms ``(t1, t2, t3)`` of the addition formula ``t1 - t2 = t3``.

    theta(xy, x/y, uv, u/v) - theta(xv, x/v, uy, u/y) = (u/y) theta(yv, y/v, xu, x/u).
    """
    th = lambda *args: theta_multi(args, p, policy)
    return (th(x * y, x / y, u * v, u / v), th(x * v, x / v, u * y, u / y),
            (u / y) * th(y * v, y / v, x * u, x / u))


def addition_formula_residual(x, y, u, v, p, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Relative residual of the three-term theta addition formula, against its largest term."""
    t1, t2, t3 = addition_formula_terms(x, y, u, v, p, policy)
    scale = max(abs(t1), abs(t2), abs(t3), RESIDUAL_FLOOR)
    return abs(t1 - t2 - t3) / scale


def euler_infinite_product(a, base, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``(a; base)_inf = prod_{j>=0} (1 - a base^j)``."""
    a = complex(a)
    if a == 0:
        return 1 + 0j
    if base == 0:
        return 1 - a
    base = complex(base)
    _check_nome(base, policy, "base")
    tol = policy.tail_tol
    term = a
    prod = 1 + 0j
    quiet = 0
    for _ in range(policy.max_factors):
        prod *= 1 - term
        if abs(term) < tol:
            quiet += 1
            if quiet == 3:
                return prod
        else:
            quiet = 0
        term *= base
    raise TruncationExhausted(
        f"({a}; {base})_inf did not converge within {policy.max_factors} factors"
    )


