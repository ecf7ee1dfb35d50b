"""Numerical kernels and a sampled verification harness for elliptic and cubic theta identities.

The kernels (theta functions, elliptic shifted factorials, very-well-poised
sums, the elliptic Askey-Wilson operator, Taylor and interpolation
expansions, the cubic theta function) live in submodules and are
re-exported here.  :mod:`ellipsum.identities` holds the identity registry.
"""
from .cubic import (
    cubic_fact_1,
    cubic_fact_2,
    degeneration_check,
    degeneration_values,
    empirical_order,
    gamma,
)
from .errors import (
    BalanceViolation,
    DegreeOverflow,
    EllipsumError,
    NomeOutOfRange,
    PoleHit,
    SamplerExhausted,
    TruncationExhausted,
    UnknownIdentity,
    ZeroArgument,
)
from .expansion import (
    KarlssonMintonConfig,
    MultivarConfig,
    interpolate,
    interpolate_multi,
    quadratic_taylor_coeffs,
    reconstruct_multi,
    taylor_coeffs,
    taylor_coeffs_multi,
)
from .identities import SamplingRanges, VerificationReport, check_identity, get_identity, list_identities
from .operator import (
    WcnElement,
    apply_D,
    apply_D_iter,
    apply_D_multi,
    cooper_explicit,
    cooper_explicit_multi,
    wp_basis,
)
from .pochhammer import elliptic_binomial, qp_fact, qp_fact_multi
from .series import BalancedQuintuple, VwpSpec, ft_rhs, vwp_sum
from .theta import DEFAULT_POLICY, EllipticParams, TruncationPolicy, rel_residual, theta, theta_multi

__version__ = "0.1.0"

__all__ = [
    "BalanceViolation",
    "BalancedQuintuple",
    "DEFAULT_POLICY",
    "DegreeOverflow",
    "EllipsumError",
    "EllipticParams",
    "KarlssonMintonConfig",
    "MultivarConfig",
    "NomeOutOfRange",
    "PoleHit",
    "SamplerExhausted",
    "SamplingRanges",
    "TruncationExhausted",
    "TruncationPolicy",
    "UnknownIdentity",
    "VerificationReport",
    "VwpSpec",
    "WcnElement",
    "ZeroArgument",
    "apply_D",
    "apply_D_iter",
    "apply_D_multi",
    "check_identity",
    "cooper_explicit",
    "cooper_explicit_multi",
    "cubic_fact_1",
    "cubic_fact_2",
    "degeneration_check",
    "degeneration_values",
    "elliptic_binomial",
    "empirical_order",
    "ft_rhs",
    "gamma",
    "get_identity",
    "interpolate",
    "interpolate_multi",
    "list_identities",
    "qp_fact",
    "qp_fact_multi",
    "quadratic_taylor_coeffs",
    "reconstruct_multi",
    "rel_residual",
    "taylor_coeffs",
    "taylor_coeffs_multi",
    "theta",
    "theta_multi",
    "vwp_sum",
    "wp_basis",
]
