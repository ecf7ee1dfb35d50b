"""Registry of verifiable identities and the sampling engine that checks them."""
from .common import SamplingRanges
from .registry import (
    Identity,
    VerificationReport,
    check_identity,
    get_identity,
    list_identities,
    trial_rng,
)
from . import cubic, degeneration, multivariate, operators, structural, summations  # noqa: F401  (registers entries)

__all__ = [
    "Identity",
    "SamplingRanges",
    "VerificationReport",
    "check_identity",
    "get_identity",
    "list_identities",
    "trial_rng",
]
