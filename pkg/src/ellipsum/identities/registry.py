"""Identity registry and the trial-execution engine.

Every trial draws its own random stream from ``(seed, crc32(id), index)``,
so a report does not depend on trial order or on the number of worker
threads.
"""
from __future__ import annotations

import math
import statistics
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..errors import PoleHit, SamplerExhausted, UnknownIdentity, ZeroArgument
from ..theta import DEFAULT_POLICY, RESIDUAL_FLOOR, TruncationPolicy
from .common import _CANCELLATION, SamplingRanges, condition_estimate

__all__ = [
    "Identity",
    "VerificationReport",
    "register",
    "get_identity",
    "list_identities",
    "check_identity",
    "trial_rng",
    "to_jsonable",
    "MAX_RESAMPLES",
]

MAX_RESAMPLES = 100
# A point is resampled when its condition estimate (product of per-stage cancellation
# ratios) times this unit exceeds the identity's declared tolerance.
CONDITION_UNIT = 1e-14
MAX_REPORTED_FAILURES = 20

Sides = Callable[[dict, TruncationPolicy], list]
Study = Callable[[dict, TruncationPolicy], tuple]


@dataclass(frozen=True)
class Identity:
    """One registered identity.

    ``sampler(rng, ranges)`` returns a parameter point (a dict).  Equality
    entries provide ``sides(point, policy)`` returning ``(lhs, rhs)`` pairs; the
    trial residual is the worst pair.  Convergence entries provide
    ``study(point, policy)`` returning ``(residual, ok, details)`` and are
    judged by ``ok`` alone.
    """

    id: str
    anchor: str
    summary: str
    sampler: Callable
    sides: Optional[Sides] = None
    study: Optional[Study] = None
    trials: int = 100
    tolerance: float = 1e-9

    @property
    def kind(self) -> str:
        return "equality" if self.sides is not None else "convergence"


_REGISTRY: dict = {}


def register(identity: Identity) -> Identity:
    if identity.id in _REGISTRY:
        raise ValueError(f"duplicate identity id {identity.id!r}")
    if (identity.sides is None) == (identity.study is None):
        raise ValueError("an identity needs exactly one of sides / study")
    _REGISTRY[identity.id] = identity
    return identity


def get_identity(ident: str) -> Identity:
    try:
        return _REGISTRY[ident]
    except KeyError:
        raise UnknownIdentity(ident) from None


def list_identities() -> list:
    """Registered identities sorted by id."""
    return [_REGISTRY[k] for k in sorted(_REGISTRY)]


def trial_rng(seed: int, ident: str, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(ident.encode()), index]))


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def to_jsonable(value):
    """Parameter points to JSON-friendly values; complex numbers become ``a+bi`` strings."""
    if isinstance(value, (complex, np.complexfloating)):
        return _fmt_complex(complex(value))
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


class _Degenerate(ArithmeticError):
    """A sampled point produced non-finite values; treated like a pole."""


_RESAMPLE_ON = (PoleHit, ZeroDivisionError, ZeroArgument, OverflowError, _Degenerate)


@dataclass
class _Trial:
    point: dict
    residual: float
    ok: Optional[bool]
    resamples: int
    details: dict = field(default_factory=dict)


def _residual(pairs, perturb: float) -> float:
    worst = 0.0
    for lhs, rhs in pairs:
        lhs = complex(lhs)
        rhs = complex(rhs) * (1 + perturb)
        if not (math.isfinite(abs(lhs)) and math.isfinite(abs(rhs))):
            raise _Degenerate("non-finite side")
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), RESIDUAL_FLOOR))
    return worst


def _run_trial(identity: Identity, seed: int, index: int, ranges: SamplingRanges,
               policy: TruncationPolicy, perturb: float) -> _Trial:
    rng = trial_rng(seed, identity.id, index)
    for attempt in range(MAX_RESAMPLES + 1):
        point = identity.sampler(rng, ranges)
        box = {}
        token = _CANCELLATION.set(box)
        try:
            with np.errstate(all="ignore"):
                if identity.sides is not None:
                    pairs = identity.sides(point, policy)
                    if condition_estimate(box) * CONDITION_UNIT > identity.tolerance:
                        raise _Degenerate("ill-conditioned point")
                    res = _residual(pairs, perturb)
                    return _Trial(point, res, None, attempt)
                res, ok, details = identity.study(point, policy)
                return _Trial(point, res, ok, attempt, details)
        except _RESAMPLE_ON:
            continue
        finally:
            _CANCELLATION.reset(token)
    raise SamplerExhausted(
        f"{identity.id}: trial {index} hit poles {MAX_RESAMPLES + 1} times in a row"
    )


@dataclass
class VerificationReport:
    """Outcome of ``trials`` sampled checks of one identity.

    ``failures`` lists at most ``MAX_REPORTED_FAILURES`` failing points;
    ``failure_count`` is the full number.
    """

    id: str
    anchor: str
    kind: str
    trials: int
    seed: int
    tolerance: float
    max_residual: float
    median_residual: float
    failures: list
    passed: bool
    resamples: int = 0
    failure_count: int = 0
    details: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "kind": self.kind,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "median_residual": self.median_residual,
            "failures": self.failures,
            "passed": self.passed,
            "resamples": self.resamples,
            "failure_count": self.failure_count,
            "details": self.details,
        }
        if include_time:
            out["wall_time"] = self.wall_time
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__ if k in data})


def check_identity(ident: str, trials: Optional[int] = None, seed: int = 0,
                   tolerance: Optional[float] = None, ranges: Optional[SamplingRanges] = None,
                   policy: TruncationPolicy = DEFAULT_POLICY, perturb: float = 0.0,
                   workers: int = 1) -> VerificationReport:
    """Run sampled trials of one identity.

    Parameters
    ----------
    ident : str
        Registered slug.
    trials, tolerance : optional
        Override the identity's defaults.
    seed : int
        Suite seed; each trial's stream is derived from ``(seed, ident, index)``.
    perturb : float
        Relative perturbation applied to every right-hand side (negative
        controls).  Ignored by convergence entries.
    workers : int
        Number of threads the trials are spread over.  Does not affect results.
    """
    identity = get_identity(ident)
    trials = identity.trials if trials is None else int(trials)
    tol = identity.tolerance if tolerance is None else float(tolerance)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    ranges = ranges or SamplingRanges()
    start = time.perf_counter()

    def run(i):
        return _run_trial(identity, seed, i, ranges, policy, perturb)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(trials)))
    else:
        outcomes = [run(i) for i in range(trials)]

    residuals = [o.residual for o in outcomes]
    failures = []
    for i, o in enumerate(outcomes):
        bad = (not o.ok) if identity.kind == "convergence" else not (o.residual <= tol)
        if bad:
            failures.append({"trial": i, "params": to_jsonable(o.point),
                             "residual": o.residual, "details": to_jsonable(o.details)})
    details = {}
    if identity.kind == "convergence":
        orders = [o.details.get("order") for o in outcomes if o.details.get("order") is not None]
        finite = [x for x in orders if math.isfinite(x)]
        details["median_empirical_order"] = statistics.median(finite) if finite else None
        details["sample"] = to_jsonable(outcomes[0].details)
    return VerificationReport(
        id=identity.id,
        anchor=identity.anchor,
        kind=identity.kind,
        trials=trials,
        seed=seed,
        tolerance=tol,
        max_residual=max(residuals),
        median_residual=statistics.median(residuals),
        failures=failures[:MAX_REPORTED_FAILURES],
        passed=not failures,
        resamples=sum(o.resamples for o in outcomes),
        failure_count=len(failures),
        details=details,
        wall_time=time.perf_counter() - start,
    )
