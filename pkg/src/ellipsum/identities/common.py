"""Sampling helpers and a small evaluation kit shared by the identity definitions."""
from __future__ import annotations

import contextvars
import math
from dataclasses import asdict, dataclass

import numpy as np

from ..cubic import cubic_fact_1, cubic_fact_2, gamma
from ..operator import cooper_terms
from ..pochhammer import qp_fact_multi
from ..series import csum
from ..theta import EllipticParams, TruncationPolicy, theta


@dataclass(frozen=True)
class SamplingRanges:
    """Parameter ranges used by every sampler.

    Free complex parameters get a log-uniform modulus in ``modulus`` and a
    uniform phase; ``|q|`` and ``|p|`` are drawn from their own intervals.
    """

    modulus: tuple = (0.3, 1.5)
    q_modulus: tuple = (0.2, 0.8)
    p_modulus: tuple = (0.05, 0.5)
    n_max: int = 6
    n_multi_max: int = 3

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, data: dict) -> "SamplingRanges":
        kw = {}
        for key, val in data.items():
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown sampling range {key!r}")
            kw[key] = tuple(val) if isinstance(val, list) else val
        return cls(**kw)


# Per-stage largest cancellation ratio seen by tracked_sum during the current trial.
_CANCELLATION = contextvars.ContextVar("cancellation", default=None)


def tracked_sum(terms, stage: str = "sum") -> complex:
    """Compensated sum that records ``sum |t| / |sum t|`` for the running trial.

    Ratios are kept per ``stage``; a chain of nested sums (coefficients, then
    an expansion built from them) uses one stage per level, and the engine
    takes the product of the stage maxima as the condition estimate of the
    point.  Points above the engine's bound are resampled: there the relative
    residual measures the conditioning of the point, not the identity.
    """
    terms = list(terms)
    total = csum(terms)
    box = _CANCELLATION.get()
    if box is not None:
        mass = math.fsum(abs(t) for t in terms)
        ratio = mass / max(abs(total), 1e-300) if mass else 1.0
        box[stage] = max(box.get(stage, 1.0), ratio)
    return total


def condition_estimate(box: dict) -> float:
    return math.prod(box.values()) if box else 1.0


def tracked_iterate(f, c, m: int, z, params: EllipticParams, policy: TruncationPolicy,
                    stage: str = "operator") -> complex:
    """``D^{(m)}_c f(z)`` by the explicit formula, summed through :func:`tracked_sum`."""
    return tracked_sum(cooper_terms(f, c, m, z, params, policy), stage)


def log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def rand_complex(rng: np.random.Generator, ranges: SamplingRanges, lo=None, hi=None) -> complex:
    lo = ranges.modulus[0] if lo is None else lo
    hi = ranges.modulus[1] if hi is None else hi
    return complex(log_uniform(rng, lo, hi) * np.exp(1j * rng.uniform(0, 2 * np.pi)))


def rand_primitives(rng: np.random.Generator, ranges: SamplingRanges, basic: bool = False) -> dict:
    """Random ``t`` (``q = t^4``) and ``s`` (``p = s^6``), or ``s = 0`` when ``basic``."""
    qmod = rng.uniform(*ranges.q_modulus)
    t = complex(qmod ** 0.25 * np.exp(1j * rng.uniform(0, 2 * np.pi)))
    if basic:
        return {"t": t, "s": 0j}
    pmod = rng.uniform(*ranges.p_modulus)
    s = complex(pmod ** (1 / 6) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
    return {"t": t, "s": s}


def params_of(point: dict) -> EllipticParams:
    return EllipticParams(point["t"], point["s"])


class Kit:
    """Short names for the kernels, bound to one parameter set."""

    def __init__(self, params: EllipticParams, policy: TruncationPolicy):
        self.params = params
        self.policy = policy
        self.q = params.q
        self.p = params.p
        self.t = params.t

    def th(self, *xs) -> complex:
        out = 1 + 0j
        for x in xs:
            out *= theta(x, self.p, self.policy)
        return out

    def fac(self, n: int, *xs) -> complex:
        return qp_fact_multi(xs, n, self.params, self.policy)

    def fac_half(self, n: int, *xs) -> complex:
        """Factorials in base ``q^{1/2}``."""
        return qp_fact_multi(xs, n, self.params, self.policy, base=self.params.q_half)

    def qq(self, quarters: int) -> complex:
        """``q^{quarters/4}``."""
        return self.t ** quarters

    def gamma(self, z, a, nome=None) -> complex:
        return gamma(z, a, self.p if nome is None else nome, self.policy)

    def cf1(self, a, z, n: int) -> complex:
        return cubic_fact_1(a, z, n, self.params, self.policy)

    def cf2(self, a, z, n: int) -> complex:
        return cubic_fact_2(a, z, n, self.params, self.policy)
