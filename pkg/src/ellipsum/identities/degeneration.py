"""Convergence studies of the rescaled cubic factorials to ``(az, a/z; q)_n`` as ``p -> 0``."""
from __future__ import annotations

import math
import statistics

from ..cubic import degeneration_values, empirical_order
from ..theta import rel_residual
from .common import rand_complex, rand_primitives
from .registry import Identity, register

P_GRID = (1e-3, 1e-4, 1e-5)
FIRST_RATIO_RANGE = (3.0, 30.0)
DEGENERATION_N_MAX = 5


def _sample(rng, ranges):
    pt = {"t": rand_primitives(rng, ranges, basic=True)["t"]}
    pt["a"] = rand_complex(rng, ranges)
    pt["z"] = rand_complex(rng, ranges)
    pt["n"] = int(rng.integers(1, DEGENERATION_N_MAX + 1))
    return pt


def _study(family: str, ratio_range=None):
    """Residuals over ``P_GRID``; passing needs strictly decreasing residuals.

    With ``ratio_range`` every consecutive ratio ``r_i / r_{i+1}`` must also lie
    in it.  ``order`` is the median log-log slope of the relative distance
    ``|value - limit| / |limit|``, which unlike the residual does not saturate
    when the values move away from the limit.
    """
    def study(pt, policy):
        values, target = degeneration_values(family, pt["a"], pt["z"], pt["t"], pt["n"], P_GRID, policy)
        residuals = [rel_residual(v, target) for v in values]
        if not all(math.isfinite(r) for r in residuals):
            raise ArithmeticError("non-finite degeneration residual")
        ratios = [r0 / r1 if r1 > 0 else math.inf for r0, r1 in zip(residuals, residuals[1:])]
        ok = all(r1 < r0 for r0, r1 in zip(residuals, residuals[1:]))
        if ratio_range is not None:
            ok = ok and all(ratio_range[0] <= x <= ratio_range[1] for x in ratios)
        distances = [abs(v - target) / abs(target) for v in values]
        orders = [x for x in empirical_order(P_GRID, distances) if math.isfinite(x)]
        details = {
            "p_values": list(P_GRID),
            "residuals": residuals,
            "ratios": ratios,
            "distances": distances,
            "order": statistics.median(orders) if orders else float("nan"),
        }
        return residuals[-1], ok, details
    return study


register(Identity(
    id="degeneration-first",
    anchor="p -> 0 limit of the first cubic factorial: three terms in the various double",
    summary=("a -> -a/(p(1 + a^2 q^{n-1})), rescaled by (1 + a^2 q^{n-1})^n, p in {1e-3, 1e-4, 1e-5}; "
             "passes when residuals strictly decrease with ratios in [3, 30]"),
    sampler=_sample,
    study=_study("first", FIRST_RATIO_RANGE), trials=50,
))

register(Identity(
    id="degeneration-second",
    anchor="p -> 0 limit of the second cubic factorial: three terms in the various double",
    summary=("b -> -b/(p^{1/3}(1 + b^2 q^{n-1})), rescaled by (1 + b^2 q^{n-1})^n, p in {1e-3, 1e-4, 1e-5}; "
             "passes when residuals strictly decrease; the empirical order is reported"),
    sampler=_sample,
    study=_study("second"), trials=50,
))
