"""Structural identities of theta, the elliptic shifted factorial and the cubic theta function."""
from __future__ import annotations

from ..cubic import cooper_toh_terms_1, cooper_toh_terms_2, gamma, gamma_splitting_sides
from ..theta import addition_formula_terms, theta
from .common import Kit, params_of, rand_complex, rand_primitives, tracked_sum
from .registry import Identity, register

FUNCTIONAL_EQ_RANGE = 2


def _sample(rng, ranges, names):
    pt = rand_primitives(rng, ranges)
    for name in names:
        pt[name] = rand_complex(rng, ranges)
    return pt


def _three_term_pair(t1, t2, t3):
    # t1 = t2 + t3; the sum is tracked so cancelling right sides are resampled
    return t1, tracked_sum([t2, t3])


# -- theta -----------------------------------------------------------------------

def theta_structural_sides(pt, policy):
    """Inversion, p-shift, addition formula and the p-shift of ``(a; q, p)_n``."""
    params = params_of(pt)
    k_ = Kit(params, policy)
    p, q = k_.p, k_.q
    x, y, u, v, n = pt["x"], pt["y"], pt["u"], pt["v"], pt["n"]
    th = lambda w: theta(w, p, policy)
    return [
        (th(x), -x * th(1 / x)),
        (th(p * x), -th(x) / x),
        _three_term_pair(*addition_formula_terms(x, y, u, v, p, policy)),
        (k_.fac(n, p * x), (-1) ** n * x ** (-n) * q ** (-(n * (n - 1) // 2)) * k_.fac(n, x)),
    ]


def _theta_sample(rng, ranges):
    pt = _sample(rng, ranges, "xyuv")
    pt["n"] = int(rng.integers(0, ranges.n_max + 1))
    return pt


register(Identity(
    id="theta-structural",
    anchor="theta function structure: inversion, quasi-periodicity and the addition formula",
    summary="theta inversion, p-shift, three-term addition (x,y,u,v free) and p-shift of (x; q,p)_n, n in 0..6",
    sampler=_theta_sample,
    sides=theta_structural_sides, trials=200, tolerance=1e-9,
))


# -- cubic theta --------------------------------------------------------------------

def gamma_structural_sides(pt, policy):
    """Symmetries, quasi-periodicities, functional equation, splittings and both three-term relations."""
    params = params_of(pt)
    s, p = params.s, params.p
    z, a, lam, mu = pt["z"], pt["a"], pt["lam"], pt["mu"]
    g = lambda zz, aa: gamma(zz, aa, p, policy)
    base = g(z, a)
    pairs = [
        (g(1 / z, a), base),
        (g(z, 1 / a), base),
        (g(p * z, a), base / (p * z * z)),
        (g(z, p ** 3 * a), base / (p ** 3 * a * a)),
        (base, p ** (3 * lam * lam + 3 * lam * mu + mu * mu) * a ** (2 * lam + mu) * z ** mu
         * g(s ** (3 * mu) * z, s ** (9 * (2 * lam + mu)) * a)),
    ]
    pairs.extend(gamma_splitting_sides(z, a, s, policy))
    pairs.append(_three_term_pair(*cooper_toh_terms_1(pt["z1"], pt["z2"], pt["z3"], pt["alpha"], p, policy)))
    pairs.append(_three_term_pair(*cooper_toh_terms_2(z, pt["a1"], pt["a2"], pt["a3"], s, policy)))
    return pairs


def _gamma_sample(rng, ranges):
    pt = _sample(rng, ranges, ["z", "a", "z1", "z2", "z3", "alpha", "a1", "a2", "a3"])
    pt["lam"] = int(rng.integers(-FUNCTIONAL_EQ_RANGE, FUNCTIONAL_EQ_RANGE + 1))
    pt["mu"] = int(rng.integers(-FUNCTIONAL_EQ_RANGE, FUNCTIONAL_EQ_RANGE + 1))
    return pt


register(Identity(
    id="gamma-structural",
    anchor="cubic theta structure: we immediately deduce the symmetries; we have the quasi periodicities",
    summary=("two symmetries, two quasi-periodicities, functional equation with lambda, mu in -2..2, "
             "mod-3 and parity splittings, both three-term addition relations"),
    sampler=_gamma_sample,
    sides=gamma_structural_sides, trials=200, tolerance=1e-9,
))
