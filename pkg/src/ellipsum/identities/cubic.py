"""Summations whose test functions carry cubic theta shifted factorials.

A cubic factorial ``<U, V>_k`` is evaluated as ``cubic_fact(A, Z, k)`` with
``A Z = U`` and ``A / Z = V``; ``A`` and ``Z`` are written as exact powers of
``t = q^{1/4}`` so no square roots are taken.
"""
from __future__ import annotations

from .common import Kit, params_of, rand_complex, tracked_sum
from .registry import Identity, register
from .summations import _sample

CUBIC_N_MAX = 5
CUBIC_TRIALS = 100
CUBIC_TOL = 1e-8


def _cubic_sample(names):
    return lambda rng, r: _sample(rng, r, names, n_hi=CUBIC_N_MAX)


# -- Jackson type -----------------------------------------------------------------

def cubic_jackson_1_sides(pt, policy):
    params = params_of(pt)
    k_ = Kit(params, policy)
    t, q = k_.t, k_.q
    a, b, c, z, n = pt["a"], pt["b"], pt["c"], pt["z"], pt["n"]
    lhs = k_.fac(n, b * c, c / b) * k_.cf1(a, z, n) / k_.fac(n, c * z, c / z)
    terms = []
    for k in range(n + 1):
        terms.append(
            q ** (n * k) * (c / b) ** k * k_.th(b * c * q ** (2 * k - 1)) / k_.th(b * c / q)
            * k_.fac(k, q ** (-n), b * c / q, b * z, b / z) / k_.fac(k, q, b * c * q ** n, c * z, c / z)
            * k_.cf1(a * t ** (2 * (n - k)), c * t ** (2 * (n + k - 2)), k)      # <acq^{n-1}, aq^{1-k}/c>_k
            * k_.cf1(a, b * q ** k, n)                                         # <abq^k, aq^{-k}/b>_n
            / k_.cf1(a * t ** (2 * (n - k)), b * t ** (2 * (n + k)), k)        # <abq^n, aq^{-k}/b>_k
        )
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="cubic-jackson-1",
    anchor="first cubic Jackson summation: first cubic theta extension of Jackson's",
    summary="f = <az, a/z>_n/(cz, c/z)_n expanded about b; a,b,c,z free, n in 0..5",
    sampler=_cubic_sample("abcz"),
    sides=cubic_jackson_1_sides, trials=CUBIC_TRIALS, tolerance=CUBIC_TOL,
))


def cubic_jackson_2_sides(pt, policy):
    params = params_of(pt)
    k_ = Kit(params, policy)
    t, q = k_.t, k_.q
    a, b, c, z, n = pt["a"], pt["b"], pt["c"], pt["z"], pt["n"]
    lhs = k_.cf2(b, z, n) / k_.fac(n, c * z, c / z) * k_.fac(n, a * c, c / a)
    terms = []
    for k in range(n + 1):
        terms.append(
            q ** (n * k) * (c / a) ** k * k_.th(a * c * q ** (2 * k - 1)) / k_.th(a * c / q)
            * k_.fac(k, q ** (-n), a * c / q, a * z, a / z) / k_.fac(k, q, a * c * q ** n, c * z, c / z)
            * k_.cf2(b * t ** (2 * (n - k)), c * t ** (2 * (n + k - 2)), k)      # <<bcq^{n-1}, bq^{1-k}/c>>_k
            * k_.cf2(b * t ** (2 * k), a * t ** (2 * k), n - k)                # <<abq^k, b/a>>_{n-k}
        )
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="cubic-jackson-2",
    anchor="second cubic Jackson summation: second cubic theta extension of Jackson's",
    summary="f = <<bz, b/z>>_n/(cz, c/z)_n with nome p^{1/3} expanded about a; n in 0..5",
    sampler=_cubic_sample("abcz"),
    sides=cubic_jackson_2_sides, trials=CUBIC_TRIALS, tolerance=CUBIC_TOL,
))


# -- Gessel-Stanton type ----------------------------------------------------------

def _gessel_stanton_sides(pt, policy, cf):
    """Quadratic-basis expansion of ``<az, a/z>_n/(cz, c/z)_n`` for cubic factorial ``cf``."""
    params = params_of(pt)
    k_ = Kit(params, policy)
    t, q = k_.t, k_.q
    a, c, z, n = pt["a"], pt["c"], pt["z"], pt["n"]
    lhs = cf(a, z, n) / k_.fac(n, c * z, c / z) * k_.fac(n, c / t, c * t)
    terms = []
    for k in range(n + 1):
        terms.append(
            c ** k * t ** (k * (k - 2)) * q ** (n * k)
            * k_.th(c * t ** (6 * k - 3)) / k_.th(c * t ** (2 * k - 3))
            * k_.fac(k, q ** (-n)) / k_.fac(k, q)
            * k_.fac_half(k, c / t) / k_.fac_half(k, c * t ** (4 * n - 1))
            * k_.fac_half(k, t * z, t / z) / k_.fac(k, c * z, c / z)
            * cf(a * t ** (2 * (n - k)), c * t ** (2 * (n + k - 2)), k)     # <acq^{n-1}, aq^{1-k}/c>_k
            * cf(a * t ** (2 * k), t, n - k)                               # <aq^{k/2+1/4}, aq^{k/2-1/4}>_{n-k}
        )
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="cubic-gessel-stanton-1",
    anchor="first cubic Gessel-Stanton summation: cubic theta extension of Gessel and Stanton's",
    summary="f = <az, a/z>_n/(cz, c/z)_n in the quadratic basis; a,c,z free, n in 0..5",
    sampler=_cubic_sample("acz"),
    sides=lambda pt, policy: _gessel_stanton_sides(pt, policy, Kit(params_of(pt), policy).cf1),
    trials=CUBIC_TRIALS, tolerance=CUBIC_TOL,
))

register(Identity(
    id="cubic-gessel-stanton-2",
    anchor="second cubic Gessel-Stanton summation: another cubic theta extension of",
    summary="f = <<az, a/z>>_n/(cz, c/z)_n (nome p^{1/3}) in the quadratic basis; n in 0..5",
    sampler=_cubic_sample("acz"),
    sides=lambda pt, policy: _gessel_stanton_sides(pt, policy, Kit(params_of(pt), policy).cf2),
    trials=CUBIC_TRIALS, tolerance=CUBIC_TOL,
))


# -- Karlsson-Minton type -----------------------------------------------------------

def _cubic_km_sample(rng, ranges):
    pt = _sample(rng, ranges, "abz", n_hi=CUBIC_N_MAX)
    pt["split"] = int(rng.integers(0, pt["n"] + 1))
    pt["bs"] = [rand_complex(rng, ranges) for _ in range(pt["split"])]
    pt["ds"] = [rand_complex(rng, ranges) for _ in range(pt["n"] - pt["split"])]
    return pt


def cubic_km_sides(pt, policy):
    """Cubic factorial form and the mixed theta / cubic theta product form."""
    params = params_of(pt)
    k_ = Kit(params, policy)
    q = k_.q
    a, b, z, n = pt["a"], pt["b"], pt["z"], pt["n"]
    pref = k_.fac(n, a * a * q, q) / k_.fac(n, a * q * z, a * q / z)
    weights = [q ** (k * (n + 1)) * k_.th(a * a * q ** (2 * k)) / k_.th(a * a)
               * k_.fac(k, q ** (-n), a * a, a * z, a / z)
               / k_.fac(k, q, a * a * q ** (n + 1), a * q * z, a * q / z)
               for k in range(n + 1)]
    factorial_form = (pref * k_.cf1(b, z, n),
                      tracked_sum(w * k_.cf1(b, a * q ** k, n) for k, w in enumerate(weights)))
    lhs = pref
    for bi in pt["bs"]:
        lhs *= k_.th(bi * z, bi / z)
    for d in pt["ds"]:
        lhs *= k_.gamma(z, d)
    terms = []
    for k, w in enumerate(weights):
        x = a * q ** k
        for bi in pt["bs"]:
            w *= k_.th(bi * x, bi / x)
        for d in pt["ds"]:
            w *= k_.gamma(x, d)
        terms.append(w)
    return [factorial_form, (lhs, tracked_sum(terms))]


register(Identity(
    id="cubic-km",
    anchor="cubic Karlsson-Minton: Karlsson--Minton type identity involving cubic theta functions",
    summary=("<bz, b/z>_n form, and the product form with s theta pairs theta(b_i z, b_i/z) "
             "and n - s factors gamma(z, d_j); n in 0..5, s in 0..n"),
    sampler=_cubic_km_sample,
    sides=cubic_km_sides, trials=CUBIC_TRIALS, tolerance=CUBIC_TOL,
))
