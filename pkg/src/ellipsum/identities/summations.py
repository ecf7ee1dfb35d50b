"""Single-variable summation identities: very-well-poised sums, Karlsson-Minton and quadratic."""
from __future__ import annotations

from ..expansion import taylor_weight
from ..operator import wp_basis
from ..series import BalancedQuintuple, VwpSpec, ft_10v9_spec, ft_rhs, jackson_8phi7_terms, vwp_terms
from ..theta import EllipticParams
from .common import Kit, params_of, rand_complex, rand_primitives, tracked_iterate, tracked_sum
from .registry import Identity, register


def _sample(rng, ranges, names, n_lo=0, n_hi=None, basic=False):
    point = rand_primitives(rng, ranges, basic)
    for name in names:
        point[name] = rand_complex(rng, ranges)
    point["n"] = int(rng.integers(n_lo, (ranges.n_max if n_hi is None else n_hi) + 1))
    return point


def _vwp(spec, params, policy):
    spec.validate(params)
    return tracked_sum(vwp_terms(spec, params, policy))


# -- 10V9 and 8phi7 ---------------------------------------------------------

def _quintuple(pt):
    return BalancedQuintuple.solve(pt["a"], pt["b"], pt["c"], pt["d"], pt["n"], params_of(pt))


def ft_sides(pt, policy):
    params = params_of(pt)
    q5 = _quintuple(pt)
    return [(_vwp(ft_10v9_spec(q5, params), params, policy), ft_rhs(q5, params, policy))]


def jackson_sides(pt, policy):
    params = params_of(pt)
    q5 = _quintuple(pt)
    basic = EllipticParams(params.t, 0)
    return [(tracked_sum(jackson_8phi7_terms(q5, params)), ft_rhs(q5, basic, policy))]


register(Identity(
    id="frenkel-turaev-10v9",
    anchor="10V9 summation: the following _{10}V_9 summation formula",
    summary="a,b,c,d free, e = a^2 q^{n+1}/(bcd), n in 0..6",
    sampler=lambda rng, r: _sample(rng, r, "abcd"),
    sides=ft_sides, trials=200, tolerance=1e-9,
))

register(Identity(
    id="jackson-8phi7",
    anchor="terminating 8phi7 summation (p = 0): elliptic analogue of Jackson's 8phi7",
    summary="p = 0; a,b,c,d free, e solved from the balancing condition, n in 0..6",
    sampler=lambda rng, r: _sample(rng, r, "abcd", basic=True),
    sides=jackson_sides, trials=200, tolerance=1e-11,
))


# -- Taylor route to 10V9 ---------------------------------------------------

def taylor_example_sides(pt, policy):
    params = params_of(pt)
    k_ = Kit(params, policy)
    a, b, c, z, n = pt["a"], pt["b"], pt["c"], pt["z"], pt["n"]
    q = k_.q
    f = wp_basis(b, c, n, params, policy)
    coeffs = [taylor_weight(a, c, k, params, policy)
              * tracked_iterate(f, c, k, a * k_.t ** (2 * k), params, policy)
              for k in range(n + 1)]
    pref = k_.fac(n, a * b, b / a) / k_.fac(n, a * c, c / a)
    pairs = []
    for k in range(n + 1):
        closed = (pref * k_.th(a * c * q ** (2 * k - 1)) / k_.th(a * c / q)
                  * k_.fac(k, a * c / q, c / b, b * c * q ** (n - 1), q ** (-n))
                  / k_.fac(k, q, a * b, a * q ** (1 - n) / b, a * c * q ** n) * q ** k)
        pairs.append((coeffs[k], closed))
    lhs = k_.fac(n, a * c, c / a, b * z, b / z) / k_.fac(n, a * b, b / a, c * z, c / z)
    spec = VwpSpec(a * c / q, [a * z, a / z, c / b, b * c * q ** (n - 1), q ** (-n)], n)
    pairs.append((lhs, _vwp(spec, params, policy)))
    return pairs


register(Identity(
    id="taylor-10v9-example",
    anchor="Taylor expansion example: thus yielding Frenkel and Turaev's 10V9 summation",
    summary="f = (bz,b/z)_n/(cz,c/z)_n expanded about a; coefficients and resulting 10V9, n in 0..6",
    sampler=lambda rng, r: _sample(rng, r, "abcz"),
    sides=taylor_example_sides, trials=100, tolerance=1e-9,
))


# -- Karlsson-Minton type ---------------------------------------------------

def _km12_sample(rng, ranges):
    pt = _sample(rng, ranges, "abdz")
    pt["split"] = int(rng.integers(0, pt["n"] + 1))
    return pt


def km12_sides(pt, policy):
    params = params_of(pt)
    k_ = Kit(params, policy)
    a, b, d, z, n, s = pt["a"], pt["b"], pt["d"], pt["z"], pt["n"], pt["split"]
    q = k_.q
    lhs = (k_.fac(n, q, a * a * q) / k_.fac(n, a * q * z, a * q / z)
           * k_.fac(s, b * z, b / z) * k_.fac(n - s, d * z, d / z)
           / (k_.fac(s, a * b, b / a) * k_.fac(n - s, a * d, d / a)))
    spec = VwpSpec(a * a, [a * z, a / z, a * q / b, a * q / d, a * b * q ** s,
                           a * d * q ** (n - s), q ** (-n)], n)
    return [(lhs, _vwp(spec, params, policy))]


register(Identity(
    id="km-12v11",
    anchor="Karlsson-Minton 12V11: elliptic Karlsson--Minton type identity (two factorial blocks)",
    summary="a,b,d,z free, n in 0..6, split s in 0..n",
    sampler=_km12_sample,
    sides=km12_sides, trials=100, tolerance=1e-9,
))


def _km_theta_sample(rng, ranges):
    pt = _sample(rng, ranges, "az")
    pt["b"] = [rand_complex(rng, ranges) for _ in range(pt["n"])]
    return pt


def km_theta_sides(pt, policy):
    """Theta-product Karlsson-Minton sum with ``b_j`` in both product slots."""
    params = params_of(pt)
    k_ = Kit(params, policy)
    a, z, n, bs = pt["a"], pt["z"], pt["n"], pt["b"]
    q = k_.q
    lhs = k_.fac(n, a * a * q, q) / k_.fac(n, a * q * z, a * q / z)
    for b in bs:
        lhs *= k_.th(b * z, b / z)
    terms = []
    for k in range(n + 1):
        term = (q ** (k * (n + 1)) * k_.th(a * a * q ** (2 * k)) / k_.th(a * a)
                * k_.fac(k, q ** (-n), a * a, a * z, a / z)
                / k_.fac(k, q, a * a * q ** (n + 1), a * q * z, a * q / z))
        for b in bs:
            term *= k_.th(a * b * q ** k, b * q ** (-k) / a)
        terms.append(term)
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="km-theta-products",
    anchor="Karlsson-Minton theta products: elliptic Karlsson--Minton type identity (prod theta(b_j z, b_j/z))",
    summary="a,z and b_1..b_n free, n in 0..6; right side uses b_j in both theta slots",
    sampler=_km_theta_sample,
    sides=km_theta_sides, trials=100, tolerance=1e-9,
))


# -- quadratic ---------------------------------------------------------------

def warnaar_sides(pt, policy):
    params = params_of(pt)
    k_ = Kit(params, policy)
    t = k_.t
    q = k_.q
    a, c, z, n = pt["a"], pt["c"], pt["z"], pt["n"]
    lhs = (k_.fac(n, a * z, a / z) / k_.fac(n, c * z, c / z)
           * k_.fac_half(2 * n, c / t) / k_.fac_half(2 * n, a / t))
    terms = []
    for k in range(n + 1):
        terms.append(
            t ** (2 * k) * k_.th(c * t ** (6 * k - 3)) / k_.th(c * t ** -3)
            * k_.fac(k, c / a, a * c * q ** (n - 1), q ** (-n)) / k_.fac(k, c * z, c / z, q)
            * k_.fac_half(k, c * t ** -3, t * z, t / z)
            / k_.fac_half(k, a / t, c * t ** (4 * n - 1), t ** (3 - 4 * n) / a)
        )
    return [(lhs, tracked_sum(terms))]


register(Identity(
    id="warnaar-gessel-stanton",
    anchor="quadratic summation: originally proved by using inverse relations",
    summary="a,c,z free, n in 0..6; q^{1/2}-factorials from t^2",
    sampler=lambda rng, r: _sample(rng, r, "acz"),
    sides=warnaar_sides, trials=100, tolerance=1e-9,
))


def remark_sides(pt, policy):
    """Quadratic-basis element expanded in the well-poised basis.

    Three right-hand sides: the explicit sum (with ``k``-indexed factorials),
    the same sum as a 10V9 series, and its closed-form evaluation.
    """
    params = params_of(pt)
    k_ = Kit(params, policy)
    t, q = k_.t, k_.q
    a, c, z, n = pt["a"], pt["c"], pt["z"], pt["n"]
    lhs = (k_.fac_half(n, t * z, t / z) / k_.fac_half(n, a * t, t / a)
           * k_.fac(n, a * c, c / a) / k_.fac(n, c * z, c / z))
    upper = [a * z, a / z, c * t ** (2 * n - 3), c * t ** (2 * n - 1), q ** (-n)]
    terms = []
    for k in range(n + 1):
        terms.append(
            q ** k * k_.th(a * c * q ** (2 * k - 1)) / k_.th(a * c / q)
            * k_.fac(k, q ** (-n), a * c / q, *upper[:4])
            / k_.fac(k, q, a * c * q ** n, c * z, c / z, a * t ** (1 - 2 * n), a * t ** (3 - 2 * n))
        )
    series = _vwp(VwpSpec(a * c / q, upper, n), params, policy)
    closed = (k_.fac(n, a * c, c / a, t ** (3 - 2 * n) * z, t ** (3 - 2 * n) / z)
              / k_.fac(n, c * z, c / z, a * t ** (3 - 2 * n), t ** (3 - 2 * n) / a))
    return [(lhs, tracked_sum(terms)), (lhs, series), (lhs, closed)]


register(Identity(
    id="remark-pseudo-quadratic",
    anchor="pseudo-quadratic expansion remark: true quadratic summation formula",
    summary="a,c,z free, n in 0..6; checked against the explicit sum, the 10V9 series and its closed form",
    sampler=lambda rng, r: _sample(rng, r, "acz"),
    sides=remark_sides, trials=100, tolerance=1e-9,
))
