"""Closed-form lower bound of the average achievable data rate.

Rewriting the finite-blocklength rate as R(gamma) = f(1/gamma) / ln 2 with

    f(x) = ln(1 + 1/x) - q sqrt((2x + 1) / (x + 1)^2),   q = Qinv(eps)/sqrt(M),

f is nonnegative, decreasing and convex on (0, g_inverse(q)], where
g(x) = (x + 1) ln(1 + 1/x) / sqrt(2x + 1) is strictly decreasing. Moving the
expectation inside f (Jensen) then needs only E(1/gamma), which has a closed
form in the exponential integral Ei. The convexity region translates into a
maximum usable station-to-UAV distance d_max.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import DerivedConstants
from .fbl_rate import FblConfig
from .geometry import Airspace

_EULER_GAMMA = 0.5772156649015328606
_LN2 = math.log(2.0)
_INV_SQRT3 = 1.0 / math.sqrt(3.0)


def f_penalized(x, q):
    """Penalized log-rate f(x) = ln(1 + 1/x) - q sqrt(2x + 1) / (x + 1)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("f_penalized needs x > 0")
    if q <= 0.0:
        raise ValueError("f_penalized needs q > 0")
    out = np.log1p(1.0 / x) - q * np.sqrt(2.0 * x + 1.0) / (x + 1.0)
    return float(out) if out.ndim == 0 else out


def g_bound(x):
    """Largest penalty coefficient keeping f nonnegative at x; decreasing in x."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("g_bound needs x > 0")
    out = (x + 1.0) * np.log1p(1.0 / x) / np.sqrt(2.0 * x + 1.0)
    return float(out) if out.ndim == 0 else out


def g_inverse(q: float) -> float:
    """Solve g_bound(x) = q for x by bracketed bisection.

    g_bound decreases strictly from +inf to 0, so the root is unique. The
    bracket starts at [1e-12, 1] and the upper end doubles until it crosses.
    Returns the lower bracket end, so g_bound(result) >= q up to rounding
    and f_penalized stays nonnegative at the result.
    """
    q = float(q)
    if q <= 0.0:
        raise ValueError(f"g_inverse needs q > 0, got {q}")
    lo = 1e-12
    while g_bound(lo) <= q:
        lo /= 8.0
        if lo < 1e-300:
            raise RuntimeError(f"failed to bracket g_inverse({q}) from below")
    hi = 1.0
    doublings = 0
    while g_bound(hi) >= q:
        hi *= 2.0
        doublings += 1
        if doublings > 200:
            raise RuntimeError(f"failed to bracket g_inverse({q}) within 200 doublings")
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if g_bound(mid) > q:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-11 + 1e-15 * mid:
            break
    return lo


def g1_threshold(x):
    """Penalty threshold (1 + x) sqrt(2x + 1) / (2 x^2); dominates g_bound."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("g1_threshold needs x > 0")
    out = (1.0 + x) * np.sqrt(2.0 * x + 1.0) / (2.0 * x * x)
    return float(out) if out.ndim == 0 else out


def g2_threshold(x):
    """Penalty threshold (x + 1)(2x + 1)^(5/2) / (2 x^2 (3 x^2 - 1)).

    Only defined right of the pole at 1/sqrt(3); dominates g_bound there.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= _INV_SQRT3):
        raise ValueError("g2_threshold needs x > 1/sqrt(3)")
    out = (x + 1.0) * (2.0 * x + 1.0) ** 2.5 / (2.0 * x * x * (3.0 * x * x - 1.0))
    return float(out) if out.ndim == 0 else out


def _ei_series(x: float) -> float:
    # Convergent series gamma + ln|x| + sum x^k / (k k!). For x < 0 the terms
    # alternate; cancellation stays below ~1e-12 relative only for |x| <= 5.
    total = _EULER_GAMMA + math.log(abs(x))
    term = 1.0
    for k in range(1, 1000):
        term *= x / k
        contrib = term / k
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total) + 1e-300:
            return total
    raise RuntimeError(f"Ei series did not converge at x={x}")


def _ei_asymptotic(x: float) -> float:
    # Divergent expansion Ei(x) ~ (e^x / x) sum k! / x^k, truncated at the
    # smallest term; below machine precision for x >= 40.
    s = 1.0
    term = 1.0
    for k in range(1, 400):
        prev = term
        term *= k / x
        if term >= prev:
            break
        s += term
        if term <= 1e-17 * s:
            break
    return math.exp(x) / x * s


def _e1_continued_fraction(z: float) -> float:
    # Modified Lentz evaluation of E1(z) = e^-z / (z + 1 - 1/(z + 3 - 4/(...))).
    b = z + 1.0
    c = 1e300
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (b + a * d)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h * math.exp(-z)
    raise RuntimeError(f"E1 continued fraction did not converge at z={z}")


def exp_integral_ei(x: float) -> float:
    """Exponential integral Ei(x); principal value for x > 0.

    Series for moderate arguments, continued fraction for x < -5 (where the
    alternating series loses precision) and the optimally truncated
    asymptotic expansion for x >= 40.
    """
    x = float(x)
    if x == 0.0:
        raise ValueError("Ei is singular at x = 0")
    if x > 700.0:
        raise OverflowError("Ei overflows double precision for x > 700")
    if x >= 40.0:
        return _ei_asymptotic(x)
    if x >= -5.0:
        return _ei_series(x)
    return -_e1_continued_fraction(-x)


def d_max(consts: DerivedConstants, cfg: FblConfig) -> float:
    """Largest station-to-UAV distance keeping the rate map convex in 1/SNR.

    sqrt(c_tilde * exp(a_tilde / (1 + a exp(a b))) * g_inverse(q)); the
    exponent uses the worst case of zero elevation.
    """
    if cfg.epsilon >= 0.5:
        raise ValueError("d_max needs epsilon < 0.5")
    zero_elevation = 1.0 + consts.a_env * math.exp(consts.a_env * consts.b_env)
    floor_term = math.exp(consts.a_tilde / zero_elevation)
    return math.sqrt(consts.c_tilde * floor_term * g_inverse(cfg.q))


@dataclass(frozen=True)
class BoundContext:
    """Penalty coefficient, its g-inverse and the resulting distance limit."""

    q: float
    g_inv_q: float
    d_max_m: float

    @classmethod
    def from_config(cls, consts: DerivedConstants, cfg: FblConfig) -> "BoundContext":
        if cfg.epsilon >= 0.5:
            raise ValueError("BoundContext needs epsilon < 0.5")
        q = cfg.q
        return cls(q=q, g_inv_q=g_inverse(q), d_max_m=d_max(consts, cfg))


def expected_inverse_snr(space: Airspace, consts: DerivedConstants) -> float:
    """Closed-form mean of 1/SNR over the airspace position distribution.

    Separates into the distance moment u = (r_max^5 - r_min^5)/5 and an
    elevation integral v expressed through Ei via the antiderivative
    t(x) = (e^-a_tilde Ei(a_tilde - 1/x) - Ei(-1/x)) / a_tilde.
    """
    at = consts.a_tilde
    a, b = consts.a_env, consts.b_env
    r, big_d = space.r_min_m, space.r_max_m
    th_min = space.theta_min_deg

    def t_of_sigmoid(s):
        # antiderivative at y = (1 + s)/a_tilde; the first Ei argument
        # a_tilde - 1/y collapses to a_tilde s / (1 + s), which stays
        # cancellation-free even when s underflows toward zero
        return (math.exp(-at) * exp_integral_ei(at * s / (1.0 + s))
                - exp_integral_ei(-at / (1.0 + s))) / at

    u = (big_d**5 - r**5) / 5.0
    s1 = a * math.exp(-b * (th_min - a))
    s2 = a * math.exp(-b * (90.0 - a))
    v = (at / b) * (t_of_sigmoid(s1) - t_of_sigmoid(s2))
    norm = 3.0 / consts.c_tilde / ((90.0 - th_min) * (big_d**3 - r**3))
    return norm * u * v


def aadr_lower_bound(space: Airspace, consts: DerivedConstants, cfg: FblConfig) -> float:
    """Jensen lower bound of the average achievable data rate, bits/channel use.

    Valid only while the airspace fits inside d_max; a larger airspace is a
    hard error because the convexity argument breaks. At epsilon = 0.5 the
    penalty vanishes and the bound reduces to log2(1 + 1/E(1/gamma)).
    """
    mean_inv = expected_inverse_snr(space, consts)
    q = cfg.q
    if q < 0.0:
        raise ValueError("aadr_lower_bound needs epsilon <= 0.5")
    if q == 0.0:
        return math.log1p(1.0 / mean_inv) / _LN2
    limit = d_max(consts, cfg)
    if space.r_max_m > limit:
        raise ValueError(
            f"airspace radius {space.r_max_m} m exceeds d_max {limit:.1f} m; "
            "the lower bound is invalid for this configuration"
        )
    return f_penalized(mean_inv, q) / _LN2
