"""Finite-blocklength achievable rate (normal approximation).

With M channel uses and target decoding error probability epsilon the rate
in bits per channel use is

    R(gamma) = log2(1 + gamma) - (1/ln 2) sqrt(V(gamma)/M) Qinv(epsilon)

with channel dispersion V(gamma) = 1 - (1 + gamma)^-2. The Gaussian
Q-function pair used by the penalty term lives here as well.
"""

import math
from dataclasses import dataclass

import numpy as np

_LN2 = math.log(2.0)
_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class FblConfig:
    """Blocklength M (channel uses) and decoding error probability epsilon."""

    blocklength: int
    epsilon: float

    def __post_init__(self):
        if self.blocklength < 1 or int(self.blocklength) != self.blocklength:
            raise ValueError(f"blocklength must be a positive integer, got {self.blocklength}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    @property
    def q(self) -> float:
        """Penalty coefficient Qinv(epsilon) / sqrt(M)."""
        return q_inverse(self.epsilon) / math.sqrt(self.blocklength)


def q_function(x: float) -> float:
    """Upper-tail standard normal probability Q(x) = 0.5 erfc(x / sqrt 2)."""
    return 0.5 * math.erfc(float(x) / _SQRT2)


# Rational initial guess for the normal quantile (Acklam's approximation,
# |relative error| < 1.15e-9), polished below by Newton steps on Q.
_ACK_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
          1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_ACK_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
          6.680131188771972e+01, -1.328068155288572e+01)
_ACK_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
          -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_ACK_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
          3.754408661907416e+00)


def _norm_ppf_approx(p: float) -> float:
    a, b, c, d = _ACK_A, _ACK_B, _ACK_C, _ACK_D
    if p < 0.02425:
        t = math.sqrt(-2.0 * math.log(p))
        return (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) / \
               ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0)
    if p > 1.0 - 0.02425:
        t = math.sqrt(-2.0 * math.log(1.0 - p))
        return -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) / \
                ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0)
    u = p - 0.5
    t = u * u
    return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u / \
           (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0)


def q_inverse(p: float) -> float:
    """Inverse of q_function, accurate to a few ulp over p in (0, 1).

    Acklam's rational approximation refined by two Newton steps against
    q_function. The upper tail goes through the symmetric lower tail, where
    the erfc evaluation keeps full relative precision.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"q_inverse needs 0 < p < 1, got {p}")
    if p == 0.5:
        return 0.0
    if p > 0.5:
        return -q_inverse(1.0 - p)
    x = -_norm_ppf_approx(p)  # Q decreasing: Qinv(p) = -Phi^-1(p)
    for _ in range(2):
        pdf = math.exp(-0.5 * x * x) / _SQRT_2PI
        if pdf == 0.0:
            break
        x += (q_function(x) - p) / pdf
    return x


def dispersion(gamma):
    """Channel dispersion V = 1 - (1 + gamma)^-2, evaluated cancellation-free."""
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0.0):
        raise ValueError("SNR must be nonnegative")
    out = g * (g + 2.0) / (1.0 + g) ** 2
    return float(out) if out.ndim == 0 else out


def achievable_rate(gamma, cfg: FblConfig):
    """Finite-blocklength rate in bits per channel use; may be negative.

    Negative values for small SNR are returned unclamped; use
    min_snr_for_valid_rate to locate the region where the rate is
    nonnegative and increasing.
    """
    g = np.asarray(gamma, dtype=float)
    if np.any(g <= 0.0):
        raise ValueError("SNR must be positive")
    penalty = (cfg.q / _LN2) * np.sqrt(dispersion(g))
    out = np.log1p(g) / _LN2 - penalty
    return float(out) if out.ndim == 0 else out


def shannon_rate(gamma):
    """Asymptotic rate log2(1 + gamma) in bits per channel use."""
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0.0):
        raise ValueError("SNR must be nonnegative")
    out = np.log1p(g) / _LN2
    return float(out) if out.ndim == 0 else out


def min_snr_for_valid_rate(cfg: FblConfig) -> float:
    """Smallest SNR at which the finite-blocklength rate is nonnegative.

    Equals 1 / g_inverse(q); above it the rate is also increasing in SNR
    and the map stays inside the proven convexity region of the lower-bound
    machinery.
    """
    from .bound import g_inverse  # deferred: bound depends on this module

    return 1.0 / g_inverse(cfg.q)
