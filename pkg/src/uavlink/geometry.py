"""UAV airspace geometry and the distribution of the UAV position.

The admissible region is the volume between two inverted cones centered at
the ground control station: the station-to-UAV distance d lies in
[r_min, r_max] meters and the elevation angle theta in [theta_min, 90]
degrees. The distance follows a cubic CDF, the elevation is uniform, and
the two coordinates are drawn independently (product-form joint density).
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Airspace:
    """Truncated inverted-cone flight region around the ground station."""

    r_min_m: float
    r_max_m: float
    theta_min_deg: float

    def __post_init__(self):
        if not 0.0 < self.r_min_m < self.r_max_m:
            raise ValueError(
                f"need 0 < r_min < r_max, got r_min={self.r_min_m}, r_max={self.r_max_m}"
            )
        if not 0.0 <= self.theta_min_deg < 90.0:
            raise ValueError(f"theta_min must lie in [0, 90), got {self.theta_min_deg}")


@dataclass(frozen=True)
class UavPosition:
    """A single UAV location as seen from the ground station."""

    d_m: float
    theta_deg: float


def cdf_distance(space: Airspace, x):
    """CDF of the station-to-UAV distance, (x^3 - r_min^3) / (r_max^3 - r_min^3)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < space.r_min_m) or np.any(x > space.r_max_m):
        raise ValueError(f"distance outside support [{space.r_min_m}, {space.r_max_m}] m")
    out = (x**3 - space.r_min_m**3) / (space.r_max_m**3 - space.r_min_m**3)
    return float(out) if out.ndim == 0 else out


def pdf_distance(space: Airspace, x):
    """Density of the distance, 3 x^2 / (r_max^3 - r_min^3), per meter."""
    x = np.asarray(x, dtype=float)
    if np.any(x < space.r_min_m) or np.any(x > space.r_max_m):
        raise ValueError(f"distance outside support [{space.r_min_m}, {space.r_max_m}] m")
    out = 3.0 * x**2 / (space.r_max_m**3 - space.r_min_m**3)
    return float(out) if out.ndim == 0 else out


def pdf_elevation(space: Airspace, theta):
    """Density of the elevation angle, uniform 1/(90 - theta_min), per degree."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < space.theta_min_deg) or np.any(theta > 90.0):
        raise ValueError(f"elevation outside support [{space.theta_min_deg}, 90] deg")
    out = np.full_like(theta, 1.0 / (90.0 - space.theta_min_deg))
    return float(out) if out.ndim == 0 else out


def sample_positions(space: Airspace, rng: np.random.Generator, n: int):
    """Draw n independent positions by inverse-transform sampling.

    The distance uses the cube-root inverse of the cubic CDF, the elevation
    an affine map of a uniform draw. Consumes exactly two uniform blocks
    (distances first, then elevations) from rng.

    Returns:
        Tuple (d_m, theta_deg) of float arrays of length n.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    u = rng.random(n)
    u2 = rng.random(n)
    r3 = space.r_min_m**3
    d = np.cbrt(r3 + u * (space.r_max_m**3 - r3))
    theta = space.theta_min_deg + u2 * (90.0 - space.theta_min_deg)
    return d, theta


def sample_position(space: Airspace, rng: np.random.Generator) -> UavPosition:
    """Draw one position; see sample_positions for the sampling law."""
    d, theta = sample_positions(space, rng, 1)
    return UavPosition(d_m=float(d[0]), theta_deg=float(theta[0]))
