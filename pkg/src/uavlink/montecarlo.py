"""Seeded Monte Carlo estimation of link-rate averages over UAV positions.

Sampling uses the counter-based Philox generator so that shards are
deterministic and non-overlapping: shard i draws from Philox(key=seed)
jumped i times. The (seed, shards) pair is part of the reproducibility
contract; identical inputs give bit-identical estimates.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import DerivedConstants, snr
from .fbl_rate import FblConfig, achievable_rate, shannon_rate
from .geometry import Airspace, sample_positions


@dataclass(frozen=True)
class McEstimate:
    """Sample mean with its standard error."""

    mean: float
    std_error: float
    n_samples: int
    seed: int


def _shard_counts(n: int, shards: int):
    base, rem = divmod(n, shards)
    return [base + 1 if i < rem else base for i in range(shards)]


def _estimate(space: Airspace, integrand, n: int, seed: int, shards: int) -> McEstimate:
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if shards < 1 or shards > n:
        raise ValueError(f"shards must lie in [1, n], got {shards}")
    chunks = []
    for i, count in enumerate(_shard_counts(n, shards)):
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(i))
        d, theta = sample_positions(space, rng, count)
        chunks.append(np.asarray(integrand(theta, d), dtype=float))
    values = np.concatenate(chunks)
    mean = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(n))
    return McEstimate(mean=mean, std_error=std_error, n_samples=n, seed=seed)


def estimate_aadr(
    space: Airspace,
    consts: DerivedConstants,
    cfg: FblConfig,
    n: int = 10_000,
    seed: int = 1,
    shards: int = 1,
) -> McEstimate:
    """Mean finite-blocklength rate over n random UAV positions."""
    return _estimate(
        space, lambda th, d: achievable_rate(snr(consts, th, d), cfg), n, seed, shards
    )


def estimate_shannon(
    space: Airspace,
    consts: DerivedConstants,
    n: int = 10_000,
    seed: int = 1,
    shards: int = 1,
) -> McEstimate:
    """Mean Shannon rate log2(1 + SNR) over n random UAV positions."""
    return _estimate(space, lambda th, d: shannon_rate(snr(consts, th, d)), n, seed, shards)


def estimate_inverse_snr(
    space: Airspace,
    consts: DerivedConstants,
    n: int = 10_000,
    seed: int = 1,
    shards: int = 1,
) -> McEstimate:
    """Mean of 1/SNR over n random UAV positions (cross-check for the bound)."""
    return _estimate(space, lambda th, d: 1.0 / snr(consts, th, d), n, seed, shards)
