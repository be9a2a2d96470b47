"""
Calibration and accuracy diagnostics: PIT, prediction intervals, median error
"""

# stdlib
from typing import Sequence, Tuple

# library
import numpy as np

# module
from ensagg.distributions import ForecastDist, cdf_many
from ensagg.exceptions import DegenerateReference, DomainError
from ensagg.static.core import PI_LEVEL, PIT_BINS

# CDF rise at the observation above which the unified PIT randomizes
_JUMP = 1e-6


def pit(dist: ForecastDist, y: float, rng_seed: int = 0) -> float:
    """Unified PIT: F(y), or a uniform draw on [F(y-), F(y)] at an atom

    Only families that can carry atoms are checked for a jump, so sharp
    continuous forecasts always give F(y)
    """
    value = float(dist.cdf(y))
    if not dist.has_atoms:
        return value
    low = float(dist.cdf_left(y))
    if value - low <= _JUMP:
        return value
    return float(np.random.default_rng(rng_seed).uniform(low, value))


def pit_many(dists: Sequence[ForecastDist], y, rng_seed: int = 0) -> np.ndarray:
    """Unified PIT of case i at y[i], batched per family"""
    y = np.asarray(y, dtype=float)
    value = cdf_many(dists, y)
    low = value.copy()
    for i, dist in enumerate(dists):
        if dist.has_atoms:
            low[i] = dist.cdf_left(y[i])
    draws = np.random.default_rng(rng_seed).uniform(size=y.size)
    jump = (value - low) > _JUMP
    return np.clip(np.where(jump, low + draws * (value - low), value), 0.0, 1.0)


def prediction_interval(dist: ForecastDist, level: float = PI_LEVEL) -> Tuple[float, float]:
    """Central prediction interval at the nominal level"""
    if not 0 < level < 1:
        raise DomainError(f"PI level must lie in (0, 1), got {level}")
    alpha = (1 - level) / 2
    lower, upper = dist.quantile(np.array([alpha, 1 - alpha]))
    return float(lower), float(upper)


def median_error(dist: ForecastDist, y: float) -> float:
    """Forecast error of the median, positive when overforecasting"""
    return float(dist.quantile(0.5)) - float(y)


def coverage(lower, upper, y) -> float:
    """Fraction of observations inside [lower, upper]"""
    y = np.asarray(y, dtype=float)
    return float(np.mean((np.asarray(lower) <= y) & (y <= np.asarray(upper))))


def pit_histogram(pit_values, bins: int = PIT_BINS) -> np.ndarray:
    """Relative frequencies of PIT values in equal bins on [0, 1]"""
    counts, _ = np.histogram(np.asarray(pit_values, dtype=float), bins=bins, range=(0, 1))
    return counts / max(counts.sum(), 1)


def central_excess(pit_values, bins: int = PIT_BINS) -> float:
    """Excess PIT mass in the central third over its uniform share

    Positive values mark a hump-shaped histogram (overdispersion)
    """
    freq = pit_histogram(pit_values, bins)
    third = bins // 3
    central = freq[third : bins - third]
    return float(central.sum() - central.size / bins)


def skill_score(mean_f: float, mean_ref: float, mean_opt: float = 0.0) -> float:
    """Skill relative to a reference and an optimal forecast, positively oriented"""
    if mean_ref == mean_opt:
        raise DegenerateReference(
            f"Reference score {mean_ref} equals the optimal score"
        )
    return (mean_ref - mean_f) / (mean_ref - mean_opt)
