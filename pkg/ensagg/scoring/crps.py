"""
Continuous ranked probability score estimators
"""

# stdlib
import math
from typing import Union

# library
import numpy as np
from scipy.special import ndtr

# module
from ensagg.distributions import (
    BernsteinQuantileDist,
    ForecastDist,
    HistogramDist,
    MixtureDist,
    NormalDist,
    PiecewiseLinearQuantile,
    SampleDist,
)
from ensagg.exceptions import DomainError
from ensagg.static.core import LP_SAMPLES, QUANTILE_LEVELS

_INV_SQRT_PI = 1 / math.sqrt(math.pi)
_INV_SQRT_2PI = 1 / math.sqrt(2 * math.pi)

ArrayLike = Union[float, np.ndarray]


def crps_normal(mu: ArrayLike, sigma: ArrayLike, y: ArrayLike) -> ArrayLike:
    """Closed-form CRPS of N(mu, sigma^2), vectorized over all arguments"""
    mu, sigma, y = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (mu, sigma, y)))
    if np.any(~(sigma > 0)):
        raise DomainError("Normal CRPS needs sigma > 0")
    z = (y - mu) / sigma
    pdf = np.exp(-0.5 * z * z) * _INV_SQRT_2PI
    ret = sigma * (z * (2 * ndtr(z) - 1) + 2 * pdf - _INV_SQRT_PI)
    return float(ret) if ret.ndim == 0 else ret


def crps_sample(sample, y: float) -> float:
    """Sample CRPS estimator (1/m) sum|x_i - y| - (1/2m^2) sum sum |x_i - x_j|

    The double sum uses the sorted-sample identity, O(m log m)
    """
    x = np.sort(np.asarray(sample, dtype=float).ravel())
    m = x.size
    if m == 0:
        raise DomainError("Sample must not be empty")
    spread = np.dot(2 * np.arange(1, m + 1) - m - 1, x) / (m * m)
    return float(np.mean(np.abs(x - y)) - spread)


def crps_sample_many(samples: np.ndarray, y) -> np.ndarray:
    """Sample CRPS estimator for each row of a (cases, m) matrix of draws"""
    x = np.sort(np.asarray(samples, dtype=float), axis=1)
    m = x.shape[1]
    if m == 0:
        raise DomainError("Sample must not be empty")
    y = np.asarray(y, dtype=float).reshape(-1, 1)
    spread = x @ (2 * np.arange(1, m + 1) - m - 1) / (m * m)
    return np.mean(np.abs(x - y), axis=1) - spread


def quantile_grid(k: int = QUANTILE_LEVELS) -> np.ndarray:
    """Interior equidistant levels k / (K + 1)"""
    if k < 2:
        raise DomainError(f"Quantile grid needs K >= 2, got {k}")
    return np.arange(1, k + 1) / (k + 1)


def pinball(u: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """Quantile loss rho_tau(u) = u * (tau - 1{u < 0})"""
    return u * (tau - (u < 0))


def crps_quantile_grid(quantiles: np.ndarray, y, levels: np.ndarray) -> np.ndarray:
    """Quantile-based CRPS (2/K) sum_k rho(y - q_k) for each row of quantiles"""
    quantiles = np.atleast_2d(quantiles)
    y = np.asarray(y, dtype=float).reshape(-1, 1)
    return 2 * np.mean(pinball(y - quantiles, levels[None, :]), axis=1)


def crps_quantile_approx(dist: ForecastDist, y: float, k: int = QUANTILE_LEVELS) -> float:
    """CRPS approximated from K equidistant quantiles of the forecast"""
    levels = quantile_grid(k)
    q = dist.quantile(levels)
    return float(crps_quantile_grid(q, y, levels)[0])


def crps_histogram(hist: HistogramDist, y: float) -> float:
    """Exact CRPS of a piecewise uniform forecast"""
    return hist.crps(y)


def _shared_edges(mix: MixtureDist) -> bool:
    first = mix.components[0]
    return all(
        isinstance(c, HistogramDist) and np.array_equal(c.edges, first.edges)
        for c in mix.components
    )


def crps(dist: ForecastDist, y: float, rng_seed: int = 0) -> float:
    """CRPS following the evaluation protocol of each family

    Exact where a closed form exists, quantile-based for quantile functions,
    and sample-based for mixtures without a closed form
    """
    if isinstance(dist, NormalDist):
        return crps_normal(dist.mu, dist.sigma, y)
    if isinstance(dist, (HistogramDist, PiecewiseLinearQuantile)):
        return dist.crps(y)
    if isinstance(dist, SampleDist):
        return crps_sample(dist.values, y)
    if isinstance(dist, MixtureDist):
        if _shared_edges(dist):
            edges = dist.components[0].edges
            probs = sum(w * c.probs for w, c in zip(dist.weights, dist.components))
            return HistogramDist(edges, probs / probs.sum()).crps(y)
        return crps_sample(dist.sample(LP_SAMPLES, rng_seed), y)
    return crps_quantile_approx(dist, y)


def crps_many(dists, y, rng_seeds=None) -> np.ndarray:
    """CRPS of case i at y[i], vectorized for normal, sample, and Bernstein forecasts"""
    y = np.asarray(y, dtype=float)
    out = np.empty(len(dists))
    normal = [i for i, d in enumerate(dists) if isinstance(d, NormalDist)]
    if normal:
        mu = np.array([dists[i].mu for i in normal])
        sigma = np.array([dists[i].sigma for i in normal])
        out[normal] = crps_normal(mu, sigma, y[normal])
    samples = [i for i, d in enumerate(dists) if isinstance(d, SampleDist)]
    if samples and len({dists[i].size for i in samples}) == 1:
        out[samples] = crps_sample_many(np.vstack([dists[i].values for i in samples]), y[samples])
    else:
        samples = []
    bernstein = [i for i, d in enumerate(dists) if isinstance(d, BernsteinQuantileDist)]
    if bernstein:
        levels = quantile_grid()
        q = BernsteinQuantileDist.many_quantile([dists[i] for i in bernstein], levels)
        out[bernstein] = crps_quantile_grid(q, y[bernstein], levels)
    done = set(normal) | set(bernstein) | set(samples)
    for i, dist in enumerate(dists):
        if i not in done:
            seed = 0 if rng_seeds is None else int(rng_seeds[i])
            out[i] = crps(dist, y[i], seed)
    return out
