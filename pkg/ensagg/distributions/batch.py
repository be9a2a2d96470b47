"""
Vectorized evaluation across many forecast cases
"""

# stdlib
from collections import defaultdict
from typing import Dict, List, Sequence

# library
import numpy as np

# module
from ensagg.distributions.base import ForecastDist


def _group(dists: Sequence[ForecastDist]) -> Dict[type, List[int]]:
    groups = defaultdict(list)
    for i, dist in enumerate(dists):
        groups[type(dist)].append(i)
    return groups


def cdf_many(dists: Sequence[ForecastDist], z) -> np.ndarray:
    """CDF of case i at z[i], batched per family"""
    z = np.asarray(z, dtype=float)
    out = np.empty(len(dists))
    for cls, index in _group(dists).items():
        out[index] = cls.many_cdf([dists[i] for i in index], z[index])
    return out


def quantile_many(dists: Sequence[ForecastDist], p) -> np.ndarray:
    """Quantile matrix with one row per case and one column per level"""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    out = np.empty((len(dists), p.size))
    for cls, index in _group(dists).items():
        out[index] = cls.many_quantile([dists[i] for i in index], p)
    return out
