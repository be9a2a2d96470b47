"""
Linear pool aggregation
"""

# library
import numpy as np

# module
from ensagg.aggregation.ensemble import EnsembleForecast
from ensagg.distributions import ForecastDist, HistogramDist, MixtureDist


def lp_aggregate(ens: EnsembleForecast) -> ForecastDist:
    """Equally weighted mixture of the member CDFs

    Histogram members on shared edges pool exactly by averaging bin probabilities
    """
    if isinstance(ens.members[0], HistogramDist):
        probs = np.mean([m.probs for m in ens.members], axis=0)
        return HistogramDist(ens.members[0].edges, probs)
    return MixtureDist(ens.members, np.full(ens.n, 1 / ens.n))
