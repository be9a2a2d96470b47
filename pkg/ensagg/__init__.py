"""
Aggregation of deep ensemble forecast distributions
"""

__version__ = "0.1.1"

from .aggregation import AggMethod, EnsembleForecast, aggregate, estimate_vi_coefficients
from .distributions import (
    BernsteinQuantileDist,
    ForecastDist,
    HistogramDist,
    MixtureDist,
    NormalDist,
    PiecewiseLinearQuantile,
    SampleDist,
    SkewNormalDist,
    VincentizedDist,
)
from .scoring import crps, evaluate
from .structs import VICoefficients
