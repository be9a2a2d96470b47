"""
Forecast distribution families sharing CDF, quantile, and sampling contracts
"""

from .base import ForecastDist, cdf, pdf, quantile, sample
from .batch import cdf_many, quantile_many
from .bernstein import BernsteinQuantileDist, bernstein_basis
from .composite import MixtureDist, VincentizedDist
from .empirical import SampleDist
from .parametric import NormalDist, SkewNormalDist
from .piecewise import HistogramDist, PiecewiseLinearQuantile, piecewise_linear_crps
from .serial import dumps, from_dict, loads, to_dict
