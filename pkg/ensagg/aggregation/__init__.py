"""
Linear pool and Vincentization of forecast ensembles
"""

from .aggregate import aggregate
from .ensemble import AggMethod, EnsembleForecast
from .estimation import (
    estimate_vi_coefficients,
    fit_from_quantile_sums,
    fit_vi_coefficients,
    grid_search_vi_coefficients,
    member_quantile_stack,
    vi_objective,
)
from .linear_pool import lp_aggregate
from .vincentization import (
    delta_n,
    hen_knots,
    vi_aggregate,
    vi_bqn,
    vi_hen,
    vi_normal,
    vi_quantile,
)
