"""
Single entry point for LP and VI aggregation
"""

# stdlib
from typing import Optional, Union

# module
from ensagg.aggregation.ensemble import AggMethod, EnsembleForecast
from ensagg.aggregation.linear_pool import lp_aggregate
from ensagg.aggregation.vincentization import vi_aggregate
from ensagg.distributions import ForecastDist
from ensagg.structs import VICoefficients


def aggregate(
    ens: EnsembleForecast,
    method: Union[AggMethod, str],
    coeffs: Optional[VICoefficients] = None,
) -> ForecastDist:
    """Aggregates an ensemble with the given method

    coeffs override the method's own coefficients; fixed ones stay fixed
    """
    if isinstance(method, str):
        method = AggMethod(method, coeffs)
    elif coeffs is not None:
        method = AggMethod(method.variant, coeffs)
    if not method.is_vi:
        return lp_aggregate(ens)
    return vi_aggregate(ens, method.coefficients(ens.n))
