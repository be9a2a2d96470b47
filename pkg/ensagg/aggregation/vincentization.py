"""
Quantile averaging (Vincentization) with intercept and common weight
"""

# library
import numpy as np

# module
from ensagg.aggregation.ensemble import EnsembleForecast
from ensagg.distributions import (
    BernsteinQuantileDist,
    ForecastDist,
    HistogramDist,
    NormalDist,
    PiecewiseLinearQuantile,
    VincentizedDist,
)
from ensagg.exceptions import DegenerateScale, DomainError, ShapeError
from ensagg.static.core import KNOT_TOLERANCE
from ensagg.structs import VICoefficients


def delta_n(w0: float, n: int) -> float:
    """Relative weight difference n * w0 - 1"""
    if n < 1:
        raise DomainError(f"Ensemble size must be at least 1, got {n}")
    return n * w0 - 1


def vi_quantile(ens: EnsembleForecast, coeffs: VICoefficients, p):
    """Q(p) = a + w0 * sum_i Q_i(p)"""
    total = sum(np.asarray(m.quantile(p), dtype=float) for m in ens.members)
    ret = coeffs.a + coeffs.w0 * total
    return float(ret) if np.ndim(ret) == 0 else ret


def _require(ens: EnsembleForecast, cls: type):
    if not isinstance(ens.members[0], cls):
        raise ShapeError(f"Expected {cls.family} members, got {ens.family}")


def vi_normal(ens: EnsembleForecast, coeffs: VICoefficients) -> NormalDist:
    """Shape-preserving aggregate of normal members"""
    _require(ens, NormalDist)
    if coeffs.w0 == 0:
        raise DegenerateScale("w0 = 0 collapses the aggregated scale")
    mu = sum(m.mu for m in ens.members)
    sigma = sum(m.sigma for m in ens.members)
    return NormalDist(coeffs.a + coeffs.w0 * mu, coeffs.w0 * sigma)


def vi_bqn(ens: EnsembleForecast, coeffs: VICoefficients) -> BernsteinQuantileDist:
    """Averages Bernstein coefficients, shifted by the intercept"""
    _require(ens, BernsteinQuantileDist)
    degrees = {m.degree for m in ens.members}
    if len(degrees) > 1:
        raise ShapeError(f"Bernstein members have mixed degrees {sorted(degrees)}")
    alpha = np.sum([m.coeffs for m in ens.members], axis=0)
    return BernsteinQuantileDist(coeffs.a + coeffs.w0 * alpha)


def hen_knots(ens: EnsembleForecast) -> np.ndarray:
    """Union of the members' accumulated probabilities with 0 and 1"""
    levels = np.sort(
        np.concatenate([[0.0, 1.0]] + [m.accumulated[1:-1] for m in ens.members])
    )
    interior = levels[(levels > KNOT_TOLERANCE) & (levels < 1 - KNOT_TOLERANCE)]
    if interior.size:
        keep = np.concatenate(([True], np.diff(interior) > KNOT_TOLERANCE))
        interior = interior[keep]
    return np.concatenate(([0.0], interior, [1.0]))


def vi_hen(ens: EnsembleForecast, coeffs: VICoefficients) -> PiecewiseLinearQuantile:
    """Piecewise linear aggregate with one knot per member accumulated probability

    Where a member skips empty bins its quantile function jumps, and the knot
    is repeated with the right-limit value
    """
    _require(ens, HistogramDist)
    levels = hen_knots(ens)
    lower = vi_quantile(ens, coeffs, levels)
    upper = coeffs.a + coeffs.w0 * sum(m.quantile_right(levels) for m in ens.members)
    jump = upper > lower + KNOT_TOLERANCE * np.maximum(1.0, np.abs(lower))
    jump[-1] = False
    where = np.flatnonzero(jump) + 1
    return PiecewiseLinearQuantile(
        np.insert(levels, where, levels[jump]), np.insert(lower, where, upper[jump])
    )


def vi_aggregate(ens: EnsembleForecast, coeffs: VICoefficients) -> ForecastDist:
    """Vincentized distribution, using a family fast path where one exists"""
    first = ens.members[0]
    if isinstance(first, NormalDist):
        return vi_normal(ens, coeffs)
    if isinstance(first, BernsteinQuantileDist):
        return vi_bqn(ens, coeffs)
    if isinstance(first, HistogramDist):
        return vi_hen(ens, coeffs)
    return VincentizedDist(ens.members, coeffs.a, coeffs.w0)
