"""
CRPS-minimizing estimation of the Vincentization coefficients on validation data

The objective uses the quantile representation of the CRPS on K equidistant
levels. The aggregated quantiles a + w0 * S are affine in (a, w0), so the mean
pinball loss is convex in the coefficients.
"""

# stdlib
import logging
from typing import Optional, Sequence, Tuple, Union

# library
import numpy as np
from scipy import optimize

# module
from ensagg.aggregation.ensemble import AggMethod, EnsembleForecast
from ensagg.distributions import quantile_many
from ensagg.exceptions import DomainError, ShapeError
from ensagg.scoring.crps import crps_quantile_grid, quantile_grid
from ensagg.static.core import QUANTILE_LEVELS
from ensagg.structs import CoefficientFit, VICoefficients

LOG = logging.getLogger(__name__)

NM_OPTIONS = {"xatol": 1e-6, "fatol": 1e-6, "maxiter": 500}


def _softplus(eta: float) -> float:
    return float(np.logaddexp(0.0, eta))


def _softplus_inv(w0: float) -> float:
    return float(np.log(np.expm1(w0)))


def _as_method(method: Union[AggMethod, str]) -> AggMethod:
    return method if isinstance(method, AggMethod) else AggMethod(method)


def member_quantile_stack(ensembles: Sequence[EnsembleForecast], levels) -> np.ndarray:
    """Array [member, case, level] of member quantiles

    All ensembles need the same number of members
    """
    sizes = {ens.n for ens in ensembles}
    if len(sizes) != 1:
        raise ShapeError(f"Ensembles must have equal size, got {sorted(sizes)}")
    n = sizes.pop()
    return np.stack(
        [quantile_many([ens.members[j] for ens in ensembles], levels) for j in range(n)]
    )


def vi_objective(
    coeffs: VICoefficients, quantile_sum: np.ndarray, obs: np.ndarray, levels: np.ndarray
) -> float:
    """Mean quantile-based CRPS of a + w0 * S over validation cases"""
    return float(np.mean(crps_quantile_grid(coeffs.a + coeffs.w0 * quantile_sum, obs, levels)))


def _check_inputs(quantile_sum: np.ndarray, obs: np.ndarray, levels: np.ndarray):
    if obs.size == 0:
        raise DomainError("Coefficient estimation needs at least one validation case")
    if quantile_sum.shape != (obs.size, levels.size):
        raise ShapeError(
            f"Quantile sums {quantile_sum.shape} do not match {obs.size} cases and {levels.size} levels"
        )


def fit_from_quantile_sums(
    method: Union[AggMethod, str],
    quantile_sum: np.ndarray,
    obs,
    n: int,
    levels: Optional[np.ndarray] = None,
) -> CoefficientFit:
    """Estimates the free coefficients from summed member quantiles S[case, level]"""
    method = _as_method(method)
    if not method.is_vi:
        raise DomainError("The linear pool has no coefficients to estimate")
    levels = quantile_grid() if levels is None else np.asarray(levels, dtype=float)
    quantile_sum = np.asarray(quantile_sum, dtype=float)
    obs = np.asarray(obs, dtype=float).ravel()
    _check_inputs(quantile_sum, obs, levels)
    free = method.free_params
    if not free:
        coeffs = VICoefficients(0.0, 1 / n)
        return CoefficientFit(method.variant, coeffs, n, vi_objective(coeffs, quantile_sum, obs, levels))

    def unpack(theta: np.ndarray) -> Tuple[float, float]:
        values = dict(zip(free, theta))
        a = float(values.get("a", 0.0))
        w0 = _softplus(values["w0"]) if "w0" in values else 1 / n
        return a, w0

    def objective(theta: np.ndarray) -> float:
        a, w0 = unpack(theta)
        # A zero weight is a constant point forecast and is rejected
        if not (np.isfinite(a) and w0 > 0):
            return np.inf
        q = a + w0 * quantile_sum
        return float(np.mean(crps_quantile_grid(q, obs, levels)))

    start = {"a": 0.0, "w0": _softplus_inv(1 / n)}
    steps = {"a": 0.5 * max(float(np.std(obs)), 1e-3), "w0": 0.5}
    x0 = np.array([start[name] for name in free])
    simplex = np.vstack([x0] + [x0 + steps[name] * np.eye(len(free))[i] for i, name in enumerate(free)])
    result = optimize.minimize(
        objective, x0, method="Nelder-Mead", options={**NM_OPTIONS, "initial_simplex": simplex}
    )
    if not result.success:
        LOG.warning("%s estimation for n=%d stopped early: %s", method.variant, n, result.message)
    a, w0 = unpack(result.x)
    LOG.debug("%s n=%d estimated a=%.4f w0=%.4f crps=%.5f", method.variant, n, a, w0, result.fun)
    return CoefficientFit(method.variant, VICoefficients(a, w0), n, float(result.fun))


def fit_vi_coefficients(
    method: Union[AggMethod, str],
    valid_ens: Sequence[EnsembleForecast],
    valid_obs,
    k: int = QUANTILE_LEVELS,
) -> CoefficientFit:
    """Estimates VI coefficients, keeping the ensemble members fixed"""
    valid_obs = np.asarray(valid_obs, dtype=float).ravel()
    if len(valid_ens) == 0 or valid_obs.size == 0:
        raise DomainError("Coefficient estimation needs at least one validation case")
    if len(valid_ens) != valid_obs.size:
        raise ShapeError(
            f"{len(valid_ens)} validation ensembles but {valid_obs.size} observations"
        )
    levels = quantile_grid(k)
    stack = member_quantile_stack(valid_ens, levels)
    return fit_from_quantile_sums(method, stack.sum(axis=0), valid_obs, stack.shape[0], levels)


def estimate_vi_coefficients(
    method: Union[AggMethod, str], valid_ens: Sequence[EnsembleForecast], valid_obs
) -> VICoefficients:
    """argmin of the validation mean CRPS over the variant's free coefficients"""
    return fit_vi_coefficients(method, valid_ens, valid_obs).coeffs


def grid_search_vi_coefficients(
    method: Union[AggMethod, str],
    quantile_sum: np.ndarray,
    obs,
    n: int,
    a_grid: Optional[np.ndarray] = None,
    w0_grid: Optional[np.ndarray] = None,
    levels: Optional[np.ndarray] = None,
) -> CoefficientFit:
    """Exhaustive search over a grid of coefficients, used to check the optimizer

    Fixed coefficients of the variant ignore their grid
    """
    method = _as_method(method)
    levels = quantile_grid() if levels is None else np.asarray(levels, dtype=float)
    quantile_sum = np.asarray(quantile_sum, dtype=float)
    obs = np.asarray(obs, dtype=float).ravel()
    _check_inputs(quantile_sum, obs, levels)
    free = method.free_params
    a_values = np.asarray(a_grid if "a" in free and a_grid is not None else [0.0], dtype=float)
    w_values = np.asarray(w0_grid if "w0" in free and w0_grid is not None else [1 / n], dtype=float)
    best = (np.inf, 0.0, 1 / n)
    for w0 in w_values[w_values > 0]:
        for a in a_values:
            score = vi_objective(VICoefficients(a, w0), quantile_sum, obs, levels)
            if score < best[0]:
                best = (score, a, w0)
    return CoefficientFit(method.variant, VICoefficients(best[1], best[2]), n, best[0])
