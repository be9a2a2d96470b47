"""
Testing utilities
"""

# pylint: disable=invalid-name

# stdlib
import json
import unittest
from pathlib import Path
from typing import Iterable, List, Sequence

# library
import numpy as np
from scipy import integrate

# module
from ensagg.aggregation import EnsembleForecast
from ensagg.distributions import ForecastDist, NormalDist, from_dict
from ensagg.scoring import crps_normal


def crps_oracle(dist: ForecastDist, y: float, low: float, high: float, points=()) -> float:
    """CRPS by numerical integration of (F(z) - 1{y <= z})^2 over [low, high]

    The forecast must put (almost) no mass outside the bounds. Extra kinks of
    the CDF can be passed as points
    """
    y = float(y)
    breaks = sorted({low, high, min(max(y, low), high), *points})
    total = 0.0
    for start, end in zip(breaks[:-1], breaks[1:]):
        if end <= start:
            continue
        if end <= y:
            func = lambda z: float(dist.cdf(z)) ** 2
        else:
            func = lambda z: (1 - float(dist.cdf(z))) ** 2
        value, _ = integrate.quad(func, start, end, epsabs=1e-13, epsrel=1e-12, limit=200)
        total += value
    total += max(low - y, 0.0) + max(y - high, 0.0)
    return total


def normal_mixture_crps(mu: Sequence[float], sigma: Sequence[float], weights, y: float) -> float:
    """Exact CRPS of a normal mixture, E|X - y| - E|X - X'| / 2"""
    def abs_moment(m, s):
        # E|Z| for Z ~ N(m, s^2)
        return crps_normal(m, s, 0.0) + s / np.sqrt(np.pi)

    mu, sigma, weights = (np.asarray(v, dtype=float) for v in (mu, sigma, weights))
    first = sum(w * abs_moment(m - y, s) for m, s, w in zip(mu, sigma, weights))
    second = sum(
        wi * wj * abs_moment(mi - mj, np.hypot(si, sj))
        for mi, si, wi in zip(mu, sigma, weights)
        for mj, sj, wj in zip(mu, sigma, weights)
    )
    return float(first - second / 2)


def normal_ensembles(
    n_cases: int, n_members: int, seed: int = 0, spread: float = 0.5
) -> List[EnsembleForecast]:
    """Random normal ensembles with member means around a case location"""
    rng = np.random.default_rng(seed)
    ret = []
    for _ in range(n_cases):
        center = rng.normal(0, 2)
        mu = center + rng.normal(0, spread, n_members)
        sigma = rng.uniform(0.5, 1.5, n_members)
        ret.append(EnsembleForecast([NormalDist(m, s) for m, s in zip(mu, sigma)]))
    return ret


def get_data(filepath: str, name: str) -> dict:
    """Loads a JSON fixture from the data folder next to a test file"""
    path = Path(filepath).parent.joinpath("data", name)
    return json.loads(path.read_text())


def load_forecasts(filepath: str, name: str) -> List[ForecastDist]:
    """Loads a list of family-tagged distributions from a fixture"""
    return [from_dict(item) for item in get_data(filepath, name)]


class BaseTest(unittest.TestCase):
    """TestCase with added assert methods"""

    def assert_nondecreasing(self, values: Iterable[float], tol: float = 0.0):
        """Tests that a sequence never decreases beyond a tolerance"""
        values = np.asarray(list(values), dtype=float)
        steps = np.diff(values)
        self.assertTrue(np.all(steps >= -tol), f"Decreasing step {steps.min()}")

    def assert_close(self, first, second, tol: float = 1e-10):
        """Tests element-wise absolute closeness of scalars or arrays"""
        np.testing.assert_allclose(first, second, rtol=0, atol=tol)

    def assert_cdf_contract(self, dist: ForecastDist, grid: Sequence[float]):
        """Tests CDF range and monotonicity over a grid"""
        values = dist.cdf(np.asarray(grid, dtype=float))
        self.assertTrue(np.all((values >= 0) & (values <= 1)))
        self.assert_nondecreasing(values)

    def assert_round_trip(self, dist: ForecastDist, tol: float = 1e-8):
        """Tests |F(Q(p)) - p| at the levels 0.01 through 0.99"""
        levels = np.arange(1, 100) / 100
        self.assert_close(dist.cdf(dist.quantile(levels)), levels, tol)

    def assert_ks_close(
        self, dist: ForecastDist, draws: np.ndarray, tol: float = 0.01, grid=None
    ):
        """Tests the Kolmogorov distance between a sample and the forecast CDF

        With a grid, the CDF is only evaluated there and each draw is bracketed
        by its neighboring grid values, which bounds the distance from above
        """
        x = np.sort(np.asarray(draws, dtype=float))
        m = x.size
        if grid is None:
            low = high = np.asarray(dist.cdf(x), dtype=float)
        else:
            grid = np.sort(np.asarray(grid, dtype=float))
            values = np.asarray(dist.cdf(grid), dtype=float)
            index = np.searchsorted(grid, x, side="right")
            low = np.where(index > 0, values[np.maximum(index - 1, 0)], 0.0)
            high = np.where(index < grid.size, values[np.minimum(index, grid.size - 1)], 1.0)
        upper = np.max(np.arange(1, m + 1) / m - low)
        lower = np.max(high - np.arange(m) / m)
        self.assertLess(max(upper, lower), tol)
