"""
Piecewise uniform histograms and piecewise linear quantile functions
"""

# library
import numpy as np

# module
from ensagg.distributions.base import ForecastDist, _frozen
from ensagg.exceptions import InvalidDistribution
from ensagg.static.core import ATOM_WIDTH


def piecewise_linear_crps(x: np.ndarray, f: np.ndarray, y: float) -> float:
    """Exact CRPS of a CDF that is linear between knots (x, f)

    F is 0 below x[0] and 1 above x[-1]. On every segment the integrand
    (F(z) - 1{y <= z})^2 is quadratic, so each piece integrates as
    width * (g0^2 + g0*g1 + g1^2) / 3 for the end values g0, g1
    """
    x0, x1 = x[:-1], x[1:]
    f0, f1 = f[:-1], f[1:]
    keep = x1 > x0
    x0, x1, f0, f1 = x0[keep], x1[keep], f0[keep], f1[keep]
    ys = np.clip(y, x0, x1)
    fy = f0 + (f1 - f0) * (ys - x0) / (x1 - x0)
    left = (ys - x0) * (f0 * f0 + f0 * fy + fy * fy) / 3
    g0, g1 = fy - 1, f1 - 1
    right = (x1 - ys) * (g0 * g0 + g0 * g1 + g1 * g1) / 3
    tails = max(x[0] - y, 0.0) + max(y - x[-1], 0.0)
    return float(np.sum(left) + np.sum(right) + tails)


class HistogramDist(ForecastDist):
    """Piecewise uniform distribution over bins [b_(l-1), b_l) with probabilities p_l"""

    family = "histogram"

    def __init__(self, edges, probs):
        edges = _frozen(edges, "Histogram edges")
        probs = _frozen(probs, "Histogram probabilities")
        if edges.size != probs.size + 1 or probs.size < 1:
            raise InvalidDistribution(
                f"Histogram needs len(edges) = len(probs) + 1, got {edges.size} and {probs.size}"
            )
        if np.any(np.diff(edges) <= 0):
            raise InvalidDistribution("Histogram edges must be strictly increasing")
        if np.any(probs < 0) or abs(probs.sum() - 1) > 1e-12:
            raise InvalidDistribution("Histogram probabilities must be >= 0 and sum to 1")
        cum = np.minimum(np.concatenate(([0.0], np.cumsum(probs))), 1.0)
        cum[-1] = 1.0
        cum.setflags(write=False)
        self.edges = edges
        self.probs = probs
        self.accumulated = cum
        narrow = np.diff(edges) <= ATOM_WIDTH * np.maximum(1.0, np.abs(edges[1:]))
        self._atom_bins = tuple(np.flatnonzero(narrow & (probs > 0)))

    @property
    def n_bins(self) -> int:
        return self.probs.size

    @property
    def bounded(self) -> bool:
        return True

    @property
    def has_atoms(self) -> bool:
        return bool(self._atom_bins)

    def _stepped(self, z: np.ndarray, offset: int) -> np.ndarray:
        # Unresolvably narrow bins jump by their whole mass
        out = np.interp(z, self.edges, self.accumulated)
        for index in self._atom_bins:
            inside = (z >= self.edges[index]) & (z <= self.edges[index + 1])
            out = np.where(inside, self.accumulated[index + offset], out)
        return out

    def _cdf(self, z: np.ndarray) -> np.ndarray:
        return self._stepped(z, 1)

    def _cdf_left(self, z: np.ndarray) -> np.ndarray:
        return self._stepped(z, 0)

    def _locate(self, p: np.ndarray, side: str) -> np.ndarray:
        cum = self.accumulated
        index = np.minimum(np.searchsorted(cum[1:], p, side=side), self.n_bins - 1)
        mass = self.probs[index]
        frac = np.divide(
            p - cum[index], mass, out=np.zeros_like(p, dtype=float), where=mass > 0
        )
        width = self.edges[index + 1] - self.edges[index]
        return self.edges[index] + width * np.clip(frac, 0.0, 1.0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return self._locate(p, "left")

    def quantile_right(self, p) -> np.ndarray:
        """Right limit Q(p+) of the quantile function

        Differs from Q(p) only where empty bins follow the accumulated level p
        """
        p = np.atleast_1d(np.asarray(p, dtype=float))
        return self._locate(p, "right")

    def _pdf(self, z: np.ndarray) -> np.ndarray:
        index = np.searchsorted(self.edges, z, side="right") - 1
        inside = (index >= 0) & (index < self.n_bins)
        index = np.clip(index, 0, self.n_bins - 1)
        density = self.probs[index] / np.diff(self.edges)[index]
        return np.where(inside, density, 0.0)

    def crps(self, y: float) -> float:
        """Exact CRPS by closed-form integration over each bin"""
        return piecewise_linear_crps(self.edges, self.accumulated, float(y))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "edges": self.edges.tolist(),
            "probs": self.probs.tolist(),
        }


class PiecewiseLinearQuantile(ForecastDist):
    """Quantile function interpolating (levels, values) knots linearly

    A level given twice marks a jump of the quantile function: the first value
    is Q(p), the second its right limit. The CDF is flat across the gap.
    """

    family = "pl_quantile"

    def __init__(self, levels, values):
        levels = _frozen(levels, "Quantile levels")
        values = _frozen(values, "Quantile values")
        if levels.size != values.size or levels.size < 2:
            raise InvalidDistribution("Levels and values need equal length >= 2")
        if levels[0] != 0 or levels[-1] != 1 or np.any(np.diff(levels) < 0):
            raise InvalidDistribution("Levels must be nondecreasing from 0 to 1")
        if np.any(np.diff(values) < 0):
            raise InvalidDistribution("Quantile values must be nondecreasing")
        self.levels = levels
        self.values = values

    @property
    def bounded(self) -> bool:
        return True

    @property
    def has_atoms(self) -> bool:
        return bool(np.any((np.diff(self.values) == 0) & (np.diff(self.levels) > 0)))

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        # Left-continuous: at a repeated level the lower value applies
        index = np.clip(np.searchsorted(self.levels, p, side="left"), 1, self.levels.size - 1)
        l0, l1 = self.levels[index - 1], self.levels[index]
        v0, v1 = self.values[index - 1], self.values[index]
        rise = l1 - l0
        frac = np.divide(p - l0, rise, out=np.zeros_like(p, dtype=float), where=rise > 0)
        return v0 + (v1 - v0) * np.clip(frac, 0.0, 1.0)

    def _segment_level(self, index: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Level reached at z inside the segment starting at knot index"""
        index = np.clip(index, 0, self.levels.size - 2)
        v0, v1 = self.values[index], self.values[index + 1]
        l0, l1 = self.levels[index], self.levels[index + 1]
        width = v1 - v0
        frac = np.divide(z - v0, width, out=np.zeros_like(z), where=width > 0)
        return l0 + (l1 - l0) * np.clip(frac, 0.0, 1.0)

    def _cdf(self, z: np.ndarray) -> np.ndarray:
        # Supremum of levels mapping to z keeps the CDF right-continuous
        last = self.values.size - 1
        index = np.searchsorted(self.values, z, side="right") - 1
        inside = self._segment_level(index, z)
        return np.where(index < 0, 0.0, np.where(index >= last, 1.0, inside))

    def _cdf_left(self, z: np.ndarray) -> np.ndarray:
        index = np.searchsorted(self.values, z, side="left")
        inside = self._segment_level(index - 1, z)
        return np.where(index <= 0, 0.0, np.where(index > self.values.size - 1, 1.0, inside))

    def _pdf(self, z: np.ndarray) -> np.ndarray:
        index = np.clip(np.searchsorted(self.values, z, side="right") - 1, 0, self.values.size - 2)
        width = np.diff(self.values)[index]
        rise = np.diff(self.levels)[index]
        inside = (z >= self.values[0]) & (z < self.values[-1]) & (width > 0)
        return np.where(inside, rise / np.where(width > 0, width, 1.0), 0.0)

    def crps(self, y: float) -> float:
        """Exact CRPS, tied values act as atoms"""
        return piecewise_linear_crps(self.values, self.levels, float(y))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "levels": self.levels.tolist(),
            "values": self.values.tolist(),
        }
