"""
Distributions built from other forecast distributions
"""

# stdlib
from typing import List, Sequence

# library
import numpy as np

# module
from ensagg.distributions.base import ForecastDist, bisect_increasing, invert_quantile
from ensagg.exceptions import DegenerateScale, InvalidDistribution
from ensagg.static.core import BISECTION_TOLERANCE


class MixtureDist(ForecastDist):
    """Weighted mixture F_w(z) = sum_i w_i F_i(z)"""

    family = "mixture"

    def __init__(self, components: Sequence[ForecastDist], weights=None):
        components = list(components)
        if not components:
            raise InvalidDistribution("Mixture needs at least one component")
        if weights is None:
            weights = np.full(len(components), 1 / len(components))
        weights = np.array(weights, dtype=float).ravel()
        if weights.size != len(components):
            raise InvalidDistribution(
                f"{len(components)} components but {weights.size} weights"
            )
        if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
            raise InvalidDistribution("Mixture weights must be >= 0 and sum to 1")
        weights.setflags(write=False)
        self.components: List[ForecastDist] = components
        self.weights = weights

    @property
    def bounded(self) -> bool:
        return all(c.bounded for c in self.components)

    @property
    def has_atoms(self) -> bool:
        return any(c.has_atoms for c in self._active())

    @property
    def mean(self) -> float:
        return float(sum(w * c.mean for w, c in zip(self.weights, self.components)))

    @property
    def variance(self) -> float:
        second = sum(
            w * (c.variance + c.mean ** 2) for w, c in zip(self.weights, self.components)
        )
        return float(second - self.mean ** 2)

    def _active(self) -> List[ForecastDist]:
        return [c for w, c in zip(self.weights, self.components) if w > 0]

    def _cdf(self, z: np.ndarray) -> np.ndarray:
        return sum(w * c._cdf(z) for w, c in zip(self.weights, self.components) if w > 0)

    def _cdf_left(self, z: np.ndarray) -> np.ndarray:
        return sum(
            w * c._cdf_left(z) for w, c in zip(self.weights, self.components) if w > 0
        )

    def _pdf(self, z: np.ndarray) -> np.ndarray:
        return sum(w * c._pdf(z) for w, c in zip(self.weights, self.components) if w > 0)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        # The mixture quantile lies between the extreme component quantiles
        bounds = np.vstack([c._quantile(p) for c in self._active()])
        return bisect_increasing(
            self._cdf, p, bounds.min(axis=0), bounds.max(axis=0), BISECTION_TOLERANCE
        )

    def _draw(self, rng: np.random.Generator, m: int) -> np.ndarray:
        # Choose a member first, then draw from it
        choice = rng.choice(len(self.components), size=m, p=self.weights)
        out = np.empty(m)
        for i, component in enumerate(self.components):
            mask = choice == i
            count = int(mask.sum())
            if count:
                out[mask] = component._draw(rng, count)
        return out

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "components": [c.to_dict() for c in self.components],
            "weights": self.weights.tolist(),
        }


class VincentizedDist(ForecastDist):
    """Quantile-averaged distribution Q(p) = a + w0 * sum_i Q_i(p)

    Generic form for member families without a closed-form aggregate
    """

    family = "vincentized"

    def __init__(self, members: Sequence[ForecastDist], a: float = 0.0, w0: float = None):
        members = list(members)
        if not members:
            raise InvalidDistribution("Vincentization needs at least one member")
        w0 = 1 / len(members) if w0 is None else float(w0)
        if w0 <= 0:
            raise DegenerateScale(f"Common weight must be positive, got {w0}")
        self.members: List[ForecastDist] = members
        self.a = float(a)
        self.w0 = w0

    @property
    def bounded(self) -> bool:
        return all(m.bounded for m in self.members)

    @property
    def has_atoms(self) -> bool:
        # A flat stretch needs every member quantile function flat at once
        return all(m.has_atoms for m in self.members)

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return self.a + self.w0 * sum(m._quantile(p) for m in self.members)

    def _cdf(self, z: np.ndarray) -> np.ndarray:
        inside = invert_quantile(self._quantile, z)
        if not self.bounded:
            return inside
        low, high = self.support
        return np.where(z < low, 0.0, np.where(z >= high, 1.0, inside))

    def _cdf_left(self, z: np.ndarray) -> np.ndarray:
        inside = invert_quantile(self._quantile, z, strict=True)
        if not self.bounded:
            return inside
        low, high = self.support
        return np.where(z <= low, 0.0, np.where(z > high, 1.0, inside))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "members": [m.to_dict() for m in self.members],
            "a": self.a,
            "w0": self.w0,
        }
