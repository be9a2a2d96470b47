"""
Empirical distribution of a forecast sample
"""

# library
import numpy as np

# module
from ensagg.distributions.base import ForecastDist, _frozen
from ensagg.exceptions import DomainError


class SampleDist(ForecastDist):
    """Empirical distribution putting mass 1/m on each sample value"""

    family = "sample"

    def __init__(self, values):
        values = np.sort(np.array(values, dtype=float).ravel())
        if values.size == 0:
            raise DomainError("Sample must not be empty")
        self.values = _frozen(values, "Sample values")

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def bounded(self) -> bool:
        return True

    @property
    def has_atoms(self) -> bool:
        return True

    def _cdf(self, z: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.values, z, side="right") / self.size

    def _cdf_left(self, z: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.values, z, side="left") / self.size

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        index = np.clip(np.ceil(p * self.size).astype(int) - 1, 0, self.size - 1)
        return self.values[index]

    def _draw(self, rng: np.random.Generator, m: int) -> np.ndarray:
        return rng.choice(self.values, size=m, replace=True)

    def to_dict(self) -> dict:
        return {"family": self.family, "values": self.values.tolist()}

    @classmethod
    def many_quantile(cls, dists: list, p: np.ndarray) -> np.ndarray:
        if len({d.size for d in dists}) > 1:
            return super().many_quantile(dists, p)
        m = dists[0].size
        values = np.vstack([d.values for d in dists])
        index = np.clip(np.ceil(np.asarray(p, dtype=float) * m).astype(int) - 1, 0, m - 1)
        return values[:, index]
