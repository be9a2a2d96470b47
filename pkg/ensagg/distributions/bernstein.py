"""
Bernstein polynomial quantile functions
"""

# stdlib
from functools import lru_cache
from itertools import groupby

# library
import numpy as np
from scipy.special import comb

# module
from ensagg.distributions.base import ForecastDist, _frozen, invert_quantile
from ensagg.exceptions import InvalidDistribution


@lru_cache(maxsize=64)
def _binomials(degree: int) -> np.ndarray:
    return comb(degree, np.arange(degree + 1), exact=False)


def bernstein_basis(p: np.ndarray, degree: int) -> np.ndarray:
    """Matrix B[i, j] = C(d, j) p_i^j (1 - p_i)^(d - j)

    Exact at p = 0 and p = 1 where only the first or last column is one
    """
    p = np.asarray(p, dtype=float).reshape(-1, 1)
    j = np.arange(degree + 1)
    return _binomials(degree) * p ** j * (1 - p) ** (degree - j)


class BernsteinQuantileDist(ForecastDist):
    """Quantile function Q(p) = sum_j alpha_j B_jd(p) with nondecreasing alpha"""

    family = "bernstein"

    def __init__(self, coeffs):
        coeffs = _frozen(coeffs, "Bernstein coefficients")
        if coeffs.size < 2:
            raise InvalidDistribution("Bernstein quantile needs degree d >= 1")
        if np.any(np.diff(coeffs) < 0):
            raise InvalidDistribution("Bernstein coefficients must be nondecreasing")
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def bounded(self) -> bool:
        return True

    def _quantile(self, p: np.ndarray) -> np.ndarray:
        return bernstein_basis(p, self.degree) @ self.coeffs

    @property
    def has_atoms(self) -> bool:
        # Only equal end coefficients give a flat quantile function
        return bool(self.coeffs[0] == self.coeffs[-1])

    def _cdf(self, z: np.ndarray) -> np.ndarray:
        inside = invert_quantile(self._quantile, z)
        return np.where(z < self.coeffs[0], 0.0, np.where(z >= self.coeffs[-1], 1.0, inside))

    def _cdf_left(self, z: np.ndarray) -> np.ndarray:
        inside = invert_quantile(self._quantile, z, strict=True)
        return np.where(z <= self.coeffs[0], 0.0, np.where(z > self.coeffs[-1], 1.0, inside))

    def _pdf(self, z: np.ndarray) -> np.ndarray:
        p = self._cdf(z)
        steps = np.diff(self.coeffs)
        slope = self.degree * (bernstein_basis(p, self.degree - 1) @ steps)
        inside = (z >= self.coeffs[0]) & (z <= self.coeffs[-1]) & (slope > 0)
        return np.where(inside, 1.0 / np.where(slope > 0, slope, 1.0), 0.0)

    def to_dict(self) -> dict:
        return {"family": self.family, "coeffs": self.coeffs.tolist()}

    @classmethod
    def many_quantile(cls, dists: list, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if len({d.degree for d in dists}) > 1:
            return super().many_quantile(dists, p)
        alpha = np.vstack([d.coeffs for d in dists])
        return alpha @ bernstein_basis(p, dists[0].degree).T

    @classmethod
    def many_cdf(cls, dists: list, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        out = np.empty(len(dists))
        order = sorted(range(len(dists)), key=lambda i: dists[i].degree)
        for degree, group in groupby(order, key=lambda i: dists[i].degree):
            index = np.array(list(group))
            alpha = np.vstack([dists[i].coeffs for i in index])

            def qfunc(p, alpha=alpha, degree=degree):
                return np.sum(alpha * bernstein_basis(p, degree), axis=1)

            zi = z[index]
            inside = invert_quantile(qfunc, zi)
            out[index] = np.where(
                zi < alpha[:, 0], 0.0, np.where(zi >= alpha[:, -1], 1.0, inside)
            )
        return out
