"""
Forecast distribution parent class and shared numerics
"""

# stdlib
from abc import ABCMeta, abstractmethod
from typing import Callable, Tuple, Union

# library
import numpy as np

# module
from ensagg.exceptions import DomainError

ArrayLike = Union[float, np.ndarray]

# Open-interval stand-ins for p = 0 and p = 1 when sampling unbounded families
_TINY = np.nextafter(0.0, 1.0)
_ALMOST_ONE = np.nextafter(1.0, 0.0)


def _frozen(values, name: str) -> np.ndarray:
    """Returns a read-only float vector"""
    arr = np.array(values, dtype=float).ravel()
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


def _apply(func: Callable[[np.ndarray], np.ndarray], x: ArrayLike) -> ArrayLike:
    """Evaluates a vectorized function keeping scalar in, scalar out"""
    arr = np.asarray(x, dtype=float)
    out = func(np.atleast_1d(arr).ravel()).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def check_levels(p: ArrayLike, closed: bool = True) -> np.ndarray:
    """Raises a DomainError if probability levels are outside [0, 1] or (0, 1)"""
    arr = np.asarray(p, dtype=float)
    if closed:
        bad = (arr < 0) | (arr > 1) | np.isnan(arr)
    else:
        bad = (arr <= 0) | (arr >= 1) | np.isnan(arr)
    if np.any(bad):
        interval = "[0, 1]" if closed else "(0, 1)"
        raise DomainError(f"Probability levels must lie in {interval}")
    return arr


def invert_quantile(
    qfunc: Callable[[np.ndarray], np.ndarray],
    z: np.ndarray,
    iterations: int = 60,
    strict: bool = False,
) -> np.ndarray:
    """Generalized inverse sup{p : Q(p) <= z} by vectorized bisection on (0, 1)

    With strict, sup{p : Q(p) < z} gives the left limit of the CDF instead.
    qfunc must accept a vector of levels the same length as z
    """
    z = np.asarray(z, dtype=float)
    low = np.zeros_like(z)
    high = np.ones_like(z)
    for _ in range(iterations):
        mid = 0.5 * (low + high)
        below = qfunc(mid) < z if strict else qfunc(mid) <= z
        low = np.where(below, mid, low)
        high = np.where(below, high, mid)
    return 0.5 * (low + high)


def bisect_increasing(
    func: Callable[[np.ndarray], np.ndarray],
    target: np.ndarray,
    low: np.ndarray,
    high: np.ndarray,
    tolerance: float,
) -> np.ndarray:
    """Smallest x in [low, high] with func(x) >= target, to the given tolerance

    func must be nondecreasing and bracket the target
    """
    low = np.array(low, dtype=float)
    high = np.array(high, dtype=float)
    width = float(np.max(high - low, initial=0.0))
    if width > tolerance:
        iterations = int(np.ceil(np.log2(width / tolerance)))
        for _ in range(iterations):
            mid = 0.5 * (low + high)
            above = func(mid) >= target
            high = np.where(above, mid, high)
            low = np.where(above, low, mid)
    return 0.5 * (low + high)


class ForecastDist(metaclass=ABCMeta):
    """Abstract base class for forecast distributions

    Subclasses implement vectorized private methods on 1-D arrays. The public
    methods accept scalars or arrays and check the domain.
    """

    #: Tag used in the JSON representation
    family: str = ""

    def __repr__(self) -> str:
        return f"<ensagg.{self.__class__.__name__} {self.to_dict()}>"

    def __eq__(self, other: object) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None

    @classmethod
    def many_cdf(cls, dists: list, z: np.ndarray) -> np.ndarray:
        """CDF of each distribution at its own z, all of this class"""
        z = np.asarray(z, dtype=float)
        return np.array([d._cdf(z[i : i + 1])[0] for i, d in enumerate(dists)])

    @classmethod
    def many_quantile(cls, dists: list, p: np.ndarray) -> np.ndarray:
        """Matrix of quantiles, one row per distribution, all of this class"""
        p = np.asarray(p, dtype=float)
        return np.vstack([d._quantile(p) for d in dists])

    @property
    def bounded(self) -> bool:
        """True if the quantile function is finite at 0 and 1"""
        return False

    @property
    def has_atoms(self) -> bool:
        """True if single points can carry positive probability"""
        return False

    @abstractmethod
    def _cdf(self, z: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _quantile(self, p: np.ndarray) -> np.ndarray:
        pass

    def _cdf_left(self, z: np.ndarray) -> np.ndarray:
        return self._cdf(z)

    def _pdf(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{self.family} has no density")

    def _draw(self, rng: np.random.Generator, m: int) -> np.ndarray:
        """Inversion sampling"""
        u = rng.random(m)
        if not self.bounded:
            u = np.clip(u, _TINY, _ALMOST_ONE)
        return self._quantile(u)

    @abstractmethod
    def to_dict(self) -> dict:
        """JSON-ready representation tagged by family"""

    def cdf(self, z: ArrayLike) -> ArrayLike:
        """Cumulative distribution function"""
        return _apply(self._cdf, z)

    def cdf_left(self, z: ArrayLike) -> ArrayLike:
        """Left limit of the CDF, P(Y < z)"""
        return _apply(self._cdf_left, z)

    def quantile(self, p: ArrayLike) -> ArrayLike:
        """Quantile function, raising a DomainError outside its domain"""
        check_levels(p, closed=self.bounded)
        return _apply(self._quantile, p)

    def pdf(self, z: ArrayLike) -> ArrayLike:
        """Density where the family defines one"""
        return _apply(self._pdf, z)

    def sample(self, m: int, rng_seed: int = 0) -> np.ndarray:
        """Reproducible i.i.d. draws"""
        if m < 1:
            raise DomainError(f"Sample size must be at least 1, got {m}")
        return self.draw(np.random.default_rng(rng_seed), m)

    def draw(self, rng: np.random.Generator, m: int) -> np.ndarray:
        """i.i.d. draws from an existing generator"""
        return np.asarray(self._draw(rng, int(m)), dtype=float)

    @property
    def support(self) -> Tuple[float, float]:
        if self.bounded:
            low, high = self._quantile(np.array([0.0, 1.0]))
            return float(low), float(high)
        return -np.inf, np.inf

    @property
    def median(self) -> float:
        return float(self._quantile(np.array([0.5]))[0])


def cdf(dist: ForecastDist, z: ArrayLike) -> ArrayLike:
    """CDF of any forecast distribution"""
    return dist.cdf(z)


def quantile(dist: ForecastDist, p: ArrayLike) -> ArrayLike:
    """Quantile function of any forecast distribution"""
    return dist.quantile(p)


def pdf(dist: ForecastDist, z: ArrayLike) -> ArrayLike:
    """Density of any forecast distribution that defines one"""
    return dist.pdf(z)


def sample(dist: ForecastDist, m: int, rng_seed: int = 0) -> np.ndarray:
    """Seeded i.i.d. sample of size m"""
    return dist.sample(m, rng_seed)
