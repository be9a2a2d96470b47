"""
Output heads mapping raw network outputs to forecast distributions

Each head provides the loss on raw outputs together with its analytic
gradient, averaged over the batch
"""

# stdlib
import logging
import math
from abc import ABCMeta, abstractmethod
from typing import List, Optional, Tuple

# library
import numpy as np
from scipy.special import expit, log_softmax, ndtr, softmax

# module
from ensagg.distributions import BernsteinQuantileDist, ForecastDist, HistogramDist, NormalDist
from ensagg.distributions.bernstein import bernstein_basis
from ensagg.exceptions import ShapeError
from ensagg.netlab.activations import softplus, softplus_inv
from ensagg.scoring.crps import pinball
from ensagg.static.core import SIGMA_FLOOR

LOG = logging.getLogger(__name__)

_INV_SQRT_PI = 1 / math.sqrt(math.pi)
_INV_SQRT_2PI = 1 / math.sqrt(2 * math.pi)

#: Quantile levels of the BQN training loss
PINBALL_LEVELS = np.arange(1, 100) / 100


class Head(metaclass=ABCMeta):
    """Output parameterization and training loss of one network variant"""

    name: str = ""

    @property
    @abstractmethod
    def n_outputs(self) -> int:
        pass

    def _check(self, raw: np.ndarray) -> np.ndarray:
        raw = np.atleast_2d(np.asarray(raw, dtype=float))
        if raw.shape[1] != self.n_outputs:
            raise ShapeError(f"{self.name} head expects {self.n_outputs} outputs, got {raw.shape[1]}")
        return raw

    @abstractmethod
    def loss(self, raw: np.ndarray, y: np.ndarray) -> Tuple[float, np.ndarray]:
        """Mean loss and its gradient with respect to raw"""

    @abstractmethod
    def distributions(self, raw: np.ndarray) -> List[ForecastDist]:
        pass

    @abstractmethod
    def init_bias(self, y: np.ndarray) -> np.ndarray:
        """Output bias that starts the network near the marginal of y"""


class NormalHead(Head):
    """DRN: mu = raw_0, sigma = softplus(raw_1) + floor, trained on the CRPS"""

    name = "DRN"

    @property
    def n_outputs(self) -> int:
        return 2

    @staticmethod
    def params(raw: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return raw[:, 0], softplus(raw[:, 1]) + SIGMA_FLOOR

    def loss(self, raw, y):
        raw = self._check(raw)
        y = np.asarray(y, dtype=float)
        mu, sigma = self.params(raw)
        z = (y - mu) / sigma
        cdf = ndtr(z)
        pdf = np.exp(-0.5 * z * z) * _INV_SQRT_2PI
        # Closed-form CRPS inline so a diverged network yields nan instead of raising
        crps = sigma * (z * (2 * cdf - 1) + 2 * pdf - _INV_SQRT_PI)
        grad = np.empty_like(raw)
        grad[:, 0] = 1 - 2 * cdf
        grad[:, 1] = (2 * pdf - _INV_SQRT_PI) * expit(raw[:, 1])
        return float(np.mean(crps)), grad / y.size

    def distributions(self, raw):
        mu, sigma = self.params(self._check(raw))
        return [NormalDist(m, s) for m, s in zip(mu, sigma)]

    def init_bias(self, y):
        spread = max(float(np.std(y)), 10 * SIGMA_FLOOR)
        return np.array([float(np.mean(y)), float(softplus_inv(spread - SIGMA_FLOOR))])


class BernsteinHead(Head):
    """BQN: alpha_0 = raw_0 and alpha_j = alpha_(j-1) + softplus(raw_j)

    Trained on the mean pinball loss over fixed levels
    """

    name = "BQN"

    def __init__(self, degree: int):
        self.degree = degree
        self.basis = bernstein_basis(PINBALL_LEVELS, degree)

    @property
    def n_outputs(self) -> int:
        return self.degree + 1

    @staticmethod
    def coefficients(raw: np.ndarray) -> np.ndarray:
        steps = np.concatenate((raw[:, :1], softplus(raw[:, 1:])), axis=1)
        return np.cumsum(steps, axis=1)

    def loss(self, raw, y):
        raw = self._check(raw)
        y = np.asarray(y, dtype=float).reshape(-1, 1)
        alpha = self.coefficients(raw)
        q = alpha @ self.basis.T
        u = y - q
        levels = PINBALL_LEVELS[None, :]
        value = float(np.mean(pinball(u, levels)))
        dq = ((u < 0) - levels) / (levels.size * y.size)
        dalpha = dq @ self.basis
        # Coefficient j depends on every raw_k with k <= j
        tail = np.cumsum(dalpha[:, ::-1], axis=1)[:, ::-1]
        grad = np.empty_like(raw)
        grad[:, 0] = tail[:, 0]
        grad[:, 1:] = tail[:, 1:] * expit(raw[:, 1:])
        return value, grad

    def distributions(self, raw):
        return [BernsteinQuantileDist(row) for row in self.coefficients(self._check(raw))]

    def init_bias(self, y):
        low, high = np.quantile(y, [0.005, 0.995])
        step = max((high - low) / self.degree, 1e-3)
        return np.concatenate(([low], np.full(self.degree, float(softplus_inv(step)))))


class HistogramHead(Head):
    """HEN: bin probabilities by softmax, trained on the categorical cross-entropy"""

    name = "HEN"

    def __init__(self, edges):
        self.edges = np.asarray(edges, dtype=float)
        self._warned = False

    @property
    def n_outputs(self) -> int:
        return self.edges.size - 1

    def bin_index(self, y: np.ndarray) -> np.ndarray:
        """Bin containing y, clamping values outside the edges"""
        y = np.asarray(y, dtype=float)
        outside = (y < self.edges[0]) | (y > self.edges[-1])
        if np.any(outside):
            # warn once per head
            log = LOG.debug if self._warned else LOG.warning
            self._warned = True
            log(
                "%d targets outside [%g, %g] clamped to the outer bins",
                int(outside.sum()),
                self.edges[0],
                self.edges[-1],
            )
        index = np.searchsorted(self.edges, y, side="right") - 1
        return np.clip(index, 0, self.n_outputs - 1)

    def loss(self, raw, y):
        raw = self._check(raw)
        index = self.bin_index(y)
        rows = np.arange(raw.shape[0])
        value = float(-np.mean(log_softmax(raw, axis=1)[rows, index]))
        grad = softmax(raw, axis=1)
        grad[rows, index] -= 1
        return value, grad / raw.shape[0]

    def distributions(self, raw):
        probs = softmax(self._check(raw), axis=1)
        return [HistogramDist(self.edges, row / row.sum()) for row in probs]

    def init_bias(self, y):
        counts = np.bincount(self.bin_index(y), minlength=self.n_outputs)
        freq = (counts + 1) / (counts.sum() + self.n_outputs)
        return np.log(freq)


def make_head(name: str, degree: int = 12, edges: Optional[np.ndarray] = None) -> Head:
    """Head instance for a network variant"""
    if name == "DRN":
        return NormalHead()
    if name == "BQN":
        return BernsteinHead(degree)
    if name == "HEN":
        if edges is None:
            raise ShapeError("HEN head needs bin edges")
        return HistogramHead(edges)
    raise ShapeError(f"Unknown head {name!r}")


def loss(head: Head, raw: np.ndarray, y) -> Tuple[float, np.ndarray]:
    """Mean training loss of a head and its gradient on raw outputs"""
    return head.loss(raw, y)
