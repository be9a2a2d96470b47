"""
Feed-forward network with a probabilistic output head
"""

# stdlib
from typing import List, Optional, Tuple

# library
import numpy as np

# module
from ensagg.distributions import ForecastDist
from ensagg.exceptions import ShapeError
from ensagg.netlab.activations import ACTIVATIONS
from ensagg.netlab.config import NetConfig
from ensagg.netlab.heads import Head, make_head

# Output weights start small so early forecasts sit near the output bias
_OUTPUT_SCALE = 0.1


class NetModel:
    """Dense layers with hidden activations and a linear output layer

    Weights are stored as (inputs, outputs) matrices. Features are
    standardized with the training statistics kept on the model
    """

    config: NetConfig
    head: Head
    weights: List[np.ndarray]
    biases: List[np.ndarray]
    feature_mean: np.ndarray
    feature_scale: np.ndarray
    history: List[dict]

    def __init__(
        self,
        config: NetConfig,
        weights: List[np.ndarray],
        biases: List[np.ndarray],
        feature_mean: np.ndarray,
        feature_scale: np.ndarray,
    ):
        self.config = config
        self.head = make_head(config.head, config.bqn_degree, config.hen_edges)
        self.weights = [np.asarray(w, dtype=float) for w in weights]
        self.biases = [np.asarray(b, dtype=float) for b in biases]
        self.feature_mean = np.asarray(feature_mean, dtype=float)
        self.feature_scale = np.asarray(feature_scale, dtype=float)
        self.history = []
        widths = [self.feature_mean.size, *config.hidden_sizes, self.head.n_outputs]
        if len(self.weights) != len(widths) - 1 or len(self.biases) != len(self.weights):
            raise ShapeError(f"Expected {len(widths) - 1} layers, got {len(self.weights)}")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (widths[i], widths[i + 1]) or b.shape != (widths[i + 1],):
                raise ShapeError(
                    f"Layer {i} has shape {w.shape}/{b.shape}, expected {(widths[i], widths[i + 1])}"
                )

    def __repr__(self) -> str:
        widths = [self.n_inputs, *self.config.hidden_sizes, self.head.n_outputs]
        return f"<ensagg.NetModel {self.config.head} {'-'.join(map(str, widths))} seed={self.config.seed}>"

    @classmethod
    def initialize(
        cls,
        config: NetConfig,
        n_inputs: int,
        rng: np.random.Generator,
        targets: Optional[np.ndarray] = None,
        feature_mean: Optional[np.ndarray] = None,
        feature_scale: Optional[np.ndarray] = None,
    ) -> "NetModel":
        """Random weights, He for relu and Glorot otherwise

        Given training targets, the output bias starts at the head's
        marginal fit
        """
        head = make_head(config.head, config.bqn_degree, config.hen_edges)
        widths = [n_inputs, *config.hidden_sizes, head.n_outputs]
        weights, biases = [], []
        for i, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:])):
            if config.activation == "relu":
                w = rng.normal(0.0, np.sqrt(2 / fan_in), size=(fan_in, fan_out))
            else:
                limit = np.sqrt(6 / (fan_in + fan_out))
                w = rng.uniform(-limit, limit, size=(fan_in, fan_out))
            if i == len(widths) - 2:
                w *= _OUTPUT_SCALE
            weights.append(w)
            biases.append(np.zeros(fan_out))
        if targets is not None:
            biases[-1] = np.asarray(head.init_bias(np.asarray(targets, dtype=float)), dtype=float)
        mean = np.zeros(n_inputs) if feature_mean is None else feature_mean
        scale = np.ones(n_inputs) if feature_scale is None else feature_scale
        return cls(config, weights, biases, mean, scale)

    @property
    def n_inputs(self) -> int:
        return self.feature_mean.size

    @property
    def parameters(self) -> List[np.ndarray]:
        """Weight and bias arrays in layer order, updated in place by training"""
        ret = []
        for w, b in zip(self.weights, self.biases):
            ret += [w, b]
        return ret

    def copy_parameters(self) -> List[np.ndarray]:
        return [p.copy() for p in self.parameters]

    def set_parameters(self, values: List[np.ndarray]):
        for target, value in zip(self.parameters, values):
            target[...] = value

    def _inputs(self, features) -> np.ndarray:
        x = np.atleast_2d(np.asarray(features, dtype=float))
        if x.shape[1] != self.n_inputs:
            raise ShapeError(f"Model expects {self.n_inputs} features, got {x.shape[1]}")
        return (x - self.feature_mean) / self.feature_scale

    def _forward(self, x: np.ndarray) -> Tuple[np.ndarray, list]:
        func, _ = ACTIVATIONS[self.config.activation]
        cache = []
        a = x
        for w, b in zip(self.weights[:-1], self.biases[:-1]):
            z = a @ w + b
            cache.append((a, z))
            a = func(z)
        cache.append((a, None))
        return a @ self.weights[-1] + self.biases[-1], cache

    def raw(self, features) -> np.ndarray:
        """Raw head outputs, one row per case"""
        return self._forward(self._inputs(features))[0]

    def predict(self, features) -> List[ForecastDist]:
        """Forecast distribution for every row of features"""
        return self.head.distributions(self.raw(features))

    def loss(self, features, targets) -> float:
        return self.head.loss(self.raw(features), targets)[0]

    def gradients(self, features, targets) -> Tuple[float, List[np.ndarray]]:
        """Mean loss and its gradient for every entry of parameters"""
        raw, cache = self._forward(self._inputs(features))
        value, delta = self.head.loss(raw, targets)
        _, deriv = ACTIVATIONS[self.config.activation]
        grads = []
        for i in reversed(range(len(self.weights))):
            a, _ = cache[i]
            grads.append(delta.sum(axis=0))
            grads.append(a.T @ delta)
            if i > 0:
                _, z = cache[i - 1]
                delta = (delta @ self.weights[i].T) * deriv(z)
        grads.reverse()
        return value, grads


def forward(model: NetModel, features) -> List[ForecastDist]:
    """Forecast distributions of a trained model"""
    return model.predict(features)
