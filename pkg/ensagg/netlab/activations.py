"""
Hidden layer activations and their derivatives
"""

# stdlib
from typing import Callable, Dict, Tuple

# library
import numpy as np
from scipy.special import expit

Activation = Tuple[Callable[[np.ndarray], np.ndarray], Callable[[np.ndarray], np.ndarray]]


def softplus(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


def softplus_inv(y) -> np.ndarray:
    """Inverse of softplus for y > 0"""
    y = np.asarray(y, dtype=float)
    return y + np.log(-np.expm1(-y))


def _relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def _relu_grad(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0, 1.0, 0.0)


def _tanh_grad(x: np.ndarray) -> np.ndarray:
    return 1.0 - np.tanh(x) ** 2


#: Activation name -> (function, derivative w.r.t. the pre-activation)
ACTIVATIONS: Dict[str, Activation] = {
    "softplus": (softplus, expit),
    "relu": (_relu, _relu_grad),
    "tanh": (np.tanh, _tanh_grad),
}
