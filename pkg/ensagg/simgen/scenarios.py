"""
Seeded data-generating processes and their optimal forecasts
"""

# stdlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterator, List

# library
import numpy as np

# module
from ensagg.distributions import ForecastDist, NormalDist, SkewNormalDist
from ensagg.distributions.parametric import standard_skew_quantile
from ensagg.scoring.crps import crps_normal, crps_quantile_grid, quantile_grid
from ensagg.simgen.config import ScenarioSpec
from ensagg.structs import Dataset, ScenarioCase

#: Shape of the skew-normal noise in S2
SKEW_SHAPE = -5.0


@dataclass
class Draw:
    """Features, targets, and optimal forecast parameters for all cases"""

    features: np.ndarray
    targets: np.ndarray
    family: str
    params: Dict[str, np.ndarray]
    latent: Dict[str, object] = field(default_factory=dict)


def _linear(spec: ScenarioSpec, rng: np.random.Generator, n: int) -> Draw:
    beta1 = rng.standard_normal(5)
    beta2 = 0.45 * rng.standard_normal(5)
    if spec.homoscedastic:
        beta2 = np.zeros(5)
    x = rng.standard_normal((n, 5))
    mu = x @ beta1
    sigma = spec.noise_scale * np.exp(x @ beta2)
    y = mu + sigma * rng.standard_normal(n)
    latent = {"beta1": beta1.tolist(), "beta2": beta2.tolist()}
    return Draw(x, y, "normal", {"mu": mu, "sigma": sigma}, latent)


def _friedman(x: np.ndarray) -> np.ndarray:
    return (
        10 * np.sin(2 * np.pi * x[:, 0] * x[:, 1])
        + 20 * (x[:, 2] - 0.5) ** 2
        + 10 * x[:, 3]
        + 5 * x[:, 4]
    )


def _skewed(spec: ScenarioSpec, rng: np.random.Generator, n: int) -> Draw:
    x = rng.random((n, 5))
    location = _friedman(x)
    noise = SkewNormalDist(0.0, 1.0, SKEW_SHAPE).draw(rng, n)
    y = location + spec.noise_scale * noise
    scale = np.full(n, spec.noise_scale)
    return Draw(x, y, "skewnormal", {"location": location, "scale": scale})


def _mixture(spec: ScenarioSpec, rng: np.random.Generator, n: int) -> Draw:
    x = rng.random((n, 5))
    pi = rng.binomial(1, 0.5, n)
    first = 10 * np.sin(2 * np.pi * x[:, 0] * x[:, 1]) + 10 * x[:, 3]
    second = 20 * (x[:, 2] - 0.5) ** 2 + 5 * x[:, 4]
    sd = spec.noise_scale * np.where(pi == 1, 1.5, 1.0)
    mu = np.where(pi == 1, first, second)
    y = mu + sd * rng.standard_normal(n)
    return Draw(x, y, "normal", {"mu": mu, "sigma": sd}, {"pi": pi.tolist()})


def _sine_mixture(spec: ScenarioSpec, rng: np.random.Generator, n: int) -> Draw:
    x = 10 * rng.random((n, 1))
    pi = rng.binomial(1, 0.5, n)
    first = np.sin(x[:, 0])
    second = 2 * np.sin(1.5 * x[:, 0] + 1)
    sd = spec.noise_scale * np.where(pi == 1, 0.3, 0.8)
    mu = np.where(pi == 1, first, second)
    y = mu + sd * rng.standard_normal(n)
    return Draw(x, y, "normal", {"mu": mu, "sigma": sd}, {"pi": pi.tolist()})


GENERATORS: Dict[str, Callable[[ScenarioSpec, np.random.Generator, int], Draw]] = {
    "S1": _linear,
    "S2": _skewed,
    "S3": _mixture,
    "S4": _sine_mixture,
}


@dataclass
class ScenarioData:
    """Train, validation, and test splits with the test-set optimal forecasts

    Unpacks as (train, valid, test, optimal_test)
    """

    spec: ScenarioSpec
    train: Dataset
    valid: Dataset
    test: Dataset
    optimal_family: str
    optimal_params: Dict[str, np.ndarray]
    latent: Dict[str, object]
    metadata: Dict[str, object]

    def __iter__(self) -> Iterator:
        return iter((self.train, self.valid, self.test, self.optimal_test))

    @cached_property
    def optimal_test(self) -> List[ForecastDist]:
        if self.optimal_family == "normal":
            return [
                NormalDist(m, s)
                for m, s in zip(self.optimal_params["mu"], self.optimal_params["sigma"])
            ]
        return [
            SkewNormalDist(loc, scale, SKEW_SHAPE)
            for loc, scale in zip(self.optimal_params["location"], self.optimal_params["scale"])
        ]

    def case(self, index: int) -> ScenarioCase:
        """Test case with its optimal forecast"""
        return ScenarioCase(
            self.test.features[index], float(self.test.targets[index]), self.optimal_test[index]
        )

    @property
    def optimal_crps(self) -> float:
        """Mean CRPS of the optimal forecast on the test set"""
        return optimal_crps(self)


def generate(spec: ScenarioSpec) -> ScenarioData:
    """Draws one run of a scenario, all randomness from spec.seed

    Validation cases come from the same process as additional training-pool cases
    """
    rng = np.random.default_rng(spec.seed)
    draw = GENERATORS[spec.id](spec, rng, spec.n_total)
    stops = np.cumsum([spec.n_train, spec.n_valid])
    index = np.arange(spec.n_total)
    train, valid, test = np.split(index, stops)
    latent = dict(draw.latent)
    if "pi" in latent:
        pi = np.asarray(latent["pi"])
        latent["pi"] = {"train": pi[train].tolist(), "valid": pi[valid].tolist(), "test": pi[test].tolist()}
    return ScenarioData(
        spec=spec,
        train=Dataset(draw.features[train], draw.targets[train]),
        valid=Dataset(draw.features[valid], draw.targets[valid]),
        test=Dataset(draw.features[test], draw.targets[test]),
        optimal_family=draw.family,
        optimal_params={k: v[test] for k, v in draw.params.items()},
        latent=latent,
        metadata={
            "scenario": spec.to_dict(),
            "validation_split": "additional cases drawn from the training process",
        },
    )


def optimal_crps(data: ScenarioData) -> float:
    """Mean CRPS of the optimal forecasts, closed form for normal laws and
    100 equidistant quantiles for the skew-normal"""
    y = data.test.targets
    params = data.optimal_params
    if data.optimal_family == "normal":
        return float(np.mean(crps_normal(params["mu"], params["sigma"], y)))
    levels = quantile_grid()
    standard = np.array([standard_skew_quantile(float(p), SKEW_SHAPE) for p in levels])
    q = params["location"][:, None] + params["scale"][:, None] * standard[None, :]
    return float(np.mean(crps_quantile_grid(q, y, levels)))
