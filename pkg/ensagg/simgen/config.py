"""
Scenario settings
"""

# stdlib
from dataclasses import asdict, dataclass

# module
from ensagg.configuration import check_keys
from ensagg.exceptions import ConfigError
from ensagg.static.core import SCENARIOS


@dataclass(frozen=True)
class ScenarioSpec:
    """Data-generating process and split sizes of one simulation run

    homoscedastic forces beta_2 = 0 in S1. noise_scale multiplies the noise
    term, and the optimal forecast scales with it
    """

    id: str = "S1"
    n_train: int = 6000
    n_valid: int = 2000
    n_test: int = 10000
    seed: int = 0
    homoscedastic: bool = False
    noise_scale: float = 1.0

    def __post_init__(self):
        if self.id not in SCENARIOS:
            raise ConfigError("scenario.id", f"expected one of {SCENARIOS}, got {self.id!r}")
        for key in ("n_train", "n_test"):
            if getattr(self, key) < 1:
                raise ConfigError(f"scenario.{key}", "must be at least 1")
        if self.n_valid < 0:
            raise ConfigError("scenario.n_valid", "must not be negative")
        if not self.noise_scale > 0:
            raise ConfigError("scenario.noise_scale", "must be positive")

    @property
    def n_total(self) -> int:
        return self.n_train + self.n_valid + self.n_test

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioSpec":
        check_keys(cls, data, "scenario.")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError("scenario", str(exc)) from exc
