"""
Network hyperparameters
"""

# stdlib
from dataclasses import asdict, dataclass, replace
from typing import Optional, Tuple

# library
import numpy as np

# module
from ensagg.configuration import check_keys
from ensagg.exceptions import ConfigError
from ensagg.netlab.activations import ACTIVATIONS
from ensagg.static.core import VARIANTS


@dataclass(frozen=True)
class NetConfig:
    """Architecture and training settings of one ensemble member

    hen_edges may stay empty, in which case they are derived from the
    training targets with hen_bins bins
    """

    head: str = "DRN"
    hidden_sizes: Tuple[int, ...] = (64, 32)
    activation: str = "softplus"
    bqn_degree: int = 12
    hen_edges: Optional[Tuple[float, ...]] = None
    hen_bins: int = 50
    learning_rate: float = 1e-3
    batch_size: int = 32
    max_epochs: int = 150
    patience: int = 10
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "hidden_sizes", tuple(int(h) for h in self.hidden_sizes))
        if self.hen_edges is not None:
            object.__setattr__(self, "hen_edges", tuple(float(e) for e in self.hen_edges))
        if self.head not in VARIANTS:
            raise ConfigError("net.head", f"expected one of {VARIANTS}, got {self.head!r}")
        if not self.hidden_sizes or min(self.hidden_sizes) < 1:
            raise ConfigError("net.hidden_sizes", "needs at least one layer of positive width")
        if self.activation not in ACTIVATIONS:
            raise ConfigError(
                "net.activation", f"expected one of {sorted(ACTIVATIONS)}, got {self.activation!r}"
            )
        if self.bqn_degree < 1:
            raise ConfigError("net.bqn_degree", "must be at least 1")
        if self.hen_bins < 1:
            raise ConfigError("net.hen_bins", "must be at least 1")
        if self.hen_edges is not None and (
            len(self.hen_edges) < 2 or np.any(np.diff(self.hen_edges) <= 0)
        ):
            raise ConfigError("net.hen_edges", "must increase strictly with at least two edges")
        if not self.learning_rate > 0:
            raise ConfigError("net.learning_rate", "must be positive")
        for key in ("batch_size", "max_epochs", "patience"):
            if getattr(self, key) < 1:
                raise ConfigError(f"net.{key}", "must be at least 1")

    @property
    def n_outputs(self) -> int:
        """Width of the raw head output"""
        if self.head == "DRN":
            return 2
        if self.head == "BQN":
            return self.bqn_degree + 1
        if self.hen_edges is None:
            raise ConfigError("net.hen_edges", "HEN output width needs bin edges")
        return len(self.hen_edges) - 1

    def with_updates(self, **kwargs) -> "NetConfig":
        return replace(self, **kwargs)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["hidden_sizes"] = list(self.hidden_sizes)
        if self.hen_edges is not None:
            data["hen_edges"] = list(self.hen_edges)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "NetConfig":
        check_keys(cls, data, "net.")
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError("net", str(exc)) from exc
