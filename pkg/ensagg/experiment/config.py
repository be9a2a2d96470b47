"""
Study configuration, presets, and overrides
"""

# stdlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

# module
from ensagg.configuration import apply_overrides, check_keys
from ensagg.exceptions import ConfigError
from ensagg.load_utils import LazyLoad
from ensagg.netlab import NetConfig
from ensagg.simgen import ScenarioSpec
from ensagg.static.core import LP_SAMPLES, METHODS, PI_LEVEL, QUANTILE_LEVELS, VARIANTS

PRESETS = LazyLoad("presets")


@dataclass(frozen=True)
class RunConfig:
    """Repetitions x variants x methods x ensemble sizes for one scenario"""

    scenario: ScenarioSpec = field(default_factory=ScenarioSpec)
    variants: Tuple[str, ...] = VARIANTS
    methods: Tuple[str, ...] = METHODS
    max_members: int = 20
    sizes: Tuple[int, ...] = tuple(range(2, 21, 2))
    repetitions: int = 10
    net: NetConfig = field(default_factory=NetConfig)
    output_dir: str = "results"
    threads: int = 1
    pit_sizes: Tuple[int, ...] = (2,)
    lp_samples: int = LP_SAMPLES
    quantile_levels: int = QUANTILE_LEVELS
    pi_level: float = PI_LEVEL

    def __post_init__(self):
        for key in ("variants", "methods", "sizes", "pit_sizes"):
            value = getattr(self, key)
            if isinstance(value, (str, int)):
                raise ConfigError(key, "expected a list")
            object.__setattr__(self, key, tuple(value))
        if not self.variants or any(v not in VARIANTS for v in self.variants):
            raise ConfigError("variants", f"expected a subset of {VARIANTS}, got {list(self.variants)}")
        if not self.methods or any(m not in METHODS for m in self.methods):
            raise ConfigError("methods", f"expected a subset of {METHODS}, got {list(self.methods)}")
        if self.max_members < 1:
            raise ConfigError("max_members", "must be at least 1")
        if not self.sizes or any(not 2 <= n <= self.max_members for n in self.sizes):
            raise ConfigError("sizes", f"must lie in [2, {self.max_members}]")
        if self.repetitions < 1:
            raise ConfigError("repetitions", "must be at least 1")
        if self.threads < 1:
            raise ConfigError("threads", "must be at least 1")
        if self.lp_samples < 1:
            raise ConfigError("lp_samples", "must be at least 1")
        if self.quantile_levels < 2:
            raise ConfigError("quantile_levels", "must be at least 2")
        if not 0 < self.pi_level < 1:
            raise ConfigError("pi_level", "must lie in (0, 1)")
        estimated = [m for m in self.methods if m not in ("LP", "V0eq")]
        if estimated and self.scenario.n_valid < 1:
            raise ConfigError("scenario.n_valid", f"{estimated} need validation cases")

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.to_dict(),
            "variants": list(self.variants),
            "methods": list(self.methods),
            "max_members": self.max_members,
            "sizes": list(self.sizes),
            "repetitions": self.repetitions,
            "net": self.net.to_dict(),
            "output_dir": self.output_dir,
            "threads": self.threads,
            "pit_sizes": list(self.pit_sizes),
            "lp_samples": self.lp_samples,
            "quantile_levels": self.quantile_levels,
            "pi_level": self.pi_level,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        check_keys(cls, data)
        data = dict(data)
        data["scenario"] = ScenarioSpec.from_dict(data.get("scenario", {}))
        data["net"] = NetConfig.from_dict(data.get("net", {}))
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError("config", str(exc)) from exc


def load_config(
    path: Union[str, Path, None] = None,
    preset: Optional[str] = None,
    overrides: Optional[Dict[str, object]] = None,
) -> RunConfig:
    """Reads a JSON config file or packaged preset and applies dotted overrides"""
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    elif preset is not None:
        if preset not in PRESETS:
            raise ConfigError("preset", f"unknown preset {preset!r}, expected one of {list(PRESETS)}")
        data = PRESETS[preset]
    else:
        data = {}
    if overrides:
        data = apply_overrides(data, overrides)
    return RunConfig.from_dict(data)
