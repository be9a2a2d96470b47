"""
Contains dataclasses to hold forecast, score, and study data
"""

# pylint: disable=missing-class-docstring,missing-function-docstring,too-many-instance-attributes

# stdlib
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

# library
import numpy as np
import pandas as pd

# module
from ensagg.exceptions import DomainError, InvalidDistribution, ShapeError
from ensagg.static.core import RESULT_COLUMNS


@dataclass(frozen=True)
class VICoefficients:
    """Intercept and common member weight of a Vincentized quantile function"""

    a: float = 0.0
    w0: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.w0)):
            raise DomainError(f"VI coefficients must be finite, got {self}")
        if self.w0 < 0:
            raise DomainError(f"w0 must be non-negative, got {self.w0}")


@dataclass
class CoefficientFit:
    """Estimated VI coefficients and the validation score they reached"""

    variant: str
    coeffs: VICoefficients
    n: int
    validation_crps: float

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "a": self.coeffs.a,
            "w0": self.coeffs.w0,
            "n": self.n,
            "validation_crps": self.validation_crps,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CoefficientFit":
        try:
            coeffs = VICoefficients(a=float(data["a"]), w0=float(data["w0"]))
            return cls(
                variant=data["variant"],
                coeffs=coeffs,
                n=int(data["n"]),
                validation_crps=float(data.get("validation_crps", math.nan)),
            )
        except KeyError as key_error:
            raise InvalidDistribution(
                f"Coefficient file is missing {key_error}"
            ) from key_error


@dataclass
class EvalReport:
    """Aggregate verification metrics of one forecast method"""

    mean_crps: float
    crpss: float
    pit_values: np.ndarray
    pi_coverage: float
    pi_length: float
    bias: float
    n_cases: int

    def __post_init__(self):
        if not 0 <= self.pi_coverage <= 1:
            raise ValueError(f"Coverage must be in [0, 1], got {self.pi_coverage}")
        if self.pi_length < 0:
            raise ValueError(f"PI length must be non-negative, got {self.pi_length}")
        pit = np.asarray(self.pit_values, dtype=float)
        if pit.size and (pit.min() < 0 or pit.max() > 1):
            raise ValueError("PIT values must lie in [0, 1]")
        self.pit_values = pit

    def row(self, method: str, n: int, rep: int) -> Dict[str, object]:
        """Returns the report as a result row in the fixed column order"""
        values = (
            method,
            n,
            rep,
            self.mean_crps,
            self.crpss,
            self.pi_coverage,
            self.pi_length,
            self.bias,
        )
        return dict(zip(RESULT_COLUMNS, values))


@dataclass
class Dataset:
    """Feature matrix and target vector"""

    features: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        self.features = np.atleast_2d(np.asarray(self.features, dtype=float))
        self.targets = np.asarray(self.targets, dtype=float).ravel()
        if self.features.shape[0] != self.targets.shape[0]:
            raise ShapeError(
                f"{self.features.shape[0]} feature rows but {self.targets.shape[0]} targets"
            )

    def __len__(self) -> int:
        return self.targets.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, index) -> "Dataset":
        return Dataset(self.features[index], self.targets[index])

    def to_frame(self) -> pd.DataFrame:
        """Feature columns f1..fk and the target column y"""
        frame = pd.DataFrame(
            self.features, columns=[f"f{i + 1}" for i in range(self.n_features)]
        )
        frame["y"] = self.targets
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "Dataset":
        columns = [c for c in frame.columns if c != "y"]
        return cls(frame[columns].to_numpy(dtype=float), frame["y"].to_numpy(dtype=float))


@dataclass
class ScenarioCase:
    features: np.ndarray
    target: float
    optimal: object


@dataclass
class CellRecord:
    """One (scenario, variant, method, n, rep) cell of a study"""

    scenario: str
    variant: str
    method: str
    n: int
    rep: int
    report: Optional[EvalReport] = None
    a: Optional[float] = None
    w0: Optional[float] = None
    delta_n: Optional[float] = None
    validation_crps: Optional[float] = None
    error: Optional[str] = None

    @property
    def missing(self) -> bool:
        return self.report is None

    def row(self) -> Dict[str, object]:
        if self.report is None:
            nan = math.nan
            values = (self.method, self.n, self.rep, nan, nan, nan, nan, nan)
            ret = dict(zip(RESULT_COLUMNS, values))
        else:
            ret = self.report.row(self.method, self.n, self.rep)
        ret["variant"] = self.variant
        ret["scenario"] = self.scenario
        return ret


@dataclass
class RunResult:
    """Long-format study records plus bookkeeping"""

    records: List[CellRecord] = field(default_factory=list)
    meta: Dict[str, object] = field(default_factory=dict)

    def cells(self, **filters) -> List[CellRecord]:
        """Records matching all attribute filters"""
        return [
            r
            for r in self.records
            if all(getattr(r, key) == value for key, value in filters.items())
        ]

    @property
    def n_missing(self) -> int:
        return sum(r.missing for r in self.records)
