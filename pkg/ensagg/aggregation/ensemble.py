"""
Ensembles of member forecasts and aggregation method descriptors
"""

# stdlib
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Union

# library
import numpy as np

# module
from ensagg.distributions import ForecastDist, HistogramDist, from_dict
from ensagg.exceptions import ConfigError, ShapeError
from ensagg.static.core import METHODS, VI_FREE_PARAMS
from ensagg.structs import VICoefficients


class EnsembleForecast:
    """n same-family member distributions for one forecast case"""

    def __init__(self, members: Sequence[ForecastDist]):
        members = list(members)
        if not members:
            raise ShapeError("Ensemble needs at least one member")
        families = {m.family for m in members}
        if len(families) > 1:
            raise ShapeError(f"Ensemble members mix families {sorted(families)}")
        if isinstance(members[0], HistogramDist):
            edges = members[0].edges
            if any(not np.array_equal(m.edges, edges) for m in members[1:]):
                raise ShapeError("Histogram members must share identical edges")
        self.members: List[ForecastDist] = members

    def __repr__(self) -> str:
        return f"<ensagg.EnsembleForecast family={self.family} n={self.n}>"

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ForecastDist]:
        return iter(self.members)

    @property
    def n(self) -> int:
        return len(self.members)

    @property
    def family(self) -> str:
        return self.members[0].family

    def first(self, n: int) -> "EnsembleForecast":
        """Ensemble of the first n members"""
        if not 1 <= n <= self.n:
            raise ShapeError(f"Cannot take {n} of {self.n} members")
        return EnsembleForecast(self.members[:n])

    def to_dict(self) -> dict:
        return {"members": [m.to_dict() for m in self.members]}

    @classmethod
    def from_dict(cls, data: Union[dict, list]) -> "EnsembleForecast":
        members = data["members"] if isinstance(data, dict) else data
        return cls([from_dict(m) for m in members])


@dataclass(frozen=True)
class AggMethod:
    """Aggregation variant with fixed or estimated VI coefficients"""

    variant: str
    coeffs: Optional[VICoefficients] = None

    def __post_init__(self):
        if self.variant not in METHODS:
            raise ConfigError(
                "method", f"unknown aggregation method {self.variant!r}, expected one of {METHODS}"
            )

    @property
    def is_vi(self) -> bool:
        return self.variant != "LP"

    @property
    def free_params(self) -> tuple:
        """Coefficients estimated on validation data"""
        return VI_FREE_PARAMS.get(self.variant, ())

    @property
    def needs_estimation(self) -> bool:
        return bool(self.free_params)

    def coefficients(self, n: int) -> Optional[VICoefficients]:
        """Effective (a, w0) for an ensemble of size n, None for LP"""
        if not self.is_vi:
            return None
        given = self.coeffs or VICoefficients(0.0, 1 / n)
        a = given.a if "a" in self.free_params else 0.0
        w0 = given.w0 if "w0" in self.free_params else 1 / n
        return VICoefficients(a, w0)
