"""
Ordered collection of trained ensemble members
"""

# stdlib
from typing import List, Optional

# library
import numpy as np

# module
from ensagg.aggregation import EnsembleForecast
from ensagg.distributions import ForecastDist
from ensagg.exceptions import ShapeError, TrainingError
from ensagg.netlab.network import NetModel


class DeepEnsemble:
    """Members in training order, so the first n members are well defined

    failure holds the error that ended training early, if any
    """

    def __init__(self, models: List[NetModel], failure: Optional[TrainingError] = None):
        self.models = list(models)
        self.failure = failure
        if len({m.config.head for m in self.models}) > 1:
            raise ShapeError("Ensemble members must share one head")

    def __repr__(self) -> str:
        head = self.models[0].config.head if self.models else "-"
        return f"<ensagg.DeepEnsemble {head} n={self.n}>"

    def __len__(self) -> int:
        return len(self.models)

    def __getitem__(self, index: int) -> NetModel:
        return self.models[index]

    @property
    def n(self) -> int:
        return len(self.models)

    @property
    def complete(self) -> bool:
        return self.failure is None

    def first(self, n: int) -> "DeepEnsemble":
        if not 1 <= n <= self.n:
            raise ShapeError(f"Cannot take {n} of {self.n} members")
        return DeepEnsemble(self.models[:n])

    def predict_params(self, features) -> np.ndarray:
        """Raw head outputs with shape (members, cases, outputs)"""
        return np.stack([m.raw(features) for m in self.models])

    def member_forecasts(self, features) -> List[List[ForecastDist]]:
        """Forecasts per member, then per case"""
        return [m.predict(features) for m in self.models]

    def forecast(self, features, n: Optional[int] = None) -> List[EnsembleForecast]:
        """One ensemble forecast per case from the first n members"""
        members = self.member_forecasts(features)[: n or self.n]
        return [EnsembleForecast(case) for case in zip(*members)]
