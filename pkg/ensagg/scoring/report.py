"""
Per-case scoring and aggregate evaluation reports
"""

# stdlib
import math
from dataclasses import dataclass
from typing import Optional, Sequence

# library
import numpy as np
import pandas as pd

# module
from ensagg.distributions import ForecastDist, quantile_many
from ensagg.scoring.calibration import coverage, pit_many, skill_score
from ensagg.scoring.crps import crps_many
from ensagg.static.core import PI_LEVEL
from ensagg.structs import EvalReport


@dataclass
class CaseScores:
    """Per-case verification values"""

    crps: np.ndarray
    pit: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    median_error: np.ndarray

    def __len__(self) -> int:
        return self.crps.size

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "case": np.arange(len(self)),
                "crps": self.crps,
                "pit": self.pit,
                "lower": self.lower,
                "upper": self.upper,
                "median_error": self.median_error,
            }
        )


def score_cases(
    forecasts: Sequence[ForecastDist], obs, level: float = PI_LEVEL, rng_seed: int = 0
) -> CaseScores:
    """CRPS, unified PIT, PI bounds, and median error for every case"""
    obs = np.asarray(obs, dtype=float)
    crps_seq, pit_seq = np.random.SeedSequence(rng_seed).spawn(2)
    seeds = crps_seq.generate_state(max(len(forecasts), 1))
    alpha = (1 - level) / 2
    q = quantile_many(forecasts, [alpha, 0.5, 1 - alpha])
    return CaseScores(
        crps=crps_many(forecasts, obs, seeds),
        pit=pit_many(forecasts, obs, int(pit_seq.generate_state(1)[0])),
        lower=q[:, 0],
        upper=q[:, 2],
        median_error=q[:, 1] - obs,
    )


def summarize_cases(
    scores: CaseScores, obs, mean_ref: Optional[float] = None, mean_opt: float = 0.0
) -> EvalReport:
    """Aggregates per-case values into an EvalReport"""
    mean_crps = float(np.mean(scores.crps))
    crpss = math.nan if mean_ref is None else skill_score(mean_crps, mean_ref, mean_opt)
    return EvalReport(
        mean_crps=mean_crps,
        crpss=crpss,
        pit_values=scores.pit,
        pi_coverage=coverage(scores.lower, scores.upper, obs),
        pi_length=float(np.mean(scores.upper - scores.lower)),
        bias=float(np.mean(scores.median_error)),
        n_cases=len(scores),
    )


def evaluate(
    forecasts: Sequence[ForecastDist],
    obs,
    mean_ref: Optional[float] = None,
    mean_opt: float = 0.0,
    level: float = PI_LEVEL,
    rng_seed: int = 0,
) -> EvalReport:
    """Scores forecasts against observations

    CRPSS is only computed when a reference mean score is given
    """
    scores = score_cases(forecasts, obs, level, rng_seed)
    return summarize_cases(scores, obs, mean_ref, mean_opt)
