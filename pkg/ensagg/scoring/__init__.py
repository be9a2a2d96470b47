"""
Proper scoring rules, calibration diagnostics, and skill scores
"""

from .calibration import (
    central_excess,
    coverage,
    median_error,
    pit,
    pit_histogram,
    pit_many,
    prediction_interval,
    skill_score,
)
from .crps import (
    crps,
    crps_histogram,
    crps_many,
    crps_normal,
    crps_quantile_approx,
    crps_quantile_grid,
    crps_sample,
    crps_sample_many,
    pinball,
    quantile_grid,
)
from .report import CaseScores, evaluate, score_cases, summarize_cases
