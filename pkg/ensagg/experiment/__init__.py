"""
Simulation study orchestration and result tables
"""

from .config import PRESETS, RunConfig, load_config
from .criteria import check, write_criteria
from .outputs import load_result, write_json, write_outputs
from .study import aggregate_cases, lp_sample_forecasts, run, run_repetition
from .summary import coefficients_frame, pit_frame, results_frame, summarize
