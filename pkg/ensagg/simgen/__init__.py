"""
Simulation scenarios with known optimal forecasts
"""

from .config import ScenarioSpec
from .export import write_datasets, write_latent
from .scenarios import GENERATORS, SKEW_SHAPE, ScenarioData, generate, optimal_crps
