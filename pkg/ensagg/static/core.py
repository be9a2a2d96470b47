"""
Core static values for aggregation, scoring, and the simulation study
"""

#: Network variants by output distribution type
VARIANTS = ("DRN", "BQN", "HEN")

#: Linear pool and Vincentization variants
METHODS = ("LP", "V0eq", "Vaeq", "V0w", "Vaw")

#: VI variants and which coefficients are estimated (a, w0)
VI_FREE_PARAMS = {
    "V0eq": (),
    "Vaeq": ("a",),
    "V0w": ("w0",),
    "Vaw": ("a", "w0"),
}

#: Pseudo-method for the average score of the ensemble members
DEEP_ENSEMBLE = "DE"

#: Simulation scenarios
SCENARIOS = ("S1", "S2", "S3", "S4")

#: Nominal prediction interval level
PI_LEVEL = 19 / 21

#: Sample size for evaluating mixtures without a closed form
LP_SAMPLES = 1000

#: Number of equidistant quantiles for quantile-based CRPS
QUANTILE_LEVELS = 100

#: PIT histogram bins
PIT_BINS = 21

#: Tolerance when merging accumulated probabilities into knots
KNOT_TOLERANCE = 1e-12

#: Relative bin width below which a histogram bin counts as a point mass
ATOM_WIDTH = 1e-9

#: Tolerance for mixture quantile bisection in z
BISECTION_TOLERANCE = 1e-10

#: Lower bound added to the DRN scale output
SIGMA_FLOOR = 1e-4

#: Column order of result rows
RESULT_COLUMNS = (
    "method",
    "n",
    "rep",
    "mean_crps",
    "crpss",
    "coverage",
    "pi_length",
    "bias",
)

#: Column order of coefficient rows
COEFFICIENT_COLUMNS = ("variant", "method", "n", "rep", "a", "w0", "delta_n")
