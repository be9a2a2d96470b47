"""
ensagg Test Suite

Distribution, scoring, aggregation, network, and simulation study tests.
Shared oracles and assertions live in tests.util
"""

# stdlib
import sys
from pathlib import Path

# Import ensagg from the checkout, not an installed copy
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
