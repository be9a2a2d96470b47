"""
python -m ensagg
"""

import sys

from ensagg.cli import main

sys.exit(main())
