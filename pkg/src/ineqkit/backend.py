"""Kernel backend selection, fixed at import time.

The compiled extension is preferred when present; set INEQKIT_PURE_PYTHON=1
to force the NumPy fallback (useful for benchmarking the two side by side,
see benchmarks/bench_backends.py).
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

if _compiled is None or os.environ.get("INEQKIT_PURE_PYTHON") == "1":
    _active = _kernels_py
    BACKEND = "python"
else:
    _active = _compiled
    BACKEND = "compiled"

rank_weighted_sum = _active.rank_weighted_sum
prefix_sums = _active.prefix_sums
scaled_power_sum = _active.scaled_power_sum
scaled_log_sum = _active.scaled_log_sum
