"""NumPy fallback for the compiled kernels in ``ineqkit._kernels``.

Same signatures and semantics; used automatically when the extension is not
built, or when INEQKIT_PURE_PYTHON=1 is set.
"""

import numpy as np


def rank_weighted_sum(values):
    """Sum of (1-based rank) * value over an ascending-sorted array."""
    ranks = np.arange(1, values.shape[0] + 1, dtype=np.float64)
    return float(np.dot(ranks, values))


def prefix_sums(values):
    """Cumulative sums in array order (ascending values first)."""
    return np.cumsum(values)


def scaled_power_sum(values, scale, exponent):
    """Sum of (v / scale) ** exponent over positive v, plus the zero count.

    Zeros are skipped so callers can short-circuit negative exponents.
    """
    positive = values[values > 0.0]
    acc = float(np.exp(exponent * np.log(positive / scale)).sum())
    return acc, int(values.shape[0] - positive.shape[0])


def scaled_log_sum(values, scale):
    """Sum of log(v / scale) over positive v, plus the zero count."""
    positive = values[values > 0.0]
    return float(np.log(positive / scale).sum()), int(values.shape[0] - positive.shape[0])
