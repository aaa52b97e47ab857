# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels over validated float64 value arrays.

These loops dominate runtime at large population sizes; accumulation is done
in extended precision to keep heavy-tailed sums stable. The NumPy fallback
with the same signatures lives in ``ineqkit._kernels_py``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log

cnp.import_array()


def rank_weighted_sum(const double[::1] values):
    """Sum of (1-based rank) * value over an ascending-sorted array."""
    cdef Py_ssize_t i, n = values.shape[0]
    cdef long double acc = 0.0
    for i in range(n):
        acc += (<long double> (i + 1)) * values[i]
    return float(acc)


def prefix_sums(const double[::1] values):
    """Cumulative sums in array order (ascending values first)."""
    cdef Py_ssize_t i, n = values.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] mv = out
    cdef long double acc = 0.0
    for i in range(n):
        acc += values[i]
        mv[i] = <double> acc
    return out

def scaled_power_sum(const double[::1] values, double scale, double exponent):
    """Sum of (v / scale) ** exponent over positive v, plus the zero count.

    Zeros are skipped so callers can short-circuit negative exponents.
    """
    cdef Py_ssize_t i, n = values.shape[0]
    cdef Py_ssize_t zeros = 0
    cdef long double acc = 0.0
    cdef double v
    for i in range(n):
        v = values[i]
        if v == 0.0:
            zeros += 1
        else:
            acc += exp(exponent * log(v / scale))
    return float(acc), zeros


def scaled_log_sum(const double[::1] values, double scale):
    """Sum of log(v / scale) over positive v, plus the zero count."""
    cdef Py_ssize_t i, n = values.shape[0]
    cdef Py_ssize_t zeros = 0
    cdef long double acc = 0.0
    cdef double v
    for i in range(n):
        v = values[i]
        if v == 0.0:
            zeros += 1
        else:
            acc += log(v / scale)
    return float(acc), zeros
