# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Sturm-sequence bisection for symmetric tridiagonal matrices.

Mirrors ``_sturm_py`` line for line; both must return identical results.
"""

import numpy as np

from libc.math cimport fabs, fmax


cdef Py_ssize_t _count_below(const double[::1] d, const double[::1] e2,
                             double x, double pivmin) noexcept nogil:
    cdef Py_ssize_t i, n = d.shape[0], c = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        c += 1
    for i in range(1, n):
        q = (d[i] - x) - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            c += 1
    return c


def count_below(double[::1] d, double[::1] e2, double x, double pivmin):
    """Number of eigenvalues strictly below ``x``."""
    return _count_below(d, e2, x, pivmin)


def bisect_lowest(double[::1] d, double[::1] e2, Py_ssize_t count,
                  double lower, double upper, double pivmin,
                  double rtol, int max_iter):
    """Lowest ``count`` eigenvalues by bisection on [lower, upper].

    Returns ``(values, failed_index)``; ``failed_index`` is -1 on success.
    """
    cdef double[::1] out = np.empty(count, dtype=np.float64)
    cdef Py_ssize_t j
    cdef int it
    cdef double lo, hi, mid, floor_lo = lower
    cdef Py_ssize_t failed = -1
    with nogil:
        for j in range(count):
            lo = floor_lo
            hi = upper
            if _count_below(d, e2, hi, pivmin) <= j:
                failed = j
                break
            it = 0
            while hi - lo > rtol * fmax(fabs(lo), fabs(hi)) + pivmin:
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                if _count_below(d, e2, mid, pivmin) > j:
                    hi = mid
                else:
                    lo = mid
                it += 1
                if it >= max_iter:
                    break
            out[j] = 0.5 * (lo + hi)
            floor_lo = lo
    return np.asarray(out), failed
