# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the scaled-Bessel backward recurrence.

The pure-Python twin lives in ``zharm._core_py``; ``zharm._backend``
selects between the two at import time.  Both expose the same
``miller_row`` contract.
"""

import numpy as np

DEF BIG = 1e250
DEF INV_BIG = 1e-250


def miller_row(double z, Py_ssize_t radius, Py_ssize_t start):
    """One backward (Miller) pass of the scaled row e^{-z} I_k(z), k = 0..radius.

    The three-term recurrence I_{k-1} = I_{k+1} + (2k/z) I_k is run down
    from a seed at order ``start`` and the row is normalized through
    I_0(z) + 2 sum_{k>=1} I_k(z) = e^z, which yields the scaled values
    directly.  ``start`` must exceed both ``radius`` and the index range
    carrying the mass of the row; callers establish convergence by
    repeating the pass with a larger ``start``.
    """
    if z <= 0.0:
        raise ValueError("miller_row requires z > 0")
    if start <= radius + 1:
        raise ValueError("start must exceed radius + 1")
    out = np.zeros(radius + 1, dtype=np.float64)
    cdef double[::1] row = out
    cdef double u_hi = 0.0   # u_{k+1}
    cdef double u_mid = 1.0  # u_k, seeded at k = start
    cdef double u_lo
    cdef double ssum = 2.0 * u_mid
    cdef double two_over_z = 2.0 / z
    cdef Py_ssize_t k, j
    for k in range(start, 0, -1):
        u_lo = u_hi + (two_over_z * k) * u_mid
        if k - 1 <= radius:
            row[k - 1] = u_lo
        if k >= 2:
            ssum += 2.0 * u_lo
        else:
            ssum += u_lo
        u_hi = u_mid
        u_mid = u_lo
        if u_lo > BIG:
            u_hi *= INV_BIG
            u_mid *= INV_BIG
            ssum *= INV_BIG
            for j in range(max(k - 1, 0), radius + 1):
                row[j] *= INV_BIG
    for j in range(radius + 1):
        row[j] /= ssum
    return out
