# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled batch evaluators for the grid sweeps.

Every kernel takes the prior as a 4-sequence (a, b, c, d), symmetric
encoder points as an (K, 2) array of (kappa1, kappa2) and decoder points as
rows of parameters. Must stay numerically identical to _pykernels.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport log2

cnp.import_array()

cdef double XLOGX_FLOOR = 1e-15
cdef double DEGENERATE = 1e-12


cdef inline double _xl(double x) noexcept nogil:
    if x <= XLOGX_FLOOR:
        return 0.0
    return x * log2(x)


cdef inline double _mi(double a, double b, double c, double d, double q1, double hq,
                       double k1, double k2, double d1, double d2) noexcept nogil:
    cdef double t1 = d1 * k1 + d2 * (1.0 - k1)
    cdef double t2 = d1 * k2 + d2 * (1.0 - k2)
    cdef double t3 = d1 * (1.0 - k2) + d2 * k2
    cdef double t4 = d1 * (1.0 - k1) + d2 * k1
    cdef double p1 = a * t1 + c * t3
    cdef double p2 = b * t2 + d * t4
    cdef double s = p1 + p2
    cdef double v
    if q1 <= DEGENERATE or q1 >= 1.0 - DEGENERATE:
        return 0.0
    v = hq - _xl(s) - _xl(1.0 - s) + _xl(p1) + _xl(p2) + _xl(q1 - p1) + _xl(1.0 - q1 - p2)
    return v if v > 0.0 else 0.0


cdef inline double _dist(double a, double b, double c, double d,
                         double k1, double k2, double e1, double e2) noexcept nogil:
    cdef double n1 = e1 * k1 + e2 * (1.0 - k1)
    cdef double n2 = e1 * k2 + e2 * (1.0 - k2)
    cdef double n3 = e1 * (1.0 - k2) + e2 * k2
    cdef double n4 = e1 * (1.0 - k1) + e2 * k1
    return a * (1.0 - n1) + b * (1.0 - n2) + c * n3 + d * n4


def mutual_info_grid(prior, const double[:, ::1] kap, const double[:, ::1] dy):
    cdef double a = prior[0], b = prior[1], c = prior[2], d = prior[3]
    cdef double q1 = a + c
    cdef double hq = -_xl(q1) - _xl(1.0 - q1)
    cdef Py_ssize_t n = kap.shape[0], m = dy.shape[0], i, j
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            for j in range(m):
                o[i, j] = _mi(a, b, c, d, q1, hq, kap[i, 0], kap[i, 1], dy[j, 0], dy[j, 1])
    return out


def distortion_grid(prior, const double[:, ::1] kap, const double[:, ::1] dx):
    cdef double a = prior[0], b = prior[1], c = prior[2], d = prior[3]
    cdef Py_ssize_t n = kap.shape[0], m = dx.shape[0], i, j
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            for j in range(m):
                o[i, j] = _dist(a, b, c, d, kap[i, 0], kap[i, 1], dx[j, 0], dx[j, 1])
    return out


def encoder_payoffs(prior, double rho, const double[:, ::1] dec, const double[:, ::1] kap):
    """(N, K) encoder payoffs; ``dec`` rows are (delta1, delta2, eps1, eps2)."""
    cdef double a = prior[0], b = prior[1], c = prior[2], d = prior[3]
    cdef double q1 = a + c
    cdef double hq = -_xl(q1) - _xl(1.0 - q1)
    cdef Py_ssize_t n = dec.shape[0], m = kap.shape[0], i, j
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            for j in range(m):
                o[i, j] = (_mi(a, b, c, d, q1, hq, kap[j, 0], kap[j, 1], dec[i, 0], dec[i, 1])
                           + rho * _dist(a, b, c, d, kap[j, 0], kap[j, 1], dec[i, 2], dec[i, 3]))
    return out


def encoder_payoff_extrema(prior, double rho, const double[:, ::1] dec, const double[:, ::1] kap):
    """Row-wise (max, min) of encoder_payoffs without materializing it."""
    cdef double a = prior[0], b = prior[1], c = prior[2], d = prior[3]
    cdef double q1 = a + c
    cdef double hq = -_xl(q1) - _xl(1.0 - q1)
    cdef Py_ssize_t n = dec.shape[0], m = kap.shape[0], i, j
    cdef double v, hi, lo
    hi_arr = np.empty(n, dtype=np.float64)
    lo_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] ho = hi_arr
    cdef double[::1] lw = lo_arr
    with nogil:
        for i in range(n):
            hi = -1e300
            lo = 1e300
            for j in range(m):
                v = (_mi(a, b, c, d, q1, hq, kap[j, 0], kap[j, 1], dec[i, 0], dec[i, 1])
                     + rho * _dist(a, b, c, d, kap[j, 0], kap[j, 1], dec[i, 2], dec[i, 3]))
                if v > hi:
                    hi = v
                if v < lo:
                    lo = v
            ho[i] = hi
            lw[i] = lo
    return hi_arr, lo_arr
