# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sqrt, sin, cos, fabs, M_PI, INFINITY

cnp.import_array()

cdef double[9] _LANCZOS = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]
cdef double _G = 7.0
cdef double _LOG_SQRT_2PI = 0.91893853320467274178
cdef double _J0_SERIES_MAX = 12.0
cdef int _J0_SERIES_TERMS = 64
cdef int _J0_ASYMPTOTIC_TERMS = 40


cdef inline double _lgamma_ge_half(double x) nogil:
    cdef double xm = x - 1.0
    cdef double acc = _LANCZOS[0]
    cdef int i
    for i in range(1, 9):
        acc += _LANCZOS[i] / (xm + i)
    cdef double t = xm + _G + 0.5
    return _LOG_SQRT_2PI + (xm + 0.5) * log(t) - t + log(acc)


cdef inline double _lgamma(double x) nogil:
    if x < 0.5:
        return log(M_PI) - log(sin(M_PI * x)) - _lgamma_ge_half(1.0 - x)
    return _lgamma_ge_half(x)


cdef double _gamma(double x) nogil:
    cdef double xb, acc, t
    cdef int i
    if x < 0.5:
        return M_PI / (sin(M_PI * x) * _gamma(1.0 - x))
    xb = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (xb + i)
    t = xb + _G + 0.5
    return sqrt(2.0 * M_PI) * exp((xb + 0.5) * log(t) - t) * acc


cdef double _j0(double z) nogil:
    cdef double q, term, acc, inv8z, p, qq, mag, last, chi, sign
    cdef int k, m
    z = fabs(z)
    if z <= _J0_SERIES_MAX:
        q = -0.25 * z * z
        term = 1.0
        acc = 1.0
        for k in range(1, _J0_SERIES_TERMS):
            term = term * q / (k * k)
            acc += term
        return acc
    inv8z = 1.0 / (8.0 * z)
    p = 1.0
    qq = 0.0
    term = 1.0
    last = INFINITY
    for m in range(1, _J0_ASYMPTOTIC_TERMS):
        term = term * ((2 * m - 1) * (2 * m - 1)) * inv8z / m
        mag = fabs(term)
        if not (mag < last):
            break
        last = mag
        if m % 2 == 0:
            sign = 1.0 if (m // 2) % 2 == 0 else -1.0
            p += sign * term
        else:
            sign = -1.0 if ((m - 1) // 2) % 2 == 0 else 1.0
            qq += sign * term
    chi = z - 0.25 * M_PI
    return sqrt(2.0 / (M_PI * z)) * (p * cos(chi) - qq * sin(chi))


def gamma(x):
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(x, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(xa)
    cdef Py_ssize_t i, n = xa.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _gamma(xa[i])
    return out.reshape(np.shape(x))


def log_gamma(x):
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(x, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(xa)
    cdef Py_ssize_t i, n = xa.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _lgamma(xa[i])
    return out.reshape(np.shape(x))


def j0(z):
    cdef cnp.ndarray[double, ndim=1] za = np.ascontiguousarray(z, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(za)
    cdef Py_ssize_t i, n = za.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _j0(za[i])
    return out.reshape(np.shape(z))


def quad_moments(t, h):
    cdef cnp.ndarray[double, ndim=1] ta = np.ascontiguousarray(t, dtype=float)
    cdef cnp.ndarray[double, ndim=1] ha = np.ascontiguousarray(h, dtype=float)
    cdef Py_ssize_t n = ta.shape[0]
    cdef Py_ssize_t i, j
    cdef double dt = (ta[n - 1] - ta[0]) / (n - 1)
    cdef double a, f0, f1, f2, d1, d2, c0, c1, c2, s, m0, m1, m2
    cdef double accA = 0.0, accB = 0.0
    cdef cnp.ndarray[double, ndim=1] A = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] B = np.empty(n)
    A[0] = 0.0
    B[0] = 0.0
    with nogil:
        for i in range(n - 1):
            if i == 0:
                j = 0
                a = 0.0
            else:
                j = i - 1
                a = -1.0
            f0 = ha[j]
            f1 = ha[j + 1]
            f2 = ha[j + 2]
            d1 = f1 - f0
            d2 = 0.5 * (f2 - 2.0 * f1 + f0)
            c0 = f0 - d1 * a + d2 * a * (a + 1.0)
            c1 = d1 - d2 * (2.0 * a + 1.0)
            c2 = d2
            s = ta[i]
            m0 = c0 + c1 / 2.0 + c2 / 3.0
            m1 = c0 / 2.0 + c1 / 3.0 + c2 / 4.0
            m2 = c0 / 3.0 + c1 / 4.0 + c2 / 5.0
            accA += dt * (s * m0 + dt * m1)
            accB += dt * (s * s * m0 + 2.0 * s * dt * m1 + dt * dt * m2)
            A[i + 1] = accA
            B[i + 1] = accB
    return A, B
