# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled backend for the tridiagonal kernels (see _tridiag_py for the
reference implementation; the two must stay functionally identical)."""

import numpy as np

cimport cython
from libc.math cimport fabs

DEF TINY = 2.2250738585072014e-308   # smallest normal double
DEF EPS = 2.220446049250313e-16


def sturm_count_multi(double[::1] d, double[::1] e, double[::1] lams):
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t m = lams.shape[0]
    cdef Py_ssize_t i, j
    cdef double q, lam, pivmin, maxe2
    out = np.zeros(m, dtype=np.int64)
    cdef long long[::1] counts = out
    maxe2 = 1.0
    for i in range(n - 1):
        if e[i] * e[i] > maxe2:
            maxe2 = e[i] * e[i]
    pivmin = (TINY / EPS) * maxe2
    for j in range(m):
        lam = lams[j]
        q = d[0] - lam
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            counts[j] += 1
        for i in range(1, n):
            q = d[i] - lam - e[i - 1] * e[i - 1] / q
            if fabs(q) < pivmin:
                q = -pivmin
            if q < 0.0:
                counts[j] += 1
    return out


def tridiag_solve_shifted(double[::1] d, double[::1] e, double lam, double[::1] rhs):
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i
    cdef double m, sub, piv, old_b, tmp
    a_arr = np.empty(n)
    b_arr = np.empty(n)
    c2_arr = np.zeros(n)
    x_arr = np.empty(n)
    cdef double[::1] a = a_arr
    cdef double[::1] b = b_arr
    cdef double[::1] c2 = c2_arr
    cdef double[::1] x = x_arr
    for i in range(n):
        a[i] = d[i] - lam
        x[i] = rhs[i]
        b[i] = e[i] if i < n - 1 else 0.0
    for i in range(n - 1):
        sub = e[i]
        if fabs(a[i]) >= fabs(sub):
            piv = a[i] if a[i] != 0.0 else TINY
            a[i] = piv
            m = sub / piv
            a[i + 1] -= m * b[i]
        else:
            m = a[i] / sub
            a[i] = sub
            old_b = b[i]
            b[i] = a[i + 1]
            a[i + 1] = old_b - m * a[i + 1]
            if i + 1 < n - 1:
                c2[i] = b[i + 1]
                b[i + 1] = -m * b[i + 1]
            tmp = x[i]
            x[i] = x[i + 1]
            x[i + 1] = tmp
        x[i + 1] -= m * x[i]
    if a[n - 1] == 0.0:
        a[n - 1] = TINY
    x[n - 1] /= a[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - b[n - 2] * x[n - 1]) / a[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - b[i] * x[i + 1] - c2[i] * x[i + 2]) / a[i]
    return x_arr
