"""Pure-Python backend for the tridiagonal kernels.

Same algorithms as the Cython extension: LDL^T Sturm counts with a pivot
floor (Wilkinson/LAPACK style) and an LU solve with partial pivoting for the
shifted system.  The Sturm recurrence is vectorized across shift values; the
sweep over the matrix dimension is necessarily a Python loop, which is what
the compiled backend accelerates.
"""

import numpy as np

_TINY = np.finfo(float).tiny
_EPS = np.finfo(float).eps


def sturm_count_multi(d, e, lams):
    """Count eigenvalues below each shift in `lams` for tridiag(d, e)."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    lams = np.asarray(lams, dtype=float)
    n = d.size
    e2 = e * e
    pivmin = (_TINY / _EPS) * max(1.0, float(np.max(e2))) if e.size else _TINY / _EPS
    counts = np.zeros(lams.size, dtype=np.int64)
    q = d[0] - lams
    q[np.abs(q) < pivmin] = -pivmin
    counts += q < 0.0
    for i in range(1, n):
        q = d[i] - lams - e2[i - 1] / q
        q[np.abs(q) < pivmin] = -pivmin
        counts += q < 0.0
    return counts


def tridiag_solve_shifted(d, e, lam, rhs):
    """Solve (T - lam I) x = rhs by LU with partial pivoting.

    Row swaps introduce one extra superdiagonal of fill-in (c2); before its
    own elimination step a row never holds a col+2 entry, which keeps the
    update rules below exact.
    """
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = d.size
    a = d - lam          # diagonal of the working rows
    b = np.empty(n)      # first superdiagonal
    b[:-1] = e
    b[-1] = 0.0
    c2 = np.zeros(n)     # second superdiagonal created by swaps
    x = np.asarray(rhs, dtype=float).copy()
    for i in range(n - 1):
        sub = e[i]
        if abs(a[i]) >= abs(sub):
            piv = a[i] if a[i] != 0.0 else _TINY
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
            x[i], x[i + 1] = x[i + 1], x[i]
        x[i + 1] -= m * x[i]
    if a[-1] == 0.0:
        a[-1] = _TINY
    x[-1] /= a[-1]
    if n > 1:
        x[-2] = (x[-2] - b[-2] * x[-1]) / a[-2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - b[i] * x[i + 1] - c2[i] * x[i + 2]) / a[i]
    return x
