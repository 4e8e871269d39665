"""Hot numerical kernels with a compiled core and a pure-Python fallback.

The expensive inner loops of the symmetric-tridiagonal eigensolver (Sturm
sequence counts and pivoted shifted solves) are strictly sequential in the
matrix dimension, so they are implemented twice: a Cython extension
(`_tridiag_cy`, built by setup.py) and a numpy fallback (`_tridiag_py`).
The first importable backend wins; `BACKEND` records which one is active.
Both expose the same two primitives:

    sturm_count_multi(d, e, lams) -> int64[m]   # eigenvalues of T below each lam
    tridiag_solve_shifted(d, e, lam, rhs) -> float64[n]   # (T - lam I) x = rhs

The bisection and inverse-iteration drivers below are backend-agnostic.
`benchmarks/bench_tridiag.py` compares the two backends head to head.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceFailureError

try:
    from . import _tridiag_cy as _impl

    BACKEND = "cython"
except ImportError:  # extension not built; numpy fallback
    from . import _tridiag_py as _impl

    BACKEND = "python"


def available_backends():
    """Names of importable backends (compiled first when present)."""
    names = []
    try:
        from . import _tridiag_cy  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    names.append("python")
    return names


def get_backend(name: str | None = None):
    if name is None:
        return _impl
    if name == "python":
        from . import _tridiag_py

        return _tridiag_py
    if name == "cython":
        from . import _tridiag_cy

        return _tridiag_cy
    raise ValueError(f"unknown backend {name!r}")


def sturm_count(d, e, lam, *, impl=None) -> int:
    """Number of eigenvalues of tridiag(d, e) strictly below lam."""
    impl = impl or _impl
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    return int(impl.sturm_count_multi(d, e, np.array([lam], dtype=float))[0])


def lowest_eigenvalues(d, e, count, *, impl=None, max_iter=96):
    """Lowest `count` eigenvalues by bisection on Sturm sequence counts.

    Bisection is monotone and globally convergent for symmetric tridiagonal
    matrices; each iteration costs one Sturm pass batched over all targets.
    """
    impl = impl or _impl
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    n = d.size
    if not 1 <= count <= n:
        raise ValueError(f"count must be in [1, {n}]")
    radius = np.zeros(n)
    if n > 1:
        radius[:-1] += np.abs(e)
        radius[1:] += np.abs(e)
    glo = float(np.min(d - radius))
    ghi = float(np.max(d + radius))
    scale = max(abs(glo), abs(ghi), 1.0)
    lo = np.full(count, glo)
    hi = np.full(count, ghi + 16 * np.finfo(float).eps * scale)
    want = np.arange(1, count + 1)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        cnt = impl.sturm_count_multi(d, e, mid)
        above = cnt >= want
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
        if np.all(hi - lo <= 8 * np.finfo(float).eps * scale):
            break
    return 0.5 * (lo + hi)


def inverse_iteration(d, e, lam, *, impl=None, iters=4, orth=(), seed_shift=0):
    """Unit eigenvector for an isolated eigenvalue via inverse iteration.

    `orth` holds previously computed vectors of a nearby cluster to deflate
    against.  Deterministic: the start vector is fixed (no RNG).
    """
    impl = impl or _impl
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    n = d.size
    i = np.arange(n)
    v = 1.0 + 0.5 * np.sin(2.39996322972865 * (i + 1 + seed_shift))
    v /= np.linalg.norm(v)
    for _ in range(iters):
        v = impl.tridiag_solve_shifted(d, e, float(lam), v)
        for w in orth:
            v = v - np.dot(w, v) * w
        nv = np.linalg.norm(v)
        if nv == 0.0 or not np.isfinite(nv):
            raise ConvergenceFailureError("inverse iteration produced a null vector")
        v /= nv
    return v


def residual_norm(d, e, lam, v):
    """|| T v - lam v || / || v || for the tridiagonal T."""
    tv = d * v
    tv[:-1] += e * v[1:]
    tv[1:] += e * v[:-1]
    return float(np.linalg.norm(tv - lam * v) / np.linalg.norm(v))


def lowest_eigenpairs(d, e, count, *, impl=None, residual_tol=1e-8):
    """Lowest eigenpairs with verified residuals (ConvergenceFailure otherwise).

    `residual_tol` bounds ||T v - lam v|| / ||v|| absolutely; inverse
    iteration on a tridiagonal matrix normally lands near eps * ||T||.
    """
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    vals = lowest_eigenvalues(d, e, count, impl=impl)
    scale = float(np.max(np.abs(d)) + (2.0 * np.max(np.abs(e)) if e.size else 0.0))
    vecs = []
    residuals = []
    for j, lam in enumerate(vals):
        close = [vecs[i] for i in range(j) if abs(vals[i] - lam) < 1e-7 * scale]
        last = None
        for attempt in range(3):
            v = inverse_iteration(d, e, lam, impl=impl, iters=4 + 2 * attempt,
                                  orth=close, seed_shift=17 * attempt)
            r = residual_norm(d, e, lam, v)
            last = (v, r)
            if r <= residual_tol:
                break
        else:
            raise ConvergenceFailureError(
                f"eigenvector residual {last[1]:.3e} above tolerance for lam={lam}")
        vecs.append(last[0])
        residuals.append(last[1])
    return vals, np.array(vecs), np.array(residuals)
