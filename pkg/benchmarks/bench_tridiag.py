#!/usr/bin/env python3
"""Benchmark the compiled tridiagonal kernels against the numpy fallback.

The Sturm-sequence count and the pivoted shifted solve are the only
sequential inner loops in the package; everything else is vectorized.  Run:

    python benchmarks/bench_tridiag.py [--sizes 500,1000,2000,4000]
"""

import argparse
import time

import numpy as np

from pdmdirac import kernels
from pdmdirac.algebra import FamilyClass, FamilySpec, build_family
from pdmdirac.profiles import identity
from pdmdirac.spectral import discretize


def representative_operator(n):
    """Discretized sech-well family (the oracle's actual workload)."""
    gp = build_family(FamilySpec(FamilyClass.OMEGA_NEGATIVE, 0.5, 0.0,
                                 identity(), 1.0, 1.0))
    op = discretize(gp, 1.0, (-20.0, 20.0), n)
    return op.diagonal, op.off_diagonal


def time_call(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="500,1000,2000,4000")
    ap.add_argument("--count", type=int, default=2,
                    help="eigenpairs per solve")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = kernels.available_backends()
    print(f"active backend: {kernels.BACKEND}; available: {backends}")
    header = f"{'n':>6}  " + "".join(f"{name + ' [s]':>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)

    for n in sizes:
        d, e = representative_operator(n)
        times = {}
        for name in backends:
            impl = kernels.get_backend(name)
            times[name] = time_call(
                lambda: kernels.lowest_eigenpairs(d, e, args.count, impl=impl))
        row = f"{n:>6}  " + "".join(f"{times[name]:>14.4f}" for name in backends)
        if len(backends) == 2:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)

        vals = {name: kernels.lowest_eigenvalues(
            d, e, args.count, impl=kernels.get_backend(name)) for name in backends}
        if len(backends) == 2:
            gap = np.max(np.abs(vals["python"] - vals["cython"]))
            assert gap < 1e-12, f"backends disagree by {gap}"


if __name__ == "__main__":
    main()
