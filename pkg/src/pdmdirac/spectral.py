"""Independent spectral oracle for the algebraic energy levels.

The family equation is discretized in the coordinate u where the kinetic
operator is exactly -d^2/du^2 (constant-mass form): the resulting matrix is
the standard symmetric second-difference stencil plus the diagonal potential
V_s(x(u)), with Dirichlet ends.  Symmetry guarantees real eigenvalues and a
clean O(h^2) convergence theory; discretizing the x-form of the operator
directly would produce a non-symmetric stencil.

Eigenvalues come from bisection on Sturm sequence counts (globally convergent
for symmetric tridiagonal matrices) with eigenvectors by inverse iteration;
see `pdmdirac.kernels` for the compiled/fallback backends.  The oracle
validates a level only when the lowest state actually decays inside the
truncated box; otherwise it reports a formal algebraic level and falls back
to the differential-equation residual check.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .algebra import FamilyClass, GeneratorPair, ground_state
from .errors import InversionFailureError
from .potentials import (
    chi_equation_residual,
    chi_residual_scale,
    energy_level,
    vs_family,
)
from .profiles import Grid, Interval, Profile


def invert_map(u: Profile, targets: np.ndarray, x_interval: Interval,
               pad: float = 1e-9) -> np.ndarray:
    """Solve u(x) = t for each target t inside the given x-interval.

    Interpolation seed on a dense table, Newton polish, scalar brentq rescue
    for stragglers; InversionFailure when a target cannot be bracketed.
    """
    lo = x_interval.lo + (pad if x_interval.open_lo else 0.0)
    hi = x_interval.hi - (pad if x_interval.open_hi else 0.0)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        span = max(1.0, 2 * float(np.max(np.abs(targets))))
        lo = -span - 1.0 if not math.isfinite(lo) else lo
        hi = span + 1.0 if not math.isfinite(hi) else hi
    targets = np.asarray(targets, dtype=float)
    xs = np.linspace(lo, hi, 4097)
    us = u(xs)
    orient = 1.0 if us[-1] > us[0] else -1.0
    u_sorted = us if orient > 0 else us[::-1]
    x_sorted = xs if orient > 0 else xs[::-1]
    if np.min(targets) < u_sorted[0] - 1e-12 or np.max(targets) > u_sorted[-1] + 1e-12:
        raise InversionFailureError(
            f"targets outside the image [{u_sorted[0]}, {u_sorted[-1]}] of u")
    x = np.interp(targets, u_sorted, x_sorted)
    du = u.diff()
    for _ in range(6):
        x = np.clip(x - (u(x) - targets) / du(x), lo, hi)
    err = np.abs(u(x) - targets)
    tol = 1e-11 * np.maximum(1.0, np.abs(targets))
    bad = np.nonzero(err > tol)[0]
    if bad.size:
        from scipy.optimize import brentq

        for idx in bad:
            try:
                x[idx] = brentq(lambda t: u(t) - targets[idx], lo, hi, xtol=1e-14)
            except ValueError as exc:
                raise InversionFailureError(
                    f"cannot bracket x(u) for u = {targets[idx]}") from exc
    return x


@dataclass(frozen=True)
class DiscretizedOperator:
    """Symmetric second-difference operator in the u coordinate.

    Dirichlet ends by default: for decaying states the truncation error is
    exponentially small in the box size.  Neumann ends (mirror closure) are
    available for sensitivity studies.
    """

    u_nodes: np.ndarray
    x_nodes: np.ndarray
    h: float
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    u_range: tuple
    boundary: str = "dirichlet"


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray      # rows, on u_nodes, unit L2 norm
    residual_norms: np.ndarray
    op: DiscretizedOperator = field(repr=False)


def discretize(gp: GeneratorPair, s: float, u_range, n: int,
               boundary: str = "dirichlet") -> DiscretizedOperator:
    """Second-difference operator with potential V_s(x(u)) on n interior nodes."""
    if n < 100:
        raise ValueError("discretization needs n >= 100")
    if boundary not in ("dirichlet", "neumann"):
        raise ValueError("boundary must be 'dirichlet' or 'neumann'")
    u0, u1 = float(u_range[0]), float(u_range[1])
    if not u0 < u1:
        raise ValueError("empty u range")
    h = (u1 - u0) / (n + 1)
    u_nodes = u0 + h * np.arange(1, n + 1)
    x_nodes = invert_map(gp.spec.u, u_nodes, gp.domain)
    V = vs_family(gp, s)(x_nodes)
    diag = 2.0 / h ** 2 + V
    if boundary == "neumann":
        diag[0] -= 1.0 / h ** 2
        diag[-1] -= 1.0 / h ** 2
    off = np.full(n - 1, -1.0 / h ** 2)
    return DiscretizedOperator(u_nodes=u_nodes, x_nodes=x_nodes, h=h,
                               diagonal=diag, off_diagonal=off,
                               u_range=(u0, u1), boundary=boundary)


def eigen_lowest(op: DiscretizedOperator, count: int) -> EigenResult:
    """Lowest `count` eigenpairs of the discretized operator (count <= 10)."""
    if not 1 <= count <= 10:
        raise ValueError("count must be between 1 and 10")
    vals, vecs, res = kernels.lowest_eigenpairs(op.diagonal, op.off_diagonal, count)
    return EigenResult(eigenvalues=vals, eigenvectors=vecs,
                       residual_norms=res, op=op)


def default_u_range(gp: GeneratorPair, margin: float = 1e-3, span: float = 20.0):
    """[-span, span] clipped to the image of the (margin-trimmed) x-domain."""
    dom = gp.domain
    lo = dom.lo + (margin if dom.open_lo else 0.0)
    hi = dom.hi - (margin if dom.open_hi else 0.0)
    lo = max(lo, -span)
    hi = min(hi, span)
    ua, ub = gp.spec.u(lo), gp.spec.u(hi)
    ua, ub = min(ua, ub), max(ua, ub)
    return (max(ua, -span), min(ub, span))


@dataclass(frozen=True)
class SpectralReport:
    """Outcome of the oracle cross-check for one representation label."""

    k: float
    expected: float               # -(k - 1/2)^2
    u_range: tuple
    n: int
    decay_ratio: float            # end amplitude of chi0 relative to its sup
    normalizable: bool
    verdict: str                  # "bound state" or "formal algebraic level"
    lambda0: float | None
    matched: bool | None          # |lambda0 - expected| <= tol, when bound
    residual_fallback: float | None   # relative chi-equation residual, when formal
    delta_sensitivity: float | None   # omega>0 singular-edge sensitivity
    elapsed: float

    @property
    def passed(self) -> bool:
        return bool(self.matched) if self.normalizable else \
            self.residual_fallback is not None and self.residual_fallback <= 1e-6


def verify_algebraic_spectrum(gp: GeneratorPair, k: float, u_range=None,
                              n: int = 2001, tol: float = 2e-3,
                              decay_threshold: float = 1e-3,
                              delta: float = 0.5) -> SpectralReport:
    """Compare the discretized ground level against -(k - 1/2)^2.

    When chi0 does not decay inside the truncated box the report downgrades
    to "formal algebraic level" and checks the differential equation residual
    instead of the eigenvalue.  For the omega > 0 family the box is kept a
    distance `delta` away from the singular edge u = c and the report carries
    the sensitivity of the level to halving delta (no assertion is made).
    """
    t0 = time.monotonic()
    if u_range is None:
        u_range = default_u_range(gp)
    u0, u1 = float(u_range[0]), float(u_range[1])
    sens = None
    singular = (gp.spec is not None
                and gp.spec.family_class is FamilyClass.OMEGA_POSITIVE)
    if singular:
        # generators blow up at u = c: keep the box a distance delta away
        c = gp.spec.c
        if u0 < c < u1:
            raise ValueError("u range straddles the singular edge u = c")
        if u0 >= c:
            u0 = max(u0, c + delta)
        else:
            u1 = min(u1, c - delta)

    op = discretize(gp, k, (u0, u1), n)
    anchor = float(np.median(op.x_nodes))
    chi0 = ground_state(gp, k, anchor=anchor).chi
    chi_vals = chi0(op.x_nodes)
    sup = float(np.max(np.abs(chi_vals)))
    decay_ratio = float(max(abs(chi_vals[0]), abs(chi_vals[-1])) / sup)
    normalizable = decay_ratio <= decay_threshold

    lam0 = matched = fallback = None
    if normalizable:
        res = eigen_lowest(op, 1)
        lam0 = float(res.eigenvalues[0])
        matched = abs(lam0 - energy_level(k)) <= tol
        verdict = "bound state"
        if singular:
            c = gp.spec.c
            rng = (c + delta / 2.0, u1) if u0 >= c else (u0, c - delta / 2.0)
            lam_half = float(eigen_lowest(discretize(gp, k, rng, n), 1).eigenvalues[0])
            sens = abs(lam_half - lam0)
    else:
        verdict = "formal algebraic level - not an L2 bound state"
        xs = op.x_nodes
        g = _grid_from_nodes(xs)
        from .algebra import LadderState

        st = LadderState(chi=chi0, k=k, s=k)
        V = vs_family(gp, k)
        r = chi_equation_residual(gp.mass, V, st, k, g)
        fallback = float(r.sup_norm() / chi_residual_scale(gp.mass, V, st, g))
    return SpectralReport(k=k, expected=energy_level(k), u_range=(u0, u1), n=n,
                          decay_ratio=decay_ratio, normalizable=normalizable,
                          verdict=verdict, lambda0=lam0, matched=matched,
                          residual_fallback=fallback, delta_sensitivity=sens,
                          elapsed=time.monotonic() - t0)


def _grid_from_nodes(xs: np.ndarray) -> Grid:
    lo, hi = float(np.min(xs)), float(np.max(xs))
    return Grid(Interval(lo, hi), max(16, min(xs.size, 4001)))


def eigenvector_vs_chain(res: EigenResult, gp: GeneratorPair, k: float) -> float:
    """Sup deviation between the numeric ground vector and chi0(x(u)).

    Both sides are sup-normalized and sign-aligned; compared on the interior
    half of the box, where truncation effects are negligible.
    """
    chi0 = ground_state(gp, k, anchor=float(np.median(res.op.x_nodes))).chi
    ref = chi0(res.op.x_nodes)
    vec = res.eigenvectors[0]
    n = vec.size
    sl = slice(n // 4, 3 * n // 4)
    ref = ref / np.max(np.abs(ref[sl]))
    v = vec / np.max(np.abs(vec[sl]))
    if np.dot(v[sl], ref[sl]) < 0:
        v = -v
    return float(np.max(np.abs(v[sl] - ref[sl])))
