"""Potential assembly and residuals of the governing identities.

Covers three layers:

* the ordered-kinetic-operator effective potential with ambiguity parameters
  (eta, beta, gamma), eta + beta + gamma = -1, including the named orderings
  BenDaniel-Duke, Zhu-Kroemer and Mustafa-Mazharimousavi;
* the one-parameter algebra family V_s = (1/sigma)[(1/4 - s^2) F' + 2 s G'] + G^2
  sharing the energy eps_k = -(k - 1/2)^2;
* the pseudoscalar link in Riccati form W^2 + v_f W' = V_s, which pins the
  representation label to k = 1/2, plus the curvature identity tying the
  mass profile to the velocity profile v_f = 1/sqrt(M).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GeneratorPair, LadderState, map_orientation
from .errors import LinkViolationError, OrderingViolationError
from .profiles import Grid, Profile, SampledField, constant, power


@dataclass(frozen=True)
class OrderingParams:
    """von Roos ambiguity parameters; Hermiticity demands eta+beta+gamma = -1."""

    eta: float
    beta: float
    gamma: float

    def __post_init__(self):
        if abs(self.eta + self.beta + self.gamma + 1.0) > 1e-12:
            raise OrderingViolationError(
                "ambiguity parameters must satisfy eta + beta + gamma = -1")


ORDERING_PRESETS = {
    "bendaniel_duke": OrderingParams(0.0, -1.0, 0.0),
    "zhu_kroemer": OrderingParams(-0.5, 0.0, -0.5),
    "mustafa_mazharimousavi": OrderingParams(-0.25, -0.5, -0.25),
}


def energy_level(k: float) -> float:
    """Common eigenvalue eps_k = -(k - 1/2)^2 of the family."""
    return -((k - 0.5) ** 2)


def veff(M: Profile, V: Profile, ord: OrderingParams) -> Profile:
    """Effective potential of the ordered kinetic operator.

    V_eff = V + (beta+1)/2 * M''/M^2 - [eta(eta+beta+1) + beta+1] * M'^2/M^3.
    For BenDaniel-Duke both correction coefficients vanish identically.
    """
    c1 = 0.5 * (ord.beta + 1.0)
    c2 = ord.eta * (ord.eta + ord.beta + 1.0) + ord.beta + 1.0
    Mp = M.diff()
    Mpp = Mp.diff()
    out = V
    if c1 != 0.0:
        out = out + c1 * (Mpp / (M * M))
    if c2 != 0.0:
        out = out - c2 * ((Mp * Mp) / (M * M * M))
    return out


def vs_family(gp: GeneratorPair, s: float) -> Profile:
    """Algebra potential V_s = (1/sigma)[(1/4 - s^2) F' + 2 s G'] + G^2."""
    term = constant(0.0)
    c = 0.25 - s * s
    if c != 0.0:
        term = term + c * gp.F.diff()
    if s != 0.0:
        term = term + (2.0 * s) * gp.G.diff()
    return term / gp.signed_root + gp.G * gp.G


def pseudoscalar_partner(gp: GeneratorPair) -> Profile:
    """The pseudoscalar potential paired with V_{s=1/2}: W = sign(u') G.

    Satisfies W^2 + v_f W' = V_{1/2} identically (v_f = 1/|sigma|); for any
    other label the pairing fails, which is exactly the k = 1/2 restriction.
    """
    return map_orientation(gp.spec.u) * gp.G if gp.spec is not None else gp.G


def chi_equation_residual(M: Profile, V_s: Profile, st: LadderState, k: float,
                          g: Grid) -> SampledField:
    """Defect of [-(1/sqrt M) d (1/sqrt M) d + V_s] chi = eps_k chi on the grid."""
    x = g.nodes
    chi = st.chi
    cv = chi(x)
    c1 = chi.derivative(x, 1)
    c2 = chi.derivative(x, 2)
    Mv = M(x)
    Mp = M.derivative(x, 1)
    res = -c2 / Mv + 0.5 * Mp / (Mv * Mv) * c1 + V_s(x) * cv - energy_level(k) * cv
    return SampledField(g, res)


def chi_residual_scale(M: Profile, V_s: Profile, st: LadderState, g: Grid) -> float:
    """Problem-scale denominator max(||V_s chi||, ||chi''/M||, 1e-30)."""
    x = g.nodes
    v = np.max(np.abs(V_s(x) * st.chi(x)))
    kin = np.max(np.abs(st.chi.derivative(x, 2) / M(x)))
    return max(v, kin, 1e-30)


def psi_equation_residual(M: Profile, V_s: Profile, psi, k: float,
                          g: Grid) -> SampledField:
    """Defect of the equivalent flat-measure form on psi = M^(1/4) chi.

    [-d (1/M) d + M''/(4M^2) - 7 M'^2/(16 M^3) + V_s] psi = eps_k psi.
    """
    x = g.nodes
    if isinstance(psi, SampledField):
        from .profiles import FromSamples

        psi = FromSamples(psi)
    pv = psi(x)
    p1 = psi.derivative(x, 1)
    p2 = psi.derivative(x, 2)
    Mv = M(x)
    Mp = M.derivative(x, 1)
    Mpp = M.derivative(x, 2)
    curv = Mpp / (4.0 * Mv * Mv) - 7.0 * Mp * Mp / (16.0 * Mv ** 3)
    res = (-p2 / Mv + Mp / (Mv * Mv) * p1
           + (curv + V_s(x) - energy_level(k)) * pv)
    return SampledField(g, res)


def mass_quarter_power(M: Profile) -> Profile:
    """M^(1/4), the chi -> psi conversion factor."""
    return power(M, 0.25)


def curvature_identity_residual(M: Profile, v_f: Profile, g: Grid) -> SampledField:
    """Defect of M''/(4M^2) - 7M'^2/(16M^3) = -v_f'^2/4 - v_f v_f''/2.

    Raises LinkViolation unless v_f^2 M = 1 on the grid (the identity only
    holds for the linked pair).
    """
    x = g.nodes
    link = np.max(np.abs(v_f(x) ** 2 * M(x) - 1.0))
    if link > 1e-8:
        raise LinkViolationError(f"v_f^2 * M deviates from 1 by {link:.3e}")
    Mv = M(x)
    Mp = M.derivative(x, 1)
    Mpp = M.derivative(x, 2)
    lhs = Mpp / (4.0 * Mv * Mv) - 7.0 * Mp * Mp / (16.0 * Mv ** 3)
    v1 = v_f.derivative(x, 1)
    v2 = v_f.derivative(x, 2)
    rhs = -0.25 * v1 * v1 - 0.5 * v_f(x) * v2
    return SampledField(g, lhs - rhs)


def riccati_residual(W: Profile, v_f: Profile, V_s: Profile, g: Grid) -> SampledField:
    """Pointwise defect of W^2 + v_f W' - V_s."""
    x = g.nodes
    res = W(x) ** 2 + v_f(x) * W.derivative(x, 1) - V_s(x)
    return SampledField(g, res)


@dataclass(frozen=True)
class RiccatiSolution:
    """Numerically integrated pseudoscalar profile; may stop early on blow-up."""

    grid: Grid
    values: np.ndarray          # NaN beyond a blow-up point
    blew_up: bool
    stop_lo: float              # leftmost / rightmost x actually reached
    stop_hi: float

    def field(self) -> SampledField:
        if self.blew_up:
            raise ValueError("solution blew up; no complete sampled field")
        return SampledField(self.grid, self.values)


def riccati_solve(V_s: Profile, v_f: Profile, x0: float, W0: float, g: Grid,
                  bound: float = 1e6, rtol: float = 1e-10,
                  atol: float = 1e-10) -> RiccatiSolution:
    """Integrate W' = (V_s - W^2)/v_f outward from (x0, W0) over the grid.

    Uses an adaptive Dormand-Prince 4(5) stepper at local tolerance 1e-10.
    Riccati solutions can escape to infinity in finite range; crossing
    `bound` stops that direction and is reported, not raised.
    """
    from scipy.integrate import solve_ivp

    x = g.nodes
    if not (x[0] <= x0 <= x[-1]):
        raise ValueError("anchor x0 must lie inside the grid span")

    def rhs(t, y):
        return [(V_s(float(t)) - y[0] ** 2) / v_f(float(t))]

    def blowup(t, y):
        return abs(y[0]) - bound

    blowup.terminal = True

    vals = np.full(x.size, np.nan)
    exact = np.isclose(x, x0, rtol=0, atol=1e-15)
    vals[exact] = W0
    blew = False
    stop_lo, stop_hi = x0, x0
    for direction in (+1, -1):
        sel = x > x0 if direction > 0 else x < x0
        xs = x[sel]
        if direction < 0:
            xs = xs[::-1]
        if xs.size == 0:
            continue
        sol = solve_ivp(rhs, (x0, xs[-1]), [W0], t_eval=xs, rtol=rtol, atol=atol,
                        method="RK45", events=blowup)
        reached = sol.t
        got = sol.y[0]
        idx = np.searchsorted(x, reached)
        vals[idx] = got
        if sol.status == 1:  # blow-up event
            blew = True
        if direction > 0:
            stop_hi = reached[-1] if reached.size else x0
        else:
            stop_lo = reached[-1] if reached.size else x0
    return RiccatiSolution(grid=g, values=vals, blew_up=blew,
                           stop_lo=float(stop_lo), stop_hi=float(stop_hi))
