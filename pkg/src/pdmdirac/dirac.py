"""(1+1)-dimensional Dirac problem with position-dependent mass and local
Fermi velocity, coupled to a pseudoscalar potential.

The Hamiltonian acts on two-component spinors (psi_+, psi_-):

    H = [[ m v_f^2,            -i sqrt(v_f) d sqrt(v_f) - i W ],
         [ -i sqrt(v_f) d sqrt(v_f) + i W,          -m v_f^2 ]]

with the symmetrized kinetic operator sqrt(v_f) p sqrt(v_f) acting as
psi -> v_f psi' + v_f' psi / 2.  Under the constancy condition
m(x) v_f(x)^2 = A the upper component decouples into

    [-d v_f^2 d + (W^2 - v_f'^2/4 - v_f v_f''/2 + v_f W')] psi_+
        = (E^2 - A^2) psi_+,

whose potential part is the flat-measure algebra equation in disguise; the
algebraic spectrum is E^2 = A^2 - (k - 1/2)^2, real when A^2 >= (k-1/2)^2.
Spinor components are genuinely complex: a real psi_+ forces a purely
imaginary psi_-, and no basis rotation is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import GeneratorPair, LadderState
from .errors import ComplexEnergyError, SingularDenominatorError
from .potentials import mass_quarter_power, pseudoscalar_partner
from .profiles import (
    Antiderivative,
    FromSamples,
    Grid,
    Profile,
    SampledField,
    compose,
    constant,
    derivative_profile,
    exp,
    power,
)


# ---------------------------------------------------------------------------
# complex-valued fields built from two real profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexProfile:
    """Complex scalar field carried as (real part, imaginary part) profiles."""

    re: Profile
    im: Profile

    @classmethod
    def from_real(cls, p: Profile) -> "ComplexProfile":
        return cls(re=p, im=constant(0.0))

    def __call__(self, x):
        return self.re(x) + 1j * self.im(x)

    def derivative(self, x, order: int = 1):
        return self.re.derivative(x, order) + 1j * self.im.derivative(x, order)

    def times_i(self) -> "ComplexProfile":
        return ComplexProfile(re=-self.im, im=self.re)

    def scale(self, z: complex) -> "ComplexProfile":
        a, b = float(np.real(z)), float(np.imag(z))
        return ComplexProfile(re=a * self.re - b * self.im,
                              im=b * self.re + a * self.im)

    def mul_profile(self, p: Profile) -> "ComplexProfile":
        return ComplexProfile(re=p * self.re, im=p * self.im)

    def diff(self) -> "ComplexProfile":
        return ComplexProfile(re=derivative_profile(self.re),
                              im=derivative_profile(self.im))

    def __add__(self, other: "ComplexProfile") -> "ComplexProfile":
        return ComplexProfile(re=self.re + other.re, im=self.im + other.im)

    def __sub__(self, other: "ComplexProfile") -> "ComplexProfile":
        return ComplexProfile(re=self.re - other.re, im=self.im - other.im)

    def sample(self, g: Grid) -> SampledField:
        return SampledField(g, self(g.nodes))


def _as_complex(f) -> ComplexProfile:
    if isinstance(f, ComplexProfile):
        return f
    if isinstance(f, Profile):
        return ComplexProfile.from_real(f)
    if isinstance(f, SampledField):
        v = np.asarray(f.values)
        if np.iscomplexobj(v):
            return ComplexProfile(re=FromSamples(SampledField(f.grid, v.real)),
                                  im=FromSamples(SampledField(f.grid, v.imag)))
        return ComplexProfile.from_real(FromSamples(f))
    raise TypeError(f"cannot interpret {type(f).__name__} as a complex field")


# ---------------------------------------------------------------------------
# model and spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiracModel:
    """Velocity, mass and pseudoscalar profiles with the constancy constant A.

    The electrostatic term of the general Hamiltonian is carried as an
    always-zero placeholder so the operator keeps its full 2x2 shape, but a
    nonzero profile is rejected: the solvable structure here rests on the
    pseudoscalar coupling alone.
    """

    v_f: Profile
    m: Profile
    W: Profile
    A: float
    k: float = 0.5
    electrostatic: Profile = None

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError("A must be positive")
        if self.electrostatic is None:
            object.__setattr__(self, "electrostatic", constant(0.0))
        else:
            lo = max(self.v_f.domain.lo, -8.0)
            hi = min(self.v_f.domain.hi, 8.0)
            span = hi - lo
            probe = np.linspace(lo + 1e-3 * span, hi - 1e-3 * span, 17)
            if np.any(self.electrostatic(probe) != 0.0):
                raise ValueError("only a vanishing electrostatic potential is supported")

    def d_plus(self) -> Profile:
        """E-independent part of D_+ is m v_f^2; the E shift is added per use."""
        return self.m * self.v_f * self.v_f

    def constancy_defect(self, g: Grid) -> float:
        return float(np.max(np.abs(self.d_plus()(g.nodes) - self.A)))


@dataclass(frozen=True)
class SpectrumEntry:
    k: float
    E_squared: float
    E: float | None
    real_flag: bool


def spectrum(A: float, k_values) -> list[SpectrumEntry]:
    """Algebraic spectrum E^2 = A^2 - (k - 1/2)^2 with the reality criterion."""
    out = []
    for k in k_values:
        e2 = A * A - (k - 0.5) ** 2
        real = e2 >= 0.0
        out.append(SpectrumEntry(k=float(k), E_squared=float(e2),
                                 E=math.sqrt(e2) if real else None,
                                 real_flag=bool(real)))
    return out


def mustafa_mass(v_f: Profile, A: float) -> Profile:
    """Mass profile m = A / v_f^2 enforcing m v_f^2 = A."""
    if A <= 0:
        raise ValueError("A must be positive")
    return constant(A) / (v_f * v_f)


def fermi_from_mass(M: Profile) -> Profile:
    """Velocity profile v_f = 1/sqrt(M) (positive root; sign lives in sigma)."""
    return power(M, -0.5)


# ---------------------------------------------------------------------------
# kinetic helper and residuals
# ---------------------------------------------------------------------------

def _sym_kinetic(f: ComplexProfile, v_f: Profile) -> ComplexProfile:
    """sqrt(v_f) (sqrt(v_f) f)' = v_f f' + v_f' f / 2."""
    return f.diff().mul_profile(v_f) + f.mul_profile(0.5 * v_f.diff())


def lower_from_upper(psi_plus, W: Profile, v_f: Profile, E: float,
                     A: float) -> ComplexProfile:
    """psi_- = [-i sqrt(v_f)(sqrt(v_f) psi_+)' + i W psi_+] / (E + A)."""
    if abs(E + A) < 1e-12:
        raise SingularDenominatorError("E + A vanishes; psi_- undefined")
    f = _as_complex(psi_plus)
    num = (f.mul_profile(W) - _sym_kinetic(f, v_f)).times_i()
    return num.scale(1.0 / (E + A))


@dataclass(frozen=True)
class Spinor:
    """Two complex component fields sharing an energy E."""

    psi_plus: ComplexProfile
    psi_minus: ComplexProfile
    E: float
    residual_r1: float | None = None
    residual_r2: float | None = None

    def sample(self, g: Grid):
        return self.psi_plus.sample(g), self.psi_minus.sample(g)


def coupled_residuals(sp: Spinor, model: DiracModel, g: Grid):
    """Pointwise defects of the two first-order coupled equations.

    r1 = (-i sqrt(v) d sqrt(v) - i W) psi_-  -  (E - m v^2) psi_+
    r2 = (-i sqrt(v) d sqrt(v) + i W) psi_+  -  (E + m v^2) psi_-
    """
    x = g.nodes
    mv2 = model.d_plus()(x)
    dms = sp.E - mv2
    dpl = sp.E + mv2
    pp, pm = sp.psi_plus, sp.psi_minus
    lhs1 = -1j * (_sym_kinetic(pm, model.v_f)(x) + model.W(x) * pm(x))
    r1 = lhs1 - dms * pp(x)
    lhs2 = -1j * (_sym_kinetic(pp, model.v_f)(x) - model.W(x) * pp(x))
    r2 = lhs2 - dpl * pm(x)
    return SampledField(g, r1), SampledField(g, r2)


def coupled_scale(sp: Spinor, model: DiracModel, g: Grid) -> np.ndarray:
    """Pointwise magnitude of the largest term in the coupled equations."""
    x = g.nodes
    mv2 = model.d_plus()(x)
    pp, pm = sp.psi_plus, sp.psi_minus
    terms = [np.abs(_sym_kinetic(pm, model.v_f)(x)), np.abs(model.W(x) * pm(x)),
             np.abs((sp.E - mv2) * pp(x)), np.abs(_sym_kinetic(pp, model.v_f)(x)),
             np.abs(model.W(x) * pp(x)), np.abs((sp.E + mv2) * pm(x))]
    return np.maximum.reduce(terms) + 1e-300


def decoupled_residual(psi_plus, model: DiracModel, E: float, g: Grid) -> SampledField:
    """Defect of the full second-order upper-component equation.

    All five terms are kept with a position-dependent D_+ = E + m v^2 (no
    constancy assumed):

    -(v^2/D+) psi'' - (v^2/D+)' psi'
      + [ (W^2 - v'^2/4 - v v''/2)/D+ + v (W/D+)' - (v v'/2)(1/D+)' ] psi
      = (E - m v^2) psi.
    """
    x = g.nodes
    f = _as_complex(psi_plus)
    v = model.v_f(x)
    v1 = model.v_f.derivative(x, 1)
    v2d = model.v_f.derivative(x, 2)
    W = model.W(x)
    W1 = model.W.derivative(x, 1)
    mv2 = model.d_plus()(x)
    mv2p = model.d_plus().derivative(x, 1)
    dp = E + mv2
    if np.min(np.abs(dp)) < 1e-12:
        raise SingularDenominatorError("E + m v_f^2 vanishes on the grid")
    dm = E - mv2
    inv = 1.0 / dp
    inv1 = -mv2p * inv * inv          # (1/D+)'
    frac = v * v * inv                # v^2 / D+
    frac1 = 2.0 * v * v1 * inv + v * v * inv1
    pot = ((W * W - 0.25 * v1 * v1 - 0.5 * v * v2d) * inv
           + v * (W1 * inv + W * inv1)
           - 0.5 * v * v1 * inv1)
    res = (-frac * f.derivative(x, 2) - frac1 * f.derivative(x, 1)
           + pot * f(x) - dm * f(x))
    return SampledField(g, res)


def reduced_residual(psi_plus, W: Profile, v_f: Profile, A: float, E: float,
                     g: Grid) -> SampledField:
    """Defect of the constancy-reduced equation

    [-d v_f^2 d + (W^2 - v_f'^2/4 - v_f v_f''/2 + v_f W')] psi = (E^2 - A^2) psi.
    """
    x = g.nodes
    f = _as_complex(psi_plus)
    v = v_f(x)
    v1 = v_f.derivative(x, 1)
    v2d = v_f.derivative(x, 2)
    pot = W(x) ** 2 - 0.25 * v1 * v1 - 0.5 * v * v2d + v * W.derivative(x, 1)
    res = (-v * v * f.derivative(x, 2) - 2.0 * v * v1 * f.derivative(x, 1)
           + pot * f(x) - (E * E - A * A) * f(x))
    return SampledField(g, res)


def reduced_scale(psi_plus, W: Profile, v_f: Profile, A: float, E: float,
                  g: Grid) -> np.ndarray:
    """Pointwise magnitude of the largest term of the reduced equation."""
    x = g.nodes
    f = _as_complex(psi_plus)
    v = v_f(x)
    v1 = v_f.derivative(x, 1)
    v2d = v_f.derivative(x, 2)
    pot = W(x) ** 2 - 0.25 * v1 * v1 - 0.5 * v * v2d + v * W.derivative(x, 1)
    terms = [np.abs(v * v * f.derivative(x, 2)),
             np.abs(2.0 * v * v1 * f.derivative(x, 1)),
             np.abs(pot * f(x)), np.abs((E * E - A * A) * f(x)), np.abs(f(x))]
    return np.maximum.reduce(terms) + 1e-300


def build_eigen_spinor(st: LadderState, gp: GeneratorPair, A: float,
                       sign: int, g: Grid, W: Profile | None = None) -> Spinor:
    """Full spinor for an algebra state: psi_+ = M^(1/4) chi, E = sign*sqrt(E^2).

    Raises ComplexEnergy when the reality criterion A^2 >= (k - 1/2)^2 fails.
    The coupled-equation residual sup-norms over the grid are attached.  The
    default pseudoscalar is the closed-form partner, which is consistent only
    at k = 1/2; pass a Riccati-solved W explicitly for other labels.
    """
    e2 = A * A - (st.k - 0.5) ** 2
    if e2 < 0:
        raise ComplexEnergyError(
            f"A^2 = {A * A} < (k - 1/2)^2 = {(st.k - 0.5) ** 2}")
    E = sign * math.sqrt(e2)
    M = gp.mass
    v_f = fermi_from_mass(M)
    if W is None:
        W = pseudoscalar_partner(gp)
    if abs(E + A) > 1e-12 * max(1.0, A):
        psi_plus = ComplexProfile.from_real(mass_quarter_power(M) * st.chi)
        psi_minus = lower_from_upper(psi_plus, W, v_f, E, A)
    else:
        # E = -A branch (k = 1/2 only): D_+ vanishes identically, so the
        # upper component must solve its first-order equation homogeneously.
        # The eigenspinor is (0, i M^(1/4) e^{-int sigma G}), the W -> -W
        # partner of the positive branch.
        anchor = 0.5 * (g.lo + g.hi)
        partner = compose(exp(), Antiderivative(-(gp.signed_root * gp.G), anchor))
        psi_plus = ComplexProfile.from_real(constant(0.0))
        psi_minus = ComplexProfile(re=constant(0.0),
                                   im=mass_quarter_power(M) * partner)
    model = DiracModel(v_f=v_f, m=mustafa_mass(v_f, A), W=W, A=A, k=st.k)
    sp = Spinor(psi_plus=psi_plus, psi_minus=psi_minus, E=E)
    r1f, r2f = coupled_residuals(sp, model, g)
    scale = coupled_scale(sp, model, g)
    r1 = float(np.max(np.abs(r1f.values) / scale))
    r2 = float(np.max(np.abs(r2f.values) / scale))
    return Spinor(psi_plus=psi_plus, psi_minus=psi_minus, E=E,
                  residual_r1=r1, residual_r2=r2)


def apply_hamiltonian(model: DiracModel, plus, minus):
    """H acting on a spinor of complex fields; returns (H psi)_+ and (H psi)_-."""
    pp = _as_complex(plus)
    pm = _as_complex(minus)
    mv2 = model.d_plus()
    # (H psi)_+ = (m v^2 + V) psi_+ + (-i sqrt(v) d sqrt(v) - i W) psi_-
    out_plus = (pp.mul_profile(mv2) + pp.mul_profile(model.electrostatic)
                - (_sym_kinetic(pm, model.v_f) + pm.mul_profile(model.W)).times_i())
    # (H psi)_- = (-i sqrt(v) d sqrt(v) + i W) psi_+ + (V - m v^2) psi_-
    out_minus = (pm.mul_profile(mv2).scale(-1.0) + pm.mul_profile(model.electrostatic)
                 - (_sym_kinetic(pp, model.v_f) - pp.mul_profile(model.W)).times_i())
    return out_plus, out_minus
