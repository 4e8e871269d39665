"""so(2,1) generator families, ladder operators, Casimir, and state chains.

Three families of generator functions (F, G) solve the coupled constraints

    F' = sigma (1 - F^2),        G' = -sigma F G,

where sigma(x) = u'(x) is the *signed* root of the mass function M = sigma^2
and u is the change of variable that maps the kinetic term to constant-mass
form.  The sign discriminant omega = (F^2 - 1)/G^2 selects the family:

    omega = -1/b^2 < 0 :  F = tanh(u - c),  G ~ b sech(u - c)
    omega = 0          :  F = +/-1,         G ~ b exp(-/+(u - c))
    omega = +1/b^2 > 0 :  F = coth(u - c),  G ~ b csch(u - c)

G carries an extra factor sign(u') so that b is always the coupling of the
pseudoscalar partner potential W = sign(u') G; for increasing maps this is
the identity.  Decreasing maps (arccoth branches) flip G, which is the unique
orientation making the constraints, the lowest-state condition and the
Riccati pairing hold simultaneously.

Basis states chi_{k,s} carry a representation label k and a ladder label
s = k, k+1, ...; the x-part of the ladder action is

    (J_pm chi)(x) = +/-(1/sigma) chi' - (s +/- 1/2) F chi + G chi,  s -> s +/- 1,

and the Casimir J^2 = J0^2 -/+ J0 - J_pm J_mp has eigenvalue k(k-1).  The
lowest state chi_{k,k} = G^(k-1/2) exp(int sigma G dx) is annihilated by J_-.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateMapError,
    DivisionByZeroError,
    InvalidParamError,
    NonPositiveGError,
)
from .profiles import (
    Antiderivative,
    FromSamples,
    Grid,
    Interval,
    Profile,
    SampledField,
    compose,
    constant,
    coth,
    csch,
    derivative_profile,
    exp,
    power,
    sech,
    tanh,
)


class FamilyClass(enum.Enum):
    OMEGA_NEGATIVE = "omega_negative"
    OMEGA_ZERO_PLUS = "omega_zero_plus"    # F = +1, G ~ b exp(-(u - c))
    OMEGA_ZERO_MINUS = "omega_zero_minus"  # F = -1, G ~ b exp(+(u - c))
    OMEGA_POSITIVE = "omega_positive"

    @property
    def needs_b(self) -> bool:
        return self in (FamilyClass.OMEGA_NEGATIVE, FamilyClass.OMEGA_POSITIVE)


def _probe_points(domain: Interval, n: int = 257) -> np.ndarray:
    lo = max(domain.lo, -8.0)
    hi = min(domain.hi, 8.0)
    span = hi - lo
    pad = 1e-3 * span
    return np.linspace(lo + (pad if domain.open_lo or lo != domain.lo else 0.0),
                       hi - (pad if domain.open_hi or hi != domain.hi else 0.0), n)


def map_orientation(u: Profile) -> float:
    """+1 for increasing u, -1 for decreasing; DegenerateMap otherwise."""
    xs = _probe_points(u.domain)
    du = u.diff()(xs)
    if np.min(np.abs(du)) < 1e-12:
        raise DegenerateMapError("|u'| < 1e-12 on the verification grid")
    signs = np.sign(du)
    if not (np.all(signs > 0) or np.all(signs < 0)):
        raise DegenerateMapError("u is not strictly monotone")
    return float(signs[0])


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of one so(2,1) family: class, coupling b, center c, PCT map u."""

    family_class: FamilyClass
    b: float
    c: float
    u: Profile
    k: float = 0.5
    s: float = 0.5

    def __post_init__(self):
        if self.family_class.needs_b and self.b == 0.0:
            raise InvalidParamError(f"b must be nonzero for {self.family_class.value}")
        if self.k < 0:
            raise InvalidParamError("representation label k must be >= 0")
        steps = self.s - self.k
        if steps < -1e-12 or abs(steps - round(steps)) > 1e-9:
            raise InvalidParamError("s - k must be a non-negative integer")
        map_orientation(self.u)  # validates monotonicity


@dataclass(frozen=True)
class GeneratorPair:
    """F, G and the signed root u' of the mass function M = (u')^2."""

    F: Profile
    G: Profile
    signed_root: Profile
    spec: FamilySpec = field(repr=False, default=None)

    @property
    def domain(self) -> Interval:
        return self.F.domain.intersect(self.G.domain)

    @property
    def mass(self) -> Profile:
        return self.signed_root * self.signed_root


def pct_mass(u: Profile, c: float = 0.0):
    """Signed root sigma = u' and mass M = sigma^2 of the coordinate map u.

    The center c does not enter (it differentiates away); the argument is
    kept so call sites document which family member they mean.
    """
    sigma = u.diff()
    xs = _probe_points(u.domain)
    if np.min(np.abs(sigma(xs))) < 1e-12:
        raise DegenerateMapError("|u'| < 1e-12 on the verification grid")
    return sigma * sigma, sigma


def build_family(spec: FamilySpec) -> GeneratorPair:
    """Generator pair (F, G) of the family, composed with the map u."""
    w = spec.u - constant(spec.c)
    orient = map_orientation(spec.u)
    g_coeff = orient * spec.b
    cls = spec.family_class
    if cls is FamilyClass.OMEGA_NEGATIVE:
        F = compose(tanh(), w)
        G = g_coeff * compose(sech(), w)
    elif cls is FamilyClass.OMEGA_POSITIVE:
        branch = _nonvanishing_branch(w)
        F = compose(coth(branch), w)
        G = g_coeff * compose(csch(branch), w)
    elif cls is FamilyClass.OMEGA_ZERO_PLUS:
        F = constant(1.0)
        G = g_coeff * compose(exp(), -w)
    elif cls is FamilyClass.OMEGA_ZERO_MINUS:
        F = constant(-1.0)
        G = g_coeff * compose(exp(), w)
    else:  # pragma: no cover
        raise InvalidParamError(f"unknown family class {cls}")
    return GeneratorPair(F=F, G=G, signed_root=spec.u.diff(), spec=spec)


def _nonvanishing_branch(w: Profile) -> Interval:
    """Range interval of w excluding 0, for coth/csch compositions."""
    vals = w(_probe_points(w.domain))
    if np.min(vals) > 0:
        return Interval(0.0, math.inf, True, True)
    if np.max(vals) < 0:
        return Interval(-math.inf, 0.0, True, True)
    raise InvalidParamError(
        "u - c crosses zero inside the domain; the omega > 0 generators are "
        "singular there (restrict the domain to one side)")


def constraint_residuals(gp: GeneratorPair, g: Grid):
    """Pointwise defects r_F = F' - sigma(1 - F^2), r_G = G' + sigma F G."""
    x = g.nodes
    F, G, sig = gp.F(x), gp.G(x), gp.signed_root(x)
    r_f = gp.F.derivative(x) - sig * (1.0 - F * F)
    r_g = gp.G.derivative(x) + sig * F * G
    return SampledField(g, r_f), SampledField(g, r_g)


def omega_invariant(gp: GeneratorPair, g: Grid, max_deviation: float = 1e-10) -> float:
    """Family discriminant (F^2 - 1)/G^2, constant across the grid.

    Evaluated in the cancellation-free form -F'/(sigma G^2) whenever F has an
    analytic derivative (F^2 - 1 loses all digits where F saturates at +/-1).
    """
    x = g.nodes
    G = gp.G(x)
    if np.min(np.abs(G)) < 1e-14:
        raise DivisionByZeroError("G vanishes on the grid; omega is undefined")
    try:
        vals = -gp.F.diff()(x) / (gp.signed_root(x) * G * G)
    except NotImplementedError:
        F = gp.F(x)
        vals = (F * F - 1.0) / (G * G)
    mean = float(np.mean(vals))
    dev = float(np.max(np.abs(vals - mean)))
    if dev > max_deviation * max(1.0, abs(mean)):
        raise ValueError(f"omega varies across the grid (deviation {dev:.3e})")
    return mean


@dataclass(frozen=True)
class LadderState:
    """x-part of a basis ket |k s>; chi may be a profile or sampled data."""

    chi: Profile
    k: float
    s: float

    @classmethod
    def from_samples(cls, field: SampledField, k: float, s: float) -> "LadderState":
        return cls(chi=FromSamples(field), k=k, s=s)

    def sample(self, g: Grid, normalize: bool = False) -> SampledField:
        v = self.chi(g.nodes)
        if normalize:
            v = v / np.max(np.abs(v))
        return SampledField(g, v)


def ladder_apply(direction: int, st: LadderState, gp: GeneratorPair) -> LadderState:
    """Apply J_+ (direction=+1) or J_- (direction=-1) to the x-part of |k s>.

    Lowering at s = k produces the (numerically zero) annihilation defect;
    it is returned rather than raised so tests can measure it.
    """
    if direction not in (+1, -1):
        raise ValueError("direction must be +1 or -1")
    chi = st.chi
    coeff = st.s + 0.5 * direction
    new_chi = ((direction / gp.signed_root) * derivative_profile(chi)
               - coeff * (gp.F * chi) + gp.G * chi)
    return LadderState(chi=new_chi, k=st.k, s=st.s + direction)


def casimir_apply(st: LadderState, gp: GeneratorPair, variant: str, g: Grid) -> SampledField:
    """(J0^2 -/+ J0 - J_pm J_mp) chi on the grid; variants must agree."""
    s = st.s
    if variant == "upper":
        inner = ladder_apply(+1, ladder_apply(-1, st, gp), gp)
        scalar = s * (s - 1.0)
    elif variant == "lower":
        inner = ladder_apply(-1, ladder_apply(+1, st, gp), gp)
        scalar = s * (s + 1.0)
    else:
        raise ValueError("variant must be 'upper' or 'lower'")
    vals = scalar * st.chi(g.nodes) - inner.chi(g.nodes)
    return SampledField(g, vals)


def ground_state(gp: GeneratorPair, k: float, g: Grid | None = None,
                 anchor: float | None = None, normalize: bool = False) -> LadderState:
    """Lowest state chi_{k,k} = G^(k-1/2) exp(int sigma G dx), unnormalized.

    The antiderivative is anchored at the grid midpoint (value 0), which only
    fixes the overall scale.  A fractional exponent with G <= 0 anywhere on
    the evaluation range is rejected (NonPositiveG).
    """
    if k < 0:
        raise InvalidParamError("k must be >= 0")
    expo = k - 0.5
    if anchor is None:
        if g is not None:
            anchor = 0.5 * (g.lo + g.hi)
        else:
            pts = _probe_points(gp.domain)
            anchor = float(pts[pts.size // 2])
    if not float(expo).is_integer():
        xs = g.nodes if g is not None else _probe_points(gp.domain)
        if np.min(gp.G(xs)) <= 0.0:
            raise NonPositiveGError(
                "G <= 0 on the grid with fractional exponent k - 1/2")
    chi = power(gp.G, expo) * compose(exp(), Antiderivative(gp.signed_root * gp.G, anchor))
    if normalize and g is not None:
        chi = chi * (1.0 / float(np.max(np.abs(chi(g.nodes)))))
    return LadderState(chi=chi, k=k, s=k)


def annihilation_defect(gp: GeneratorPair, k: float, g: Grid) -> float:
    """sup |J_- chi0| / sup |chi0| over the grid (zero for a true lowest state)."""
    st = ground_state(gp, k, g)
    lowered = ladder_apply(-1, st, gp)
    return float(np.max(np.abs(lowered.chi(g.nodes))) / np.max(np.abs(st.chi(g.nodes))))
