"""Assembly of complete solvable models from a flat parameter definition.

A `ModelDefinition` carries exactly the knobs of a configuration file; the
`assemble` step validates the coordinate-map/domain pairing, builds the
generator pair, and materializes every derived profile of the bundle: mass
M = sigma^2, velocity v_f = 1/sqrt(M), Dirac mass m = A M, algebra potential
V_s, pseudoscalar partner W, and the first two chain states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


from .algebra import (
    FamilyClass,
    FamilySpec,
    GeneratorPair,
    LadderState,
    build_family,
    ground_state,
    ladder_apply,
)
from .dirac import fermi_from_mass, mustafa_mass, spectrum
from .errors import DomainError, PdmDiracError
from .potentials import (
    ORDERING_PRESETS,
    OrderingParams,
    mass_quarter_power,
    pseudoscalar_partner,
    vs_family,
)
from .profiles import Grid, Interval, Profile, arccoth, artanh, identity, restrict

U_KINDS = ("identity", "artanh", "arccoth")


@dataclass(frozen=True)
class ModelDefinition:
    """Flat, validated model parameters (one-to-one with the config format)."""

    family_class: FamilyClass
    b: float
    c: float
    u_kind: str
    k: float
    s: float
    A: float
    x_min: float
    x_max: float
    n: int
    margin: float
    ordering: OrderingParams
    ordering_name: str = "custom"

    def __post_init__(self):
        if self.u_kind not in U_KINDS:
            raise DomainError(f"unknown coordinate map {self.u_kind!r}")
        if not self.x_min < self.x_max:
            raise DomainError("grid.min must be below grid.max")


def _family_domain(defn: ModelDefinition) -> Interval:
    """Natural domain of the family: the coordinate map's branch containing
    the grid, cut at any omega > 0 generator singularity u(x) = c."""
    lo, hi = defn.x_min, defn.x_max
    if defn.u_kind == "artanh":
        if lo < -1.0 or hi > 1.0:
            raise DomainError("artanh map requires the grid inside [-1, 1]")
        dom_lo, dom_hi = -1.0, 1.0
    elif defn.u_kind == "arccoth":
        if lo >= 1.0:
            dom_lo, dom_hi = 1.0, math.inf
        elif hi <= -1.0:
            dom_lo, dom_hi = -math.inf, -1.0
        else:
            raise DomainError("arccoth map requires the grid inside |x| > 1")
    else:
        dom_lo, dom_hi = -math.inf, math.inf
    x_star = _generator_singularity(defn, dom_lo, dom_hi)
    if x_star is not None:
        if lo >= x_star - 1e-12:
            dom_lo = max(dom_lo, x_star)
        elif hi <= x_star + 1e-12:
            dom_hi = min(dom_hi, x_star)
        else:
            raise DomainError(
                f"omega > 0 generators are singular at x = {x_star:.6g}, inside "
                "the grid; restrict grid.min/grid.max to one side")
    return Interval(dom_lo, dom_hi, open_lo=True, open_hi=True)


def _generator_singularity(defn: ModelDefinition, dom_lo, dom_hi):
    """Where u(x) = c makes coth/csch blow up, or None."""
    if defn.family_class is not FamilyClass.OMEGA_POSITIVE:
        return None
    c = defn.c
    if defn.u_kind == "identity":
        return c
    if defn.u_kind == "artanh":
        return math.tanh(c)
    if c == 0.0:
        return None                      # arccoth never vanishes on |x| > 1
    x_star = 1.0 / math.tanh(c)          # coth(c)
    return x_star if dom_lo < x_star < dom_hi else None


def _grid_interval(defn: ModelDefinition, family_dom: Interval) -> Interval:
    """Grid span with endpoints marked open where they touch the family
    boundary (the margin then keeps nodes strictly inside)."""
    tol = 1e-12 * max(1.0, abs(defn.x_min), abs(defn.x_max))
    lo, hi = defn.x_min, defn.x_max
    if lo < family_dom.lo - tol or hi > family_dom.hi + tol:
        raise DomainError(
            f"grid [{lo}, {hi}] extends beyond the family domain {family_dom}")
    open_lo = abs(lo - family_dom.lo) <= tol
    open_hi = abs(hi - family_dom.hi) <= tol
    return Interval(lo, hi, open_lo, open_hi)


def _make_u(kind: str, domain: Interval) -> Profile:
    if kind == "identity":
        return identity(domain)
    if kind == "artanh":
        return restrict(artanh(), domain)
    return arccoth(domain)


@dataclass
class ModelBundle:
    """Everything derivable from one definition: profiles, states, spectrum."""

    definition: ModelDefinition
    spec: FamilySpec
    pair: GeneratorPair
    grid: Grid
    mass: Profile
    v_f: Profile
    dirac_mass: Profile
    W: Profile
    V_s: Profile
    chi0: LadderState | None = None
    chi1: LadderState | None = None
    chi_error: PdmDiracError | None = field(default=None, repr=False)

    @property
    def k(self) -> float:
        return self.definition.k

    @property
    def s(self) -> float:
        return self.definition.s

    @property
    def A(self) -> float:
        return self.definition.A

    def energy(self):
        return spectrum(self.A, [self.k])[0]

    def psi_plus(self) -> Profile:
        if self.chi0 is None:
            raise self.chi_error
        return mass_quarter_power(self.mass) * self.chi0.chi


def assemble(defn: ModelDefinition) -> ModelBundle:
    family_dom = _family_domain(defn)
    u = _make_u(defn.u_kind, family_dom)
    spec = FamilySpec(family_class=defn.family_class, b=defn.b, c=defn.c,
                      u=u, k=defn.k, s=defn.s)
    pair = build_family(spec)
    grid = Grid(_grid_interval(defn, family_dom), defn.n, defn.margin)
    mass = pair.mass
    v_f = fermi_from_mass(mass)
    bundle = ModelBundle(
        definition=defn, spec=spec, pair=pair, grid=grid, mass=mass, v_f=v_f,
        dirac_mass=mustafa_mass(v_f, defn.A), W=pseudoscalar_partner(pair),
        V_s=vs_family(pair, defn.s),
    )
    try:
        bundle.chi0 = ground_state(pair, defn.k, grid)
        bundle.chi1 = ladder_apply(+1, bundle.chi0, pair)
    except PdmDiracError as exc:
        bundle.chi_error = exc
    return bundle


def ordering_from_name(name: str, eta=None, beta=None, gamma=None) -> OrderingParams:
    if name in ORDERING_PRESETS:
        return ORDERING_PRESETS[name]
    if name == "custom":
        if eta is None or beta is None or gamma is None:
            raise DomainError("custom ordering requires eta, beta and gamma")
        return OrderingParams(float(eta), float(beta), float(gamma))
    raise DomainError(f"unknown ordering {name!r}")


def figure_one_bundles(b_values=(0.5, 1.0, 2.0, 5.0), n: int = 2001,
                       margin: float = 1e-3, ordering: str = "zhu_kroemer"):
    """Smooth-interval families used for the first figure export (k = 1/2)."""
    out = []
    for b in b_values:
        defn = ModelDefinition(
            family_class=FamilyClass.OMEGA_NEGATIVE, b=float(b), c=0.0,
            u_kind="artanh", k=0.5, s=0.5, A=2.0, x_min=-1.0, x_max=1.0,
            n=n, margin=margin, ordering=ORDERING_PRESETS[ordering],
            ordering_name=ordering)
        out.append(assemble(defn))
    return out


def figure_two_bundles(b_values=(-0.5, -1.0, -2.0, -5.0), n: int = 2001,
                       margin: float = 1e-3, x_reach: float = 3.0,
                       ordering: str = "zhu_kroemer"):
    """Outer-region family pairs (both |x| > 1 branches) for the second figure."""
    out = []
    half = max(100, n // 2)
    for b in b_values:
        branches = []
        for (lo, hi) in ((1.0, x_reach), (-x_reach, -1.0)):
            defn = ModelDefinition(
                family_class=FamilyClass.OMEGA_POSITIVE, b=float(b), c=0.0,
                u_kind="arccoth", k=0.5, s=0.5, A=1.0, x_min=lo, x_max=hi,
                n=half, margin=margin, ordering=ORDERING_PRESETS[ordering],
                ordering_name=ordering)
            branches.append(assemble(defn))
        out.append((float(b), branches))
    return out
