import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdmdirac import profiles as pf
from pdmdirac.algebra import FamilyClass, FamilySpec, build_family, ground_state, \
    ladder_apply
from pdmdirac.dirac import fermi_from_mass
from pdmdirac.errors import LinkViolationError, OrderingViolationError
from pdmdirac.potentials import (
    ORDERING_PRESETS,
    OrderingParams,
    chi_equation_residual,
    chi_residual_scale,
    curvature_identity_residual,
    energy_level,
    pseudoscalar_partner,
    psi_equation_residual,
    riccati_residual,
    riccati_solve,
    veff,
    vs_family,
)
from conftest import OUTER, UNIT, sup


# ------------------------------------------------------------------- orderings

def test_preset_values():
    assert ORDERING_PRESETS["bendaniel_duke"] == OrderingParams(0.0, -1.0, 0.0)
    assert ORDERING_PRESETS["zhu_kroemer"] == OrderingParams(-0.5, 0.0, -0.5)
    assert ORDERING_PRESETS["mustafa_mazharimousavi"] == OrderingParams(-0.25, -0.5, -0.25)


def test_ordering_constraint_enforced():
    with pytest.raises(OrderingViolationError):
        OrderingParams(0.0, 0.0, 0.0)


def test_veff_bendaniel_duke_is_bare_potential():
    M = 1.0 / pf.poly([1.0, 0.0, -1.0], UNIT) ** 2
    V = pf.compose(pf.sech(), pf.identity(UNIT))
    eff = veff(M, V, ORDERING_PRESETS["bendaniel_duke"])
    xs = np.linspace(-0.9, 0.9, 11)
    assert np.array_equal(eff(xs), V(xs))


def test_veff_zhu_kroemer_point_value():
    M = 1.0 / pf.poly([1.0, 0.0, -1.0], UNIT) ** 2
    eff = veff(M, pf.constant(0.0), ORDERING_PRESETS["zhu_kroemer"])
    assert eff(0.0) == pytest.approx(2.0, abs=1e-10)


def test_veff_constant_mass_reduces_to_bare():
    for params in ORDERING_PRESETS.values():
        eff = veff(pf.constant(1.0), pf.constant(0.7), params)
        assert eff(1.3) == pytest.approx(0.7, abs=1e-15)


def test_veff_symbolic_oracle():
    sp = pytest.importorskip("sympy")
    x = sp.symbols("x", real=True)
    M = 1 / (1 - x ** 2) ** 2
    eta, beta = sp.Rational(-1, 2), 0
    expr = (sp.Rational(1, 2) * (beta + 1) * sp.diff(M, x, 2) / M ** 2
            - (eta * (eta + beta + 1) + beta + 1) * sp.diff(M, x) ** 2 / M ** 3)
    Mp = 1.0 / pf.poly([1.0, 0.0, -1.0], UNIT) ** 2
    eff = veff(Mp, pf.constant(0.0), ORDERING_PRESETS["zhu_kroemer"])
    for xv in (-0.6, 0.1, 0.45):
        assert eff(xv) == pytest.approx(float(expr.subs(x, xv)), rel=1e-12)


# ------------------------------------------------------------------- V_s family

def test_vs_point_smooth(family_smooth):
    assert vs_family(family_smooth, 0.5)(0.6) == pytest.approx(0.16, abs=1e-12)


def test_vs_point_const_mass():
    gp = build_family(FamilySpec(FamilyClass.OMEGA_NEGATIVE, 1.0, 0.0,
                                 pf.identity(), 0.5, 0.5))
    assert vs_family(gp, 0.5)(0.0) == pytest.approx(1.0, abs=1e-14)


def test_vs_point_outer(family_outer):
    # b = -1 user coupling reproduces 1 - sqrt(2) at x = sqrt(2)
    val = vs_family(family_outer, 0.5)(math.sqrt(2.0))
    assert val == pytest.approx(1.0 - math.sqrt(2.0), abs=1e-12)


def test_energy_level():
    assert energy_level(0.5) == 0.0
    assert energy_level(1.0) == -0.25


# ------------------------------------------------------------ equation residuals

def _rel_chi_residual(gp, st, s_label, grid):
    V = vs_family(gp, s_label)
    r = chi_equation_residual(gp.mass, V, st, st.k, grid)
    return r.sup_norm() / chi_residual_scale(gp.mass, V, st, grid)


def test_chi_equation_smooth_chain(family_smooth, grid_unit):
    st0 = ground_state(family_smooth, 0.5, grid_unit)
    assert _rel_chi_residual(family_smooth, st0, 0.5, grid_unit) < 1e-6
    st1 = ladder_apply(+1, st0, family_smooth)
    assert _rel_chi_residual(family_smooth, st1, 1.5, grid_unit) < 1e-6


def test_chi_equation_const_mass_k1(family_const_k1, grid_line):
    st0 = ground_state(family_const_k1, 1.0, grid_line)
    assert _rel_chi_residual(family_const_k1, st0, 1.0, grid_line) < 1e-6
    st1 = ladder_apply(+1, st0, family_const_k1)
    assert _rel_chi_residual(family_const_k1, st1, 2.0, grid_line) < 1e-6


def test_psi_equation_smooth(family_smooth, grid_unit):
    from pdmdirac.potentials import mass_quarter_power

    st0 = ground_state(family_smooth, 0.5, grid_unit)
    V = vs_family(family_smooth, 0.5)
    psi = mass_quarter_power(family_smooth.mass) * st0.chi
    r = psi_equation_residual(family_smooth.mass, V, psi, 0.5, grid_unit)
    scale = sup(V(grid_unit.nodes) * psi(grid_unit.nodes))
    assert r.sup_norm() / scale < 1e-6
    st1 = ladder_apply(+1, st0, family_smooth)
    V1 = vs_family(family_smooth, 1.5)
    psi1 = mass_quarter_power(family_smooth.mass) * st1.chi
    r1 = psi_equation_residual(family_smooth.mass, V1, psi1, 0.5, grid_unit)
    assert r1.sup_norm() / sup(V1(grid_unit.nodes) * psi1(grid_unit.nodes)) < 1e-6


def test_psi_and_chi_forms_agree_for_unit_mass(family_const_k1, grid_line):
    # constant mass kills the curvature terms: the two forms are identical
    st0 = ground_state(family_const_k1, 1.0, grid_line)
    V = vs_family(family_const_k1, 1.0)
    r_chi = chi_equation_residual(family_const_k1.mass, V, st0, 1.0, grid_line)
    r_psi = psi_equation_residual(family_const_k1.mass, V, st0.chi, 1.0, grid_line)
    assert sup(r_chi.values - r_psi.values) < 1e-10


# -------------------------------------------------------------- curvature link

def test_curvature_identity_unit_pair(grid_line):
    r = curvature_identity_residual(pf.constant(1.0), pf.constant(1.0), grid_line)
    assert r.sup_norm() == 0.0


def test_curvature_identity_smooth_pair(family_smooth, grid_unit):
    v = fermi_from_mass(family_smooth.mass)
    r = curvature_identity_residual(family_smooth.mass, v, grid_unit)
    assert r.sup_norm() < 1e-9


def test_curvature_identity_outer_pair(family_outer, grid_outer):
    v = fermi_from_mass(family_outer.mass)
    r = curvature_identity_residual(family_outer.mass, v, grid_outer)
    assert r.sup_norm() < 1e-9


def test_curvature_identity_rejects_unlinked_pair(grid_unit):
    M = 1.0 / pf.poly([1.0, 0.0, -1.0], UNIT) ** 2
    with pytest.raises(LinkViolationError):
        curvature_identity_residual(M, pf.constant(1.0), grid_unit)


# ------------------------------------------------------------------ Riccati link

def _family(cls, b, c, kind, domain=None):
    if kind == "artanh":
        u = pf.artanh()
    elif kind == "arccoth":
        u = pf.arccoth(domain or OUTER)
    else:
        u = pf.identity(domain) if domain else pf.identity()
    return build_family(FamilySpec(cls, b, c, u, 0.5, 0.5))


TRIPLES = [
    # (family class, b, c, map, grid) for the five closed-form pairings
    (FamilyClass.OMEGA_NEGATIVE, 1.0, 0.0, "identity",
     pf.Grid(pf.Interval(-6, 6), 1001, 1e-3)),
    (FamilyClass.OMEGA_ZERO_PLUS, 1.0, 0.3, "identity",
     pf.Grid(pf.Interval(-2, 6), 1001, 1e-3)),
    (FamilyClass.OMEGA_POSITIVE, 1.0, 0.0, "identity",
     pf.Grid(pf.Interval(0.0, 8.0, True, False), 1001, 0.05)),
    (FamilyClass.OMEGA_NEGATIVE, 1.0, 0.0, "artanh",
     pf.Grid(UNIT, 1001, 1e-3)),
    (FamilyClass.OMEGA_POSITIVE, -1.0, 0.0, "arccoth",
     pf.Grid(OUTER, 1001, 1e-3)),
]


@pytest.mark.parametrize("cls,b,c,kind,grid", TRIPLES)
def test_riccati_identity_at_half(cls, b, c, kind, grid):
    dom = grid.interval if kind != "artanh" else None
    gp = _family(cls, b, c, kind, dom)
    W = pseudoscalar_partner(gp)
    v = fermi_from_mass(gp.mass)
    r = riccati_residual(W, v, vs_family(gp, 0.5), grid)
    assert r.sup_norm() < 1e-10


@pytest.mark.parametrize("cls,b,c,kind,grid", TRIPLES)
@pytest.mark.parametrize("k", [0.3, 0.8])
def test_riccati_link_sharp_away_from_half(cls, b, c, kind, grid, k):
    dom = grid.interval if kind != "artanh" else None
    gp = _family(cls, b, c, kind, dom)
    W = pseudoscalar_partner(gp)
    v = fermi_from_mass(gp.mass)
    r = riccati_residual(W, v, vs_family(gp, k), grid)
    assert r.sup_norm() >= 1e-3


def test_riccati_exponential_closed_form():
    # W = b e^{-(x-c)}, v_f = 1 pairs with V = b^2 e^{-2(x-c)} - b e^{-(x-c)}
    b, c = 1.7, 0.3
    gp = _family(FamilyClass.OMEGA_ZERO_PLUS, b, c, "identity")
    V = vs_family(gp, 0.5)
    xs = np.linspace(-1.0, 4.0, 13)
    expected = b ** 2 * np.exp(-2 * (xs - c)) - b * np.exp(-(xs - c))
    assert np.max(np.abs(V(xs) - expected)) < 1e-12


def test_riccati_solve_recovers_closed_form(family_smooth):
    V = vs_family(family_smooth, 0.5)
    v = fermi_from_mass(family_smooth.mass)
    g = pf.Grid(pf.Interval(-0.99, 0.99), 397)
    sol = riccati_solve(V, v, 0.0, 1.0, g)
    assert not sol.blew_up
    assert np.max(np.abs(sol.values - np.sqrt(1 - g.nodes ** 2))) < 1e-7


def test_riccati_solve_zero_solution():
    g = pf.Grid(pf.Interval(-2.0, 2.0), 101)
    sol = riccati_solve(pf.constant(0.0), pf.constant(1.0), 0.0, 0.0, g)
    assert np.max(np.abs(sol.values)) == 0.0


def test_riccati_solve_anchor_sensitivity(family_smooth):
    V = vs_family(family_smooth, 0.5)
    v = fermi_from_mass(family_smooth.mass)
    g = pf.Grid(pf.Interval(-0.95, 0.95), 201)
    sol = riccati_solve(V, v, 0.0, 1.0 + 1e-3, g)
    depart = np.nanmax(np.abs(sol.values - np.sqrt(1 - g.nodes ** 2)))
    # qualitative: the perturbed branch leaves the closed-form solution
    assert depart > 1e-3


def test_riccati_solve_reports_blowup():
    # W' = -W^2 from W(0) = -1 has a pole at x = 1
    g = pf.Grid(pf.Interval(0.0, 2.0), 101)
    sol = riccati_solve(pf.constant(0.0), pf.constant(1.0), 0.0, -1.0, g,
                        bound=1e4)
    assert sol.blew_up
    assert 0.9 < sol.stop_hi < 1.1
    with pytest.raises(ValueError):
        sol.field()


@settings(max_examples=30, deadline=None)
@given(st.floats(-2.0, 2.0), st.floats(-2.0, 2.0))
def test_veff_constant_mass_reduces_for_any_admissible_ordering(eta, beta):
    gamma = -1.0 - eta - beta
    params = OrderingParams(eta, beta, gamma)
    eff = veff(pf.constant(2.5), pf.constant(-0.3), params)
    assert eff(0.8) == pytest.approx(-0.3, abs=1e-13)
