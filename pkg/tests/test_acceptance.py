"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with the measured numbers (run pytest -s to see them all).
Tolerances are pinned here and nowhere else."""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from pdmdirac import profiles as pf
from pdmdirac.algebra import (
    FamilyClass,
    FamilySpec,
    annihilation_defect,
    build_family,
    casimir_apply,
    constraint_residuals,
    ground_state,
    ladder_apply,
)
from pdmdirac.dirac import (
    DiracModel,
    Spinor,
    build_eigen_spinor,
    coupled_residuals,
    coupled_scale,
    fermi_from_mass,
    mustafa_mass,
    reduced_residual,
    reduced_scale,
    spectrum,
)
from pdmdirac.potentials import (
    ORDERING_PRESETS,
    chi_equation_residual,
    chi_residual_scale,
    curvature_identity_residual,
    mass_quarter_power,
    pseudoscalar_partner,
    psi_equation_residual,
    riccati_residual,
    veff,
    vs_family,
)
from pdmdirac.spectral import verify_algebraic_spectrum

REPO = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).resolve().parent / "golden"
UNIT = pf.Interval(-1.0, 1.0, True, True)
OUTER = pf.Interval(1.0, 10.0, True, False)


def report(tag, ok, detail):
    print(f"{tag}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{tag}: {detail}"


def smooth_family(b=1.0, k=0.5):
    return build_family(FamilySpec(FamilyClass.OMEGA_NEGATIVE, b, 0.0,
                                   pf.artanh(), k, k))


def outer_family(b=-1.0, k=0.5):
    return build_family(FamilySpec(FamilyClass.OMEGA_POSITIVE, b, 0.0,
                                   pf.arccoth(OUTER), k, k))


def const_family(cls, b, c, k=0.5, domain=None):
    u = pf.identity(domain) if domain is not None else pf.identity()
    return build_family(FamilySpec(cls, b, c, u, k, k))


# -----------------------------------------------------------------------------
# 1. generator constraints across classes, maps and parameters
# -----------------------------------------------------------------------------

def _admissible_setup(cls, u_kind, c):
    """(u profile, grid) for the combination, or None when inadmissible."""
    if u_kind == "identity":
        if cls is FamilyClass.OMEGA_POSITIVE:
            dom = pf.Interval(c, c + 8.0, True, False)
            return pf.identity(dom), pf.Grid(dom, 2001, 1e-3)
        return pf.identity(), pf.Grid(pf.Interval(-6.0, 6.0), 2001, 1e-3)
    if u_kind == "artanh":
        if cls is FamilyClass.OMEGA_POSITIVE:
            dom = pf.Interval(math.tanh(c), 1.0, True, True)
            return pf.restrict(pf.artanh(), dom), pf.Grid(dom, 2001, 1e-3)
        return pf.artanh(), pf.Grid(UNIT, 2001, 1e-3)
    # arccoth branch x > 1; the omega > 0 generators are singular at coth(c)
    if cls is FamilyClass.OMEGA_POSITIVE and c > 0.0:
        dom = pf.Interval(1.0, 1.0 / math.tanh(c), True, True)
    else:
        dom = pf.Interval(1.0, 10.0, True, False)
    return pf.arccoth(dom), pf.Grid(dom, 2001, 1e-3)


def test_criterion_01_generator_constraints():
    classes = (FamilyClass.OMEGA_NEGATIVE, FamilyClass.OMEGA_ZERO_PLUS,
               FamilyClass.OMEGA_ZERO_MINUS, FamilyClass.OMEGA_POSITIVE)
    params = ((0.5, 0.0), (-0.5, 0.0), (1.0, 0.3), (-2.0, 0.0))
    worst, combos = 0.0, 0
    for cls in classes:
        for u_kind in ("identity", "artanh", "arccoth"):
            for b, c in params:
                u, grid = _admissible_setup(cls, u_kind, c)
                gp = build_family(FamilySpec(cls, b, c, u, 0.5, 0.5))
                r_f, r_g = constraint_residuals(gp, grid)
                worst = max(worst, r_f.sup_norm(), r_g.sup_norm())
                combos += 1
    report("ACCEPT-01 generator constraints", worst <= 1e-8,
           f"{combos} class/map/parameter combinations, max |r_F|,|r_G| = {worst:.3e} <= 1e-8")


# -----------------------------------------------------------------------------
# 2. Riccati pairing: exact at k = 1/2, sharply broken away from it
# -----------------------------------------------------------------------------

def _riccati_triples():
    yield "W=b*sech, v_f=1", const_family(FamilyClass.OMEGA_NEGATIVE, 1.0, 0.0), \
        pf.Grid(pf.Interval(-6.0, 6.0), 2001, 1e-3)
    yield "W=b*exp, v_f=1", const_family(FamilyClass.OMEGA_ZERO_PLUS, 1.0, 0.3), \
        pf.Grid(pf.Interval(-2.0, 6.0), 2001, 1e-3)
    dom = pf.Interval(0.0, 8.0, True, False)
    yield "W=b*csch, v_f=1", const_family(FamilyClass.OMEGA_POSITIVE, 1.0, 0.0,
                                          domain=dom), pf.Grid(dom, 2001, 0.05)
    yield "W=b*sqrt(1-x^2), v_f=1-x^2", smooth_family(1.0), \
        pf.Grid(UNIT, 2001, 1e-3)
    yield "W=b*sqrt(x^2-1), v_f=x^2-1", outer_family(-1.0), \
        pf.Grid(OUTER, 2001, 1e-3)


def test_criterion_02_riccati_identity_and_sharpness():
    worst_half = 0.0
    least_off = math.inf
    for label, gp, grid in _riccati_triples():
        W = pseudoscalar_partner(gp)
        v = fermi_from_mass(gp.mass)
        r = riccati_residual(W, v, vs_family(gp, 0.5), grid)
        worst_half = max(worst_half, r.sup_norm())
        for k in (0.3, 0.8):
            off = riccati_residual(W, v, vs_family(gp, k), grid).sup_norm()
            least_off = min(least_off, off)
    ok = worst_half <= 1e-10 and least_off >= 1e-3
    report("ACCEPT-02 Riccati link", ok,
           f"max residual at k=1/2: {worst_half:.3e} <= 1e-10; "
           f"min defect at k in {{0.3, 0.8}}: {least_off:.3e} >= 1e-3")


# -----------------------------------------------------------------------------
# 3. ladder / Casimir suite
# -----------------------------------------------------------------------------

def test_criterion_03_ladder_casimir():
    cases = [("smooth k=1/2 b=1", smooth_family(1.0, 0.5), 0.5,
              pf.Grid(UNIT, 2001, 1e-3)),
             ("constant-mass k=1 b=0.5",
              const_family(FamilyClass.OMEGA_NEGATIVE, 0.5, 0.0, 1.0), 1.0,
              pf.Grid(pf.Interval(-8.0, 8.0), 2001, 1e-3))]
    worst_ann = worst_cas = worst_var = 0.0
    for label, gp, k, grid in cases:
        x = grid.nodes
        worst_ann = max(worst_ann, annihilation_defect(gp, k, grid))
        st0 = ground_state(gp, k, grid)
        st1 = ladder_apply(+1, st0, gp)
        for st in (st0, st1):
            v = st.chi(x)
            sup = np.max(np.abs(v))
            c_up = casimir_apply(st, gp, "upper", grid)
            worst_cas = max(worst_cas,
                            np.max(np.abs(c_up.values - k * (k - 1) * v)) / sup)
        c_up = casimir_apply(st1, gp, "upper", grid)
        c_lo = casimir_apply(st1, gp, "lower", grid)
        worst_var = max(worst_var, np.max(np.abs(c_up.values - c_lo.values))
                        / np.max(np.abs(st1.chi(x))))
    ok = worst_ann <= 1e-8 and worst_cas <= 1e-6 and worst_var <= 1e-8
    report("ACCEPT-03 ladder/Casimir", ok,
           f"annihilation {worst_ann:.3e} <= 1e-8, Casimir {worst_cas:.3e} <= 1e-6, "
           f"variant agreement {worst_var:.3e} <= 1e-8")


# -----------------------------------------------------------------------------
# 4. equation residuals for the first two chain states
# -----------------------------------------------------------------------------

def test_criterion_04_schroedinger_residuals():
    cases = [(smooth_family(1.0, 0.5), 0.5, pf.Grid(UNIT, 2001, 1e-3)),
             (const_family(FamilyClass.OMEGA_NEGATIVE, 0.5, 0.0, 1.0), 1.0,
              pf.Grid(pf.Interval(-8.0, 8.0), 2001, 1e-3))]
    worst = 0.0
    for gp, k, grid in cases:
        st0 = ground_state(gp, k, grid)
        st1 = ladder_apply(+1, st0, gp)
        for st, s in ((st0, k), (st1, k + 1.0)):
            V = vs_family(gp, s)
            r = chi_equation_residual(gp.mass, V, st, k, grid)
            worst = max(worst, r.sup_norm() / chi_residual_scale(gp.mass, V, st, grid))
            psi = mass_quarter_power(gp.mass) * st.chi
            rp = psi_equation_residual(gp.mass, V, psi, k, grid)
            scale = max(float(np.max(np.abs(V(grid.nodes) * psi(grid.nodes)))), 1e-30)
            worst = max(worst, rp.sup_norm() / scale)
    report("ACCEPT-04 equation residuals", worst <= 1e-6,
           f"max relative chi/psi residual over chains = {worst:.3e} <= 1e-6")


# -----------------------------------------------------------------------------
# 5. independent spectral oracle
# -----------------------------------------------------------------------------

def test_criterion_05_spectral_oracle():
    gp = const_family(FamilyClass.OMEGA_NEGATIVE, 0.5, 0.0, 1.0)
    t0 = time.monotonic()
    rep1 = verify_algebraic_spectrum(gp, 1.0, (-20.0, 20.0), n=4000, tol=1e-3)
    t1 = time.monotonic() - t0
    t0 = time.monotonic()
    rep2 = verify_algebraic_spectrum(gp, 2.0, (-20.0, 20.0), n=4000, tol=2e-3)
    t2 = time.monotonic() - t0
    errs = [abs(verify_algebraic_spectrum(gp, 1.0, (-20.0, 20.0), n=n).lambda0
                + 0.25) for n in (1000, 2000, 4000)]
    slope = math.log(errs[0] / errs[2]) / math.log(4.0)
    ok = (abs(rep1.lambda0 + 0.25) <= 1e-3 and abs(rep2.lambda0 + 2.25) <= 2e-3
          and slope >= 1.9 and t1 <= 10.0 and t2 <= 10.0)
    report("ACCEPT-05 spectral oracle", ok,
           f"lambda0(k=1) = {rep1.lambda0:.6f} (|err| <= 1e-3), "
           f"lambda0(k=2) = {rep2.lambda0:.6f} (|err| <= 2e-3), "
           f"slope = {slope:.2f} >= 1.9, runtimes {t1:.2f}s/{t2:.2f}s <= 10s")


# -----------------------------------------------------------------------------
# 6. Dirac end-to-end
# -----------------------------------------------------------------------------

def test_criterion_06_dirac_end_to_end():
    grid_a = pf.Grid(UNIT, 2001, 1e-3)
    gp_a = smooth_family(1.0, 0.5)
    sp_a = build_eigen_spinor(ground_state(gp_a, 0.5, grid_a), gp_a,
                              A=2.0, sign=+1, g=grid_a)
    psi_a = mass_quarter_power(gp_a.mass) * ground_state(gp_a, 0.5, grid_a).chi
    v_a = fermi_from_mass(gp_a.mass)
    W_a = pseudoscalar_partner(gp_a)
    red_a = np.max(np.abs(reduced_residual(psi_a, W_a, v_a, 2.0, 2.0, grid_a).values)
                   / reduced_scale(psi_a, W_a, v_a, 2.0, 2.0, grid_a))

    grid_c = pf.Grid(OUTER, 2001, 1e-3)
    gp_c = outer_family(-1.0, 0.5)
    sp_c = build_eigen_spinor(ground_state(gp_c, 0.5, grid_c), gp_c,
                              A=1.0, sign=+1, g=grid_c)
    psi_c = mass_quarter_power(gp_c.mass) * ground_state(gp_c, 0.5, grid_c).chi
    v_c = fermi_from_mass(gp_c.mass)
    W_c = pseudoscalar_partner(gp_c)
    red_c = np.max(np.abs(reduced_residual(psi_c, W_c, v_c, 1.0, 1.0, grid_c).values)
                   / reduced_scale(psi_c, W_c, v_c, 1.0, 1.0, grid_c))

    model = DiracModel(v_f=v_a, m=mustafa_mass(v_a, 2.0), W=W_a, A=2.0, k=0.5)
    bumped = Spinor(psi_plus=sp_a.psi_plus, psi_minus=sp_a.psi_minus, E=2.1)
    r1p, _ = coupled_residuals(bumped, model, grid_a)
    inflation = (np.max(np.abs(r1p.values) / coupled_scale(bumped, model, grid_a))
                 / max(sp_a.residual_r1, 1e-14))

    ok = (sp_a.residual_r1 <= 1e-6 and red_a <= 1e-6
          and sp_c.residual_r1 <= 1e-6 and red_c <= 1e-6 and inflation >= 10.0)
    report("ACCEPT-06 Dirac end-to-end", ok,
           f"smooth: r1 = {sp_a.residual_r1:.3e}, reduced = {red_a:.3e}; "
           f"outer: r1 = {sp_c.residual_r1:.3e}, reduced = {red_c:.3e}; "
           f"E-perturbation inflates r1 by {inflation:.1e}x >= 10x")


# -----------------------------------------------------------------------------
# 7. exact point values
# -----------------------------------------------------------------------------

def test_criterion_07_point_values():
    vs_smooth = vs_family(smooth_family(1.0), 0.5)(0.6)
    vs_outer = vs_family(outer_family(-1.0), 0.5)(math.sqrt(2.0))
    mass_val = smooth_family(1.0).mass(0.6)
    e2 = [e.E_squared for e in spectrum(2.0, [0.0, 0.5, 1.0, 2.0])]
    checks = [
        abs(vs_smooth - 0.16), abs(vs_outer - (1.0 - math.sqrt(2.0))),
        abs(mass_val - 2.44140625),
        max(abs(a - b) for a, b in zip(e2, [3.75, 4.0, 3.75, 1.75])),
    ]
    worst = max(checks)
    report("ACCEPT-07 point values", worst <= 1e-12,
           f"V_s(0.6) = {vs_smooth!r}, V_s(sqrt2) = {vs_outer!r}, "
           f"M(0.6) = {mass_val!r}, E^2 table; max defect {worst:.3e} <= 1e-12")


# -----------------------------------------------------------------------------
# 8. curvature identity
# -----------------------------------------------------------------------------

def test_criterion_08_curvature_identity():
    pairs = [(smooth_family(1.0).mass, pf.Grid(UNIT, 2001, 1e-3)),
             (outer_family(-1.0).mass, pf.Grid(OUTER, 2001, 1e-3)),
             (pf.constant(1.0), pf.Grid(pf.Interval(-8.0, 8.0), 2001, 1e-3))]
    worst = 0.0
    for M, grid in pairs:
        r = curvature_identity_residual(M, fermi_from_mass(M), grid)
        worst = max(worst, r.sup_norm())
    report("ACCEPT-08 curvature identity", worst <= 1e-9,
           f"max residual over mass/velocity pairs = {worst:.3e} <= 1e-9")


# -----------------------------------------------------------------------------
# 9. ordering presets
# -----------------------------------------------------------------------------

def test_criterion_09_ordering_presets():
    M = 1.0 / pf.poly([1.0, 0.0, -1.0], UNIT) ** 2
    V = pf.compose(pf.sech(), pf.identity(UNIT))
    xs = np.linspace(-0.95, 0.95, 401)
    bd = veff(M, V, ORDERING_PRESETS["bendaniel_duke"])
    bd_exact = np.array_equal(bd(xs), V(xs))
    zk = veff(M, pf.constant(0.0), ORDERING_PRESETS["zhu_kroemer"])(0.0)
    sums = [p.eta + p.beta + p.gamma for p in ORDERING_PRESETS.values()]
    constraint = max(abs(s + 1.0) for s in sums)
    ok = bd_exact and abs(zk - 2.0) <= 1e-10 and constraint <= 1e-12
    report("ACCEPT-09 ordering presets", ok,
           f"BenDaniel-Duke exact: {bd_exact}, Zhu-Kroemer V_eff(0) = {zk!r} "
           f"(|err| <= 1e-10), preset sums within {constraint:.1e} of -1")


# -----------------------------------------------------------------------------
# 10. figure datasets: structure, gap, determinism against golden files
# -----------------------------------------------------------------------------

def _read_csv(path):
    rows = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    return np.loadtxt(rows[1:], delimiter=",")


def test_criterion_10_figures(tmp_path):
    cmd = [sys.executable, "-m", "pdmdirac", "figures",
           str(REPO / "configs" / "local_artanh.cfg"),
           "--out", str(tmp_path), "--grid-n", "201"]
    cp = subprocess.run(cmd, capture_output=True, text=True)
    assert cp.returncode == 0, cp.stderr
    identical = all((tmp_path / p.name).read_bytes() == p.read_bytes()
                    for p in GOLDEN.glob("*.csv"))
    data = _read_csv(tmp_path / "figure1_b5.csv")
    x, v = data[:, 0], data[:, 1]
    signs = np.sign(np.diff(v[x <= 0]))
    signs = signs[signs != 0]
    single_max = int(np.sum(np.diff(signs) != 0)) == 1
    gap_ok = all(np.all(np.abs(_read_csv(p)[:, 0]) > 1.0)
                 for p in tmp_path.glob("figure2_*.csv"))
    ok = identical and single_max and gap_ok
    report("ACCEPT-10 figure datasets", ok,
           f"golden byte-identical: {identical}, single interior maximum at "
           f"large b: {single_max}, outer figure excludes |x| < 1: {gap_ok}")
