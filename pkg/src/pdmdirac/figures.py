"""Deterministic CSV exports: model tables and the two potential figures.

CSV conventions: comma separator, '.' decimal, 17 significant digits
(lossless double round-trip), '#'-prefixed metadata header lines.  Identical
configuration and tool version produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import __version__
from .models import ModelBundle, figure_one_bundles, figure_two_bundles
from .potentials import vs_family


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _header_lines(meta: dict) -> list:
    lines = [f"# pdmdirac {__version__}"]
    for key in sorted(meta):
        lines.append(f"# {key} = {meta[key]}")
    return lines


def write_csv(path, columns: dict, meta: dict) -> None:
    """columns: ordered name -> 1d array; all arrays share a length."""
    names = list(columns)
    arrays = [np.asarray(columns[n], dtype=float) for n in names]
    length = arrays[0].size
    lines = _header_lines(meta)
    lines.append(",".join(names))
    for i in range(length):
        lines.append(",".join(_fmt(a[i]) for a in arrays))
    Path(path).write_text("\n".join(lines) + "\n")


def model_table(bundle: ModelBundle) -> dict:
    """Columns of the build export: x, profiles, states, |psi_+|."""
    x = bundle.grid.nodes
    nan = np.full(x.size, np.nan)
    if bundle.chi0 is not None:
        chi0 = bundle.chi0.chi(x)
        chi1 = bundle.chi1.chi(x)
        psi_abs = np.abs(bundle.mass(x) ** 0.25 * chi0)
    else:
        chi0 = chi1 = psi_abs = nan
    return {
        "x": x,
        "M": bundle.mass(x),
        "v_f": bundle.v_f(x),
        "F": bundle.pair.F(x),
        "G": bundle.pair.G(x),
        "V_s": bundle.V_s(x),
        "W": bundle.W(x),
        "chi0": chi0,
        "chi1": chi1,
        "psi_plus_abs": psi_abs,
    }


def bundle_meta(bundle: ModelBundle, extra: dict | None = None) -> dict:
    d = bundle.definition
    meta = {
        "family.class": d.family_class.value, "family.b": _fmt(d.b),
        "family.c": _fmt(d.c), "family.u": d.u_kind,
        "labels.k": _fmt(d.k), "labels.s": _fmt(d.s), "dirac.A": _fmt(d.A),
        "grid.min": _fmt(d.x_min), "grid.max": _fmt(d.x_max),
        "grid.n": str(d.n), "grid.margin": _fmt(d.margin),
        "ordering": d.ordering_name,
    }
    if extra:
        meta.update(extra)
    return meta


def export_figure_one(out_dir, n: int, margin: float) -> list:
    """V_s curves of the smooth-interval family for positive couplings."""
    paths = []
    for bundle in figure_one_bundles(n=n, margin=margin):
        b = bundle.definition.b
        x = bundle.grid.nodes
        path = Path(out_dir) / f"figure1_b{b:g}.csv"
        write_csv(path, {"x": x, "V_s": bundle.V_s(x)},
                  bundle_meta(bundle, {"figure": "1"}))
        paths.append(path)
    return paths


def export_figure_two(out_dir, n: int, margin: float) -> list:
    """V_s curves of the outer-region family (both branches, negative b)."""
    paths = []
    for b, branches in figure_two_bundles(n=n, margin=margin):
        xs, vs = [], []
        for bundle in sorted(branches, key=lambda bb: bb.grid.lo):
            x = bundle.grid.nodes
            xs.append(x)
            vs.append(vs_family(bundle.pair, 0.5)(x))
        path = Path(out_dir) / f"figure2_b{b:g}.csv"
        meta = bundle_meta(branches[0], {"figure": "2",
                                         "branches": "x < -1 and x > 1"})
        meta["grid.min"] = _fmt(float(xs[0][0]))
        meta["grid.max"] = _fmt(float(xs[-1][-1]))
        write_csv(path, {"x": np.concatenate(xs), "V_s": np.concatenate(vs)}, meta)
        paths.append(path)
    return paths
