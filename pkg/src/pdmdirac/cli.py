"""Command-line front end.

Subcommands:
    build <config> [--csv PATH]          construct a model, print a summary
    verify <config> [--json PATH]        run the verification suite
    figures <config> --out DIR           export the two V_s figure datasets
    spectrum <config> --k-list a,b,c     algebraic energy table

Exit codes: 0 all checks pass, 1 verification failure, 2 configuration
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .config import load_config
from .errors import (
    ConfigError,
    ConvergenceFailureError,
    DomainError,
    InversionFailureError,
    NonConvergenceError,
    PdmDiracError,
)
from .figures import bundle_meta, export_figure_one, export_figure_two, \
    model_table, write_csv
from .models import assemble
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_NUMERICAL = (NonConvergenceError, ConvergenceFailureError, InversionFailureError)


def _common_options(p: argparse.ArgumentParser):
    p.add_argument("config", help="model configuration file")
    p.add_argument("--grid-n", type=int, default=None,
                   help="override grid.n from the config")
    p.add_argument("--margin", type=float, default=None,
                   help="override grid.margin from the config")
    p.add_argument("--tolerance-scale", type=float, default=1.0,
                   help="multiply every verification tolerance")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pdmdirac",
        description="Solvable position-dependent-mass Dirac models with local "
                    "Fermi velocity: construction and verification tools.")
    ap.add_argument("--version", action="version", version=f"pdmdirac {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct the model and print a summary")
    _common_options(p)
    p.add_argument("--csv", default=None, help="also export the model table")

    p = sub.add_parser("verify", help="run the verification suite")
    _common_options(p)
    p.add_argument("--json", default=None, help="write the machine-readable report")

    p = sub.add_parser("figures", help="export figure CSV data")
    _common_options(p)
    p.add_argument("--out", default=os.environ.get("PDMDIRAC_OUTDIR"),
                   help="output directory (or set PDMDIRAC_OUTDIR)")
    p.add_argument("--which", choices=("1", "2", "both"), default="both")

    p = sub.add_parser("spectrum", help="print the algebraic energy table")
    _common_options(p)
    p.add_argument("--k-list", required=True,
                   help="comma-separated representation labels")
    p.add_argument("--oracle", action="store_true",
                   help="add a numerically cross-checked E^2 column")
    return ap


def _load(args):
    overrides = {"grid_n": args.grid_n, "margin": args.margin}
    defn, echo = load_config(args.config, overrides)
    return assemble(defn), echo


def cmd_build(args) -> int:
    bundle, echo = _load(args)
    d = bundle.definition
    entry = bundle.energy()
    print(f"model: {d.family_class.value} family, u = {d.u_kind}, "
          f"b = {d.b:g}, c = {d.c:g}")
    print(f"labels: k = {d.k:g}, s = {d.s:g}; ordering = {d.ordering_name} "
          f"(eta={d.ordering.eta:g}, beta={d.ordering.beta:g}, "
          f"gamma={d.ordering.gamma:g})")
    print(f"grid: [{d.x_min:g}, {d.x_max:g}], n = {d.n}, margin = {d.margin:g}")
    x = bundle.grid.nodes
    mid = x[x.size // 2]
    for name, prof in (("M", bundle.mass), ("v_f", bundle.v_f),
                       ("F", bundle.pair.F), ("G", bundle.pair.G),
                       ("V_s", bundle.V_s), ("W", bundle.W)):
        print(f"  {name}({mid:g}) = {prof(mid):.12g}")
    if d.k != 0.5:
        print("  note: W is the k = 1/2 pseudoscalar partner; "
              f"the configured k = {d.k:g} does not support a closed-form W")
    if bundle.chi0 is None:
        print(f"  chain states unavailable: {bundle.chi_error}")
    flag = "real" if entry.real_flag else "complex"
    e_str = f"{entry.E:.12g}" if entry.real_flag else "-"
    print(f"energy: A = {d.A:g}, E^2 = {entry.E_squared:.12g}, "
          f"E = {e_str} ({flag})")
    if args.csv:
        write_csv(args.csv, model_table(bundle), bundle_meta(bundle))
        print(f"wrote {args.csv}")
    return EXIT_OK


def cmd_verify(args) -> int:
    bundle, echo = _load(args)
    report = run_verification(bundle, config_echo=echo,
                              tolerance_scale=args.tolerance_scale)
    width = max(len(c.check_id) for c in report.checks)
    for c in report.checks:
        if c.skipped:
            status, detail = "SKIP", c.reason
        else:
            status = "PASS" if c.passed else "FAIL"
            detail = ""
            if c.max_residual is not None:
                detail = f"max residual {c.max_residual:.3e}"
                if c.tolerance is not None:
                    detail += f" (tol {c.tolerance:.1e})"
            if c.notes:
                detail = f"{detail}; {c.notes}" if detail else c.notes
        print(f"[{status}] {c.check_id:<{width}}  [{c.layer}] {detail}")
    n_pass, n_fail, n_skip = report.summary_counts()
    print(f"overall: {'PASS' if report.passed else 'FAIL'} "
          f"({n_pass} passed, {n_fail} failed, {n_skip} skipped)")
    if args.json:
        Path(args.json).write_text(report.to_json())
        print(f"wrote {args.json}")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_figures(args) -> int:
    bundle, _ = _load(args)
    if not args.out:
        raise ConfigError("figures requires --out DIR (or PDMDIRAC_OUTDIR)")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    d = bundle.definition
    paths = []
    if args.which in ("1", "both"):
        paths += export_figure_one(out, n=d.n, margin=d.margin)
    if args.which in ("2", "both"):
        paths += export_figure_two(out, n=d.n, margin=d.margin)
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    bundle, _ = _load(args)
    from .dirac import spectrum
    from .spectral import verify_algebraic_spectrum

    try:
        ks = [float(v) for v in args.k_list.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --k-list: {exc}") from exc
    if not ks:
        raise ConfigError("--k-list is empty")
    entries = spectrum(bundle.A, ks)
    header = f"{'k':>8}  {'E^2':>22}  {'E':>22}  {'real':>5}"
    if args.oracle:
        header += f"  {'E^2 (oracle)':>22}"
    print(header)
    code = EXIT_OK
    for e in entries:
        e_str = f"{e.E:.12g}" if e.real_flag else "-"
        line = (f"{e.k:8g}  {e.E_squared:22.12g}  {e_str:>22}  "
                f"{'yes' if e.real_flag else 'no':>5}")
        if args.oracle:
            rep = verify_algebraic_spectrum(bundle.pair, e.k)
            if rep.normalizable:
                line += f"  {bundle.A ** 2 + rep.lambda0:22.12g}"
            else:
                line += f"  {'n/a (formal level)':>22}"
        print(line)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"build": cmd_build, "verify": cmd_verify,
               "figures": cmd_figures, "spectrum": cmd_spectrum}[args.command]
    try:
        return handler(args)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PdmDiracError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
