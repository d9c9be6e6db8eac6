"""Command-line front end: fit, extrapolate, verify, and figure commands.

Input samples are two-column CSV (x, y) on an equispaced grid; outputs are
versioned JSON documents or CSV tables. Exit codes: 0 success, 1 failed
verification checks, 2 bad input or usage, 3 numerical solver failure.
"""

from __future__ import annotations

import argparse
import csv
import json as _json
import math
import os
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .basis import Grid, GridKind, SampleSet
from .extrapolator import ProblemParams, extrapolate, optimal_degree
from .fastgram import GramMethod
from .solver import SolverError, fit
from .vandermonde import Basis
from . import experiments, verify

SCHEMA_VERSION = 1
X_MATCH_TOL = 1e-12

_BASIS_FLAGS = {"cheb": Basis.CHEBYSHEV, "leg": Basis.LEGENDRE}


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# Serialization: floats carry 17 significant digits so every 64-bit value
# round-trips exactly. The stdlib json encoder cannot be coaxed into a fixed
# float format, hence this small writer.
# ---------------------------------------------------------------------------

def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def json_dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _write_json(obj, out, indent, 0)
    return "".join(out)


def _write_json(obj, out: list, indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(_json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(pad)
            out.append(_json.dumps(str(key)))
            out.append(": ")
            _write_json(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(seq):
            out.append(pad)
            _write_json(value, out, indent, level + 1)
            out.append(",\n" if i < len(seq) - 1 else "\n")
        out.append(end_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(document, output: str | None) -> None:
    text = json_dumps(document) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------

def read_samples_csv(path: str) -> SampleSet:
    """Parse a two-column x,y CSV (header optional) into an equispaced
    SampleSet, rejecting grids that do not match x_k = 2k/N - 1 to 1e-12."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise CliError(f"{path}: no data rows")
    start = 0
    try:
        float(rows[0][0])
    except (ValueError, IndexError):
        start = 1
    xs, ys = [], []
    for lineno, row in enumerate(rows[start:], start=start + 1):
        if len(row) != 2:
            raise CliError(f"{path}:{lineno}: expected two columns x,y, got {len(row)}")
        try:
            xs.append(float(row[0]))
            ys.append(float(row[1]))
        except ValueError as exc:
            raise CliError(f"{path}:{lineno}: {exc}") from exc
    if len(xs) < 2:
        raise CliError(f"{path}: need at least two samples")
    n = len(xs) - 1
    expected = 2.0 * np.arange(n + 1) / n - 1.0
    mismatch = np.abs(np.asarray(xs) - expected) > X_MATCH_TOL
    if np.any(mismatch):
        k = int(np.argmax(mismatch))
        raise CliError(
            f"{path}: x[{k}] = {xs[k]!r} does not match the equispaced grid "
            f"point 2*{k}/{n} - 1 = {expected[k]!r} to {X_MATCH_TOL}"
        )
    try:
        return SampleSet(Grid(expected, GridKind.EQUISPACED), np.asarray(ys))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _series_values(series, points: np.ndarray) -> np.ndarray:
    return np.asarray(series(points), dtype=float)


def cmd_fit(args) -> int:
    samples = read_samples_csv(args.input)
    basis = _BASIS_FLAGS[args.basis]
    auto_fields = {}
    if args.auto:
        if args.rho is None or args.eps is None or args.Q is None:
            raise CliError("--auto needs --rho, --eps, and --Q")
        params = ProblemParams(samples.n, args.rho, args.eps, args.Q)
        m_star, regime, degenerate = optimal_degree(params)
        degree = m_star
        auto_fields = {"M_star": m_star, "regime": regime.value,
                       "degenerate": degenerate}
    elif args.M is not None:
        degree = args.M
    else:
        raise CliError("either --M or --auto is required")

    gram = GramMethod(args.gram) if args.gram else None
    try:
        result = fit(samples, degree, basis=basis, gram_method=gram,
                     compute_cond=True)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    except SolverError as exc:
        raise CliError(str(exc), code=3) from exc

    resid = float(np.linalg.norm(samples.values - _series_values(result.series, samples.grid.points)))
    document = {
        "schema": SCHEMA_VERSION,
        "basis": basis.value,
        "M": result.m_degree,
        "N": result.n_samples,
        **auto_fields,
        "coeffs": [float(c) for c in result.series.coeffs],
        "gram_cond_estimate": result.gram_cond_estimate,
        "residual": resid,
        "warnings": list(result.warnings),
    }
    _emit(document, args.output)
    return 0


def cmd_extrapolate(args) -> int:
    samples = read_samples_csv(args.input)
    if args.rho is None or args.eps is None or args.Q is None:
        raise CliError("extrapolate needs --rho, --eps, and --Q")
    try:
        xs = [float(tok) for tok in args.at.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliError(f"bad --at list: {exc}") from exc
    if not xs:
        raise CliError("--at needs at least one evaluation point")
    try:
        params = ProblemParams(samples.n, args.rho, args.eps, args.Q)
        report = extrapolate(samples, params, xs)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    except SolverError as exc:
        raise CliError(str(exc), code=3) from exc

    document = {
        "schema": SCHEMA_VERSION,
        "N": samples.n,
        "rho": params.rho,
        "eps": params.eps,
        "Q": params.q,
        "M_star": report.m_star,
        "regime": report.regime.value,
        "degenerate": report.degenerate,
        "sigma_min": report.sigma_min,
        "points": [
            {
                "x": p.x,
                "value": p.value,
                "r": p.r,
                "alpha": p.alpha,
                "bound_explicit": p.bound_explicit,
                "bound_factor": p.bound_asymptotic_factor,
                "regime": report.regime.value,
                "M_star": report.m_star,
            }
            for p in report.points
        ],
    }
    _emit(document, args.output)
    return 0


def cmd_verify(args) -> int:
    if args.suite is None:
        raise CliError("verify needs --suite")
    try:
        results = verify.run_suite(args.suite, m_degree=args.M, n_samples=args.N)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit([asdict(r) for r in results], args.output)
    return 0 if all(r.passed for r in results) else 1


_FIGURE_DEFAULT_RHO = 1.0 + math.sqrt(2.0)
_FIGURE_DEFAULT_EPS = 2.2e-16


def cmd_figure(args) -> int:
    if args.figure is None:
        raise CliError("figure needs --figure {1..5}")
    outdir = Path(args.output) if args.output else Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    fig = args.figure
    rho = args.rho if args.rho is not None else _FIGURE_DEFAULT_RHO
    eps = args.eps if args.eps is not None else _FIGURE_DEFAULT_EPS

    if fig == 1:
        profile = experiments.run_alpha_profile(rho, eps, x_count=513)
        experiments.Table("alpha", {
            "x": profile.columns["x"],
            "alpha": profile.columns["alpha"],
        }).write_csv(outdir / "figure1_alpha.csv")
        experiments.Table("factor", {
            "x": profile.columns["x"],
            "factor": profile.columns["factor"],
            "capped": profile.columns["capped"],
        }).write_csv(outdir / "figure1_factor.csv")
    elif fig == 2:
        table = experiments.run_singular_bounds_sweep(range(10, 402))
        table.write_csv(outdir / "figure2_singular_bounds.csv")
    elif fig == 3:
        xs = (1.0, 1.1, 1.2, 1.3, 1.4, 1.5)
        for f_id, fname in (("inv1px2", "figure3_left.csv"),
                            ("inv1p2x2", "figure3_right.csv")):
            experiments.run_extrapolation_decay(f_id, xs, m_max=40).write_csv(outdir / fname)
    elif fig == 4:
        if args.seed is None:
            raise CliError("figure 4 draws noise and needs --seed for reproducibility")
        result = experiments.run_noise_plateau(
            m_degree=100, n_list=(40_000, 4_000_000), s=1e-3, seed=args.seed)
        result.table.write_csv(outdir / "figure4_coefficients.csv")
    elif fig == 5:
        table = experiments.run_gram_timing(
            m_degree=50, n_list=(10_000, 100_000, 1_000_000))
        table.write_csv(outdir / "figure5_timing.csv")
    else:
        raise CliError(f"unknown figure {fig}; expected 1..5")
    return 0


# ---------------------------------------------------------------------------
# Parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stable-extrap",
        description=("Stable least-squares polynomial fitting and extrapolation "
                     "from perturbed equispaced samples."),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, io=True):
        if io:
            p.add_argument("--input", help="input CSV of x,y samples")
            p.add_argument("--output", help="output file (defaults to stdout)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker thread hint (falls back to STABLE_EXTRAP_THREADS)")

    p_fit = sub.add_parser("fit", help="least-squares polynomial fit")
    common(p_fit)
    p_fit.add_argument("--M", type=int, help="fit degree")
    p_fit.add_argument("--auto", action="store_true",
                       help="choose the degree from --rho/--eps/--Q")
    p_fit.add_argument("--rho", type=float)
    p_fit.add_argument("--eps", type=float)
    p_fit.add_argument("--Q", type=float)
    p_fit.add_argument("--basis", choices=sorted(_BASIS_FLAGS), default="cheb")
    p_fit.add_argument("--gram", choices=[m.value for m in GramMethod], default=None)

    p_ext = sub.add_parser("extrapolate", help="evaluate beyond [-1, 1] with bounds")
    common(p_ext)
    p_ext.add_argument("--rho", type=float)
    p_ext.add_argument("--eps", type=float)
    p_ext.add_argument("--Q", type=float)
    p_ext.add_argument("--at", required=True,
                       help="comma-separated evaluation points in [1, (rho+1/rho)/2)")

    p_ver = sub.add_parser("verify", help="run a named inequality suite")
    common(p_ver, io=False)
    p_ver.add_argument("--output", help="output file (defaults to stdout)")
    p_ver.add_argument("--suite", help=f"one of: {', '.join(verify.SUITE_NAMES)}")
    p_ver.add_argument("--M", type=int, default=None)
    p_ver.add_argument("--N", type=int, default=None)

    p_fig = sub.add_parser("figure", help="write experiment CSVs")
    common(p_fig, io=False)
    p_fig.add_argument("--figure", type=int, help="figure id, 1-5")
    p_fig.add_argument("--output", help="output directory (default: .)")
    p_fig.add_argument("--rho", type=float)
    p_fig.add_argument("--eps", type=float)
    p_fig.add_argument("--seed", type=int, default=None)

    return parser


def _apply_threads(args) -> None:
    threads = getattr(args, "threads", None)
    if threads is None:
        env = os.environ.get("STABLE_EXTRAP_THREADS")
        if env:
            try:
                threads = int(env)
            except ValueError as exc:
                raise CliError(f"bad STABLE_EXTRAP_THREADS={env!r}") from exc
    if threads is not None:
        if threads < 1:
            raise CliError("--threads must be positive")
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(threads)


_COMMANDS = {
    "fit": cmd_fit,
    "extrapolate": cmd_extrapolate,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_threads(args)
        if getattr(args, "input", None) is None and args.command in ("fit", "extrapolate"):
            raise CliError(f"{args.command} needs --input")
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"stable-extrap: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
