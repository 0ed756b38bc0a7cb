"""Command-line front end: config parsing, experiment dispatch, CSV and SVG
emission.

Every run writes deterministic artifacts — identical configuration and seed
produce byte-identical files.  Output files open with ``#`` comment lines
carrying the tool version, the effective configuration, and the checksums of
every mesh involved, so results can be traced back to their inputs.

Exit codes: 0 success, 1 invalid input or configuration, 2 solver failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import __version__, problems
from ._fit import SlopeFit, fit_slope
from .errors import SolverError, ValidationError
from .mesh import (
    PerforationSpec,
    build_perforated_rectangle,
    build_polar_mesh,
    build_rectangle_grid,
    build_torus_cell,
    export_mesh_text,
    mesh_checksum,
)
from .problems import ProblemKind, TableReport, solve_problem

__all__ = ["main", "fit_slope", "SlopeFit", "emit_csv", "emit_svg"]


def parse_fraction(text: str) -> float:
    """Parse a number given as a decimal or a fraction like ``1/8``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


def parse_number_list(text: str) -> list[float]:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise ValueError("empty list")
    return [parse_fraction(t) for t in items]


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which this tool reserves
    # for solver failures; remap to the validation exit code.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _format_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return "%.17g" % v
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    return str(v)


def _header_lines(title: str, config: dict, meta: dict) -> list[str]:
    lines = [f"# steklov-lab {__version__}", f"# {title}"]
    for key in sorted(config):
        lines.append(f"# config.{key} = {_format_value(config[key])}")
    for key in sorted(meta):
        lines.append(f"# {key} = {_format_value(meta[key])}")
    return lines


def emit_csv(report: TableReport, path: str, config: dict | None = None) -> None:
    """Write a report as CSV: ``#`` comment header, snake_case columns,
    17-significant-digit decimals."""
    lines = _header_lines(report.title, config or {}, report.meta)
    lines.append(",".join(report.columns))
    for row in report.rows:
        lines.append(
            ",".join(
                "%.17g" % v if isinstance(v, float) else str(v) for v in row
            )
        )
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 34, 52


def _svg_series(report: TableReport):
    """Extract (x, ys) plot data, dropping rows a log axis cannot show."""
    xi = report.columns.index(report.x_column)
    yis = [report.columns.index(c) for c in report.y_columns]
    xs, ys = [], [[] for _ in yis]
    for row in report.rows:
        x = float(row[xi])
        vals = [float(row[j]) for j in yis]
        if report.log_x and x <= 0:
            continue
        keep = [
            (v if not (report.log_y and v <= 0) else None) for v in vals
        ]
        xs.append(x)
        for s, v in zip(ys, keep):
            s.append(v)
    return xs, ys


def emit_svg(report: TableReport, path: str, config: dict | None = None) -> bool:
    """Write a minimal polyline chart; returns False when there is nothing
    to plot (no rows or no plottable columns)."""
    if not report.rows or report.x_column is None or not report.y_columns:
        return False
    xs, ys = _svg_series(report)
    pts = [v for s in ys for v in s if v is not None]
    if len(xs) < 2 or not pts:
        return False
    tx = np.log10(xs) if report.log_x else np.asarray(xs, dtype=np.float64)
    lo_x, hi_x = float(tx.min()), float(tx.max())
    ty = np.log10(pts) if report.log_y else np.asarray(pts, dtype=np.float64)
    lo_y, hi_y = float(ty.min()), float(ty.max())
    if hi_x == lo_x:
        hi_x = lo_x + 1.0
    if hi_y == lo_y:
        hi_y = lo_y + 1.0
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(x):
        t = np.log10(x) if report.log_x else x
        return _ML + (t - lo_x) / (hi_x - lo_x) * pw

    def py(y):
        t = np.log10(y) if report.log_y else y
        return _MT + ph - (t - lo_y) / (hi_y - lo_y) * ph

    def back_x(t):
        return 10.0**t if report.log_x else t

    def back_y(t):
        return 10.0**t if report.log_y else t

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" '
        'stroke="#333" stroke-width="1"/>',
        f'<text x="{_W / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{report.title}</text>',
    ]
    n_ticks = 5
    for i in range(n_ticks):
        f = i / (n_ticks - 1)
        gx = _ML + f * pw
        gy = _MT + ph - f * ph
        xv = back_x(lo_x + f * (hi_x - lo_x))
        yv = back_y(lo_y + f * (hi_y - lo_y))
        out.append(
            f'<line x1="{gx:.2f}" y1="{_MT + ph}" x2="{gx:.2f}" '
            f'y2="{_MT + ph + 5}" stroke="#333"/>'
        )
        out.append(
            f'<text x="{gx:.2f}" y="{_MT + ph + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{xv:.3g}</text>'
        )
        out.append(
            f'<line x1="{_ML - 5}" y1="{gy:.2f}" x2="{_ML}" y2="{gy:.2f}" '
            'stroke="#333"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{gy + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{yv:.3g}</text>'
        )
    out.append(
        f'<text x="{_ML + pw / 2:.1f}" y="{_H - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{report.x_column}'
        f'{" (log)" if report.log_x else ""}</text>'
    )
    out.append(
        f'<text x="16" y="{_MT + ph / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_MT + ph / 2:.1f})">value'
        f'{" (log)" if report.log_y else ""}</text>'
    )
    for si, (name, series) in enumerate(zip(report.y_columns, ys)):
        color = _PALETTE[si % len(_PALETTE)]
        coords = [
            f"{px(x):.2f},{py(v):.2f}"
            for x, v in zip(xs, series)
            if v is not None
        ]
        if len(coords) >= 2:
            out.append(
                f'<polyline points="{" ".join(coords)}" fill="none" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
        for x, v in zip(xs, series):
            if v is not None:
                out.append(
                    f'<circle cx="{px(x):.2f}" cy="{py(v):.2f}" r="2.5" '
                    f'fill="{color}"/>'
                )
        ly = _MT + 14 + 16 * si
        out.append(
            f'<line x1="{_ML + pw - 150}" y1="{ly - 4}" x2="{_ML + pw - 126}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{_ML + pw - 120}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{name}</text>'
        )
    out.append("</svg>")
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(out) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return True


def _build_mesh(cfg: dict):
    kind = cfg["domain"]
    if kind == "grid":
        return build_rectangle_grid(cfg["width"], cfg["height"], cfg["nx"], cfg["ny"])
    if kind == "perforated":
        spec = PerforationSpec(
            epsilon=cfg["eps"],
            beta=cfg["beta"],
            nodes_per_cell_edge=cfg["nodes_per_cell_edge"],
        )
        return build_perforated_rectangle(
            cfg["width"], cfg["height"], spec, fill_holes=cfg["fill_holes"]
        )
    if kind == "disk":
        return build_polar_mesh(0.0, cfg["radius"], cfg["rings"], cfg["sectors"])
    if kind == "annulus":
        return build_polar_mesh(
            cfg["inner"], cfg["radius"], cfg["rings"], cfg["sectors"]
        )
    if kind == "torus":
        return build_torus_cell(cfg["rho"], cfg["nodes_per_cell_edge"])
    raise ValidationError(
        f"unknown domain {kind!r}; expected grid, perforated, disk, annulus "
        "or torus"
    )


def _out_path(cfg: dict, name: str) -> str:
    out_dir = os.environ.get("STEKLOV_LAB_OUT") or cfg["out"]
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def _cmd_mesh(cfg: dict) -> int:
    mesh = _build_mesh(cfg)
    path = _out_path(cfg, "mesh.txt")
    export_mesh_text(mesh, path)
    print(f"{path}: {mesh.n_vertices} vertices, {mesh.n_triangles} triangles,")
    print(f"checksum {mesh_checksum(mesh)}")
    return 0


def _cmd_solve(cfg: dict) -> int:
    mesh = _build_mesh(cfg)
    kind = ProblemKind.parse(cfg["problem"])
    spectrum = solve_problem(
        mesh, kind, k=cfg["k"], beta=cfg["beta"], seed=cfg["seed"]
    )
    functionals = problems.shape_functionals(
        kind, spectrum.eigenvalues, mesh, beta=cfg["beta"]
    )
    report = TableReport(
        title=f"{kind.value} spectrum on {cfg['domain']}",
        columns=["index", "eigenvalue", "residual", "functional"],
        rows=[
            (i, float(spectrum.eigenvalues[i]), float(spectrum.residuals[i]),
             float(functionals[i]))
            for i in range(len(spectrum))
        ],
        meta={"mesh_checksum": mesh_checksum(mesh)},
    )
    path = _out_path(cfg, "spectrum.csv")
    emit_csv(report, path, cfg)
    print(f"{path}: eigenvalues "
          + " ".join("%.6g" % v for v in spectrum.eigenvalues))
    return 0


def _cmd_sweep_homog(cfg: dict) -> int:
    rep = problems.run_homogenisation_sweep(
        cfg["eps"],
        cfg["beta"],
        k_max=cfg["k"],
        nodes_per_cell_edge=cfg["nodes_per_cell_edge"],
        seed=cfg["seed"],
        jobs=cfg["jobs"],
    )
    table = rep.table()
    emit_csv(table, _out_path(cfg, "sweep_homog.csv"), cfg)
    emit_svg(table, _out_path(cfg, "sweep_homog.svg"), cfg)
    final = ", ".join("%.3g" % g for g in rep.gaps[-1])
    print(f"homogenisation sweep over eps={cfg['eps']}: final gaps {final}")
    return 0


def _cmd_sweep_beta(cfg: dict) -> int:
    rep = problems.run_beta_sweep(
        cfg["beta_list"],
        k_max=cfg["k"],
        domain=cfg["domain"],
        resolution=cfg["resolution"],
        seed=cfg["seed"],
    )
    table = rep.table()
    emit_csv(table, _out_path(cfg, "sweep_beta.csv"), cfg)
    emit_svg(table, _out_path(cfg, "sweep_beta.svg"), cfg)
    slope = rep.slopes[0]
    msg = "n/a" if slope is None else "%.4g" % slope.slope
    print(f"beta sweep on {cfg['domain']}: gap slope {msg}, "
          f"final gap {rep.gaps[-1, 0]:.3g}")
    return 0


def _cmd_annulus_opt(cfg: dict) -> int:
    rep = problems.run_annulus_profile(cfg["lo"], cfg["hi"], cfg["points"])
    table = rep.table()
    emit_csv(table, _out_path(cfg, "annulus_opt.csv"), cfg)
    emit_svg(table, _out_path(cfg, "annulus_opt.svg"), cfg)
    opt = rep.optimum
    print(f"annulus optimum: inner radius {opt.inner_radius:.6f}, "
          f"functional {opt.value:.6f} = {opt.value_over_pi:.4f} pi")
    return 0


def _cmd_cell_scaling(cfg: dict) -> int:
    rep = problems.run_cell_scaling(
        cfg["eps"],
        cfg["beta"],
        nodes_per_cell_edge=cfg["nodes_per_cell_edge"],
        gate=not cfg["no_gate"],
    )
    table = rep.table()
    emit_csv(table, _out_path(cfg, "cell_scaling.csv"), cfg)
    emit_svg(table, _out_path(cfg, "cell_scaling.svg"), cfg)
    print(f"cell scaling: H1 slope {rep.slope.slope:.4f} "
          f"(r2 {rep.slope.r_squared:.4f}), "
          f"max ratio growth {rep.ratio_growth.max():.2%}")
    return 0


def _cmd_verify_lemma31(cfg: dict) -> int:
    rep = problems.verify_lemma31(constant=cfg["constant"], slack=cfg["slack"])
    table = rep.table()
    emit_csv(table, _out_path(cfg, "lemma31.csv"), cfg)
    status = "PASS" if rep.n_violations == 0 else "FAIL"
    print(f"energy inequality sweep: {rep.n_checked} combinations, "
          f"{rep.n_skipped} out of regime, {rep.n_violations} violations, "
          f"worst ratio {rep.worst_ratio:.6f} vs allowance "
          f"{rep.constant * (1 + rep.slack):.4f} -> {status}")
    return 0 if rep.n_violations == 0 else 1


def _cmd_verify_extension(cfg: dict) -> int:
    spec = PerforationSpec(
        epsilon=cfg["eps"],
        beta=cfg["beta"],
        nodes_per_cell_edge=cfg["nodes_per_cell_edge"],
    )
    mesh = build_perforated_rectangle(
        cfg["width"], cfg["height"], spec, fill_holes=True
    )
    rep = problems.verify_extension_energy(
        mesh, mode_index=cfg["k"], seed=cfg["seed"]
    )
    table = rep.table()
    emit_csv(table, _out_path(cfg, "extension.csv"), cfg)
    print(f"extension energies at eps={cfg['eps']:.6g}: aggregate ratio "
          f"{rep.aggregate:.4f}, worst hole {rep.per_hole.max():.4f}")
    return 0


_COMMANDS = {
    "mesh": _cmd_mesh,
    "solve": _cmd_solve,
    "sweep-homog": _cmd_sweep_homog,
    "sweep-beta": _cmd_sweep_beta,
    "annulus-opt": _cmd_annulus_opt,
    "cell-scaling": _cmd_cell_scaling,
    "verify-lemma31": _cmd_verify_lemma31,
    "verify-extension": _cmd_verify_extension,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="steklov-lab", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="TOML file with option defaults")
        p.add_argument("--out", help="output directory (default ./out; "
                       "the STEKLOV_LAB_OUT environment variable wins)")
        p.add_argument("--seed", type=int, help="eigensolver start-vector seed")

    p = sub.add_parser("mesh", help="build a mesh and export it as text")
    common(p)
    p.add_argument("--domain", choices=["grid", "perforated", "disk", "annulus", "torus"])
    p.add_argument("--width", type=parse_fraction)
    p.add_argument("--height", type=parse_fraction)
    p.add_argument("--nx", type=int)
    p.add_argument("--ny", type=int)
    p.add_argument("--eps", type=parse_fraction, help="cell size, e.g. 1/8")
    p.add_argument("--beta", type=parse_fraction)
    p.add_argument("--inner", type=parse_fraction)
    p.add_argument("--radius", type=parse_fraction)
    p.add_argument("--rings", type=int)
    p.add_argument("--sectors", type=int)
    p.add_argument("--rho", type=parse_fraction)
    p.add_argument("--nodes-per-cell-edge", type=int)
    p.add_argument("--fill-holes", action="store_const", const=True)

    p = sub.add_parser("solve", help="solve one eigenvalue problem")
    common(p)
    p.add_argument("--problem", choices=["steklov", "neumann", "dynamical"])
    p.add_argument("--domain", choices=["grid", "perforated", "disk", "annulus"])
    p.add_argument("--width", type=parse_fraction)
    p.add_argument("--height", type=parse_fraction)
    p.add_argument("--nx", type=int)
    p.add_argument("--ny", type=int)
    p.add_argument("--eps", type=parse_fraction)
    p.add_argument("--beta", type=parse_fraction)
    p.add_argument("--inner", type=parse_fraction)
    p.add_argument("--radius", type=parse_fraction)
    p.add_argument("--rings", type=int)
    p.add_argument("--sectors", type=int)
    p.add_argument("--nodes-per-cell-edge", type=int)
    p.add_argument("--fill-holes", action="store_const", const=True)
    p.add_argument("--k", type=int, help="number of eigenpairs")

    p = sub.add_parser("sweep-homog", help="perforated Steklov spectra vs the "
                       "boundary-coupled reference")
    common(p)
    p.add_argument("--beta", type=parse_fraction)
    p.add_argument("--eps", type=parse_number_list, help="comma list, e.g. 1/8,1/16")
    p.add_argument("--k", type=int, help="number of nonzero clusters")
    p.add_argument("--nodes-per-cell-edge", type=int)
    p.add_argument("--jobs", type=int, help="parallel sweep workers")

    p = sub.add_parser("sweep-beta", help="boundary-coupled eigenvalues vs the "
                       "Neumann limit")
    common(p)
    p.add_argument("--domain", choices=["disk", "square"])
    p.add_argument("--beta", dest="beta_list", type=parse_number_list,
                   help="comma list, e.g. 10,100,1000")
    p.add_argument("--k", type=int)
    p.add_argument("--resolution", type=int, help="grid points per side (square)")

    p = sub.add_parser("annulus-opt", help="profile and maximise the "
                       "perimeter-normalised annulus eigenvalue")
    common(p)
    p.add_argument("--lo", type=parse_fraction)
    p.add_argument("--hi", type=parse_fraction)
    p.add_argument("--points", type=int)

    p = sub.add_parser("cell-scaling", help="unit-cell corrector norms along "
                       "a period sequence")
    common(p)
    p.add_argument("--eps", type=parse_number_list)
    p.add_argument("--beta", type=parse_fraction)
    p.add_argument("--nodes-per-cell-edge", type=int)
    p.add_argument("--no-gate", action="store_const", const=True,
                   help="skip the resolution-doubling convergence gate")

    p = sub.add_parser("verify-lemma31", help="annular test-mode energy "
                       "inequality sweep")
    common(p)
    p.add_argument("--constant", type=parse_fraction)
    p.add_argument("--slack", type=parse_fraction)

    p = sub.add_parser("verify-extension", help="hole-extension energy ratios "
                       "of a Steklov mode")
    common(p)
    p.add_argument("--eps", type=parse_fraction)
    p.add_argument("--beta", type=parse_fraction)
    p.add_argument("--k", type=int, help="mode index (1 = first nonzero)")
    p.add_argument("--width", type=parse_fraction)
    p.add_argument("--height", type=parse_fraction)
    p.add_argument("--nodes-per-cell-edge", type=int)

    return parser


_DEFAULTS = {
    "mesh": {
        "domain": "grid", "width": 1.0, "height": 1.0, "nx": 16, "ny": 16,
        "eps": 0.125, "beta": 1.0, "inner": 0.5, "radius": 1.0, "rings": 16,
        "sectors": 64, "rho": 0.25, "nodes_per_cell_edge": 8,
        "fill_holes": False,
    },
    "solve": {
        "problem": "steklov", "domain": "grid", "width": 1.0, "height": 1.0,
        "nx": 64, "ny": 64, "eps": 0.125, "beta": 0.0, "inner": 0.5,
        "radius": 1.0, "rings": 16, "sectors": 64, "nodes_per_cell_edge": 8,
        "fill_holes": False, "k": 6,
    },
    "sweep-homog": {
        "beta": 1.0, "eps": [1 / 8, 1 / 16, 1 / 32], "k": 3,
        "nodes_per_cell_edge": 8, "jobs": 1,
    },
    "sweep-beta": {
        "domain": "disk", "beta_list": [10.0, 100.0, 1000.0, 10000.0],
        "k": 1, "resolution": 48,
    },
    "annulus-opt": {"lo": 0.02, "hi": 0.8, "points": 80},
    "cell-scaling": {
        "eps": [1 / 8, 1 / 16, 1 / 32, 1 / 64], "beta": 1.0,
        "nodes_per_cell_edge": 16, "no_gate": False,
    },
    "verify-lemma31": {"constant": 5.0, "slack": 0.05},
    "verify-extension": {
        "eps": 1 / 16, "beta": 1.0, "k": 1, "width": 1.0, "height": 1.0,
        "nodes_per_cell_edge": 8,
    },
}

_COMMON_DEFAULTS = {"out": "out", "seed": 0}


def _load_config_file(path: str, command: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"invalid TOML in {path}: {exc}") from exc
    known = _DEFAULTS[command] | _COMMON_DEFAULTS
    cfg = {}
    for key, value in data.items():
        name = key.replace("-", "_")
        if name not in known:
            raise ValidationError(
                f"unknown config key {key!r} for command {command}"
            )
        template = known[name]
        try:
            if isinstance(template, list):
                value = [parse_fraction(v) if isinstance(v, str) else float(v)
                         for v in value]
            elif isinstance(template, str):
                value = str(value)
            elif isinstance(template, bool):
                if not isinstance(value, bool):
                    raise ValidationError(
                        f"config key {key!r} must be a boolean"
                    )
            elif isinstance(template, int):
                value = int(value)
            elif isinstance(template, float):
                value = (parse_fraction(value) if isinstance(value, str)
                         else float(value))
        except (ValueError, TypeError) as exc:
            raise ValidationError(f"config key {key!r}: {exc}") from None
        cfg[name] = value
    return cfg


def _effective_config(args: argparse.Namespace) -> dict:
    command = args.command
    cfg = dict(_DEFAULTS[command] | _COMMON_DEFAULTS)
    if args.config:
        cfg.update(_load_config_file(args.config, command))
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        cfg[key] = value
    for key in ("eps", "lo", "hi", "width", "height", "rho",
                "inner", "radius", "constant", "slack"):
        if key in cfg:
            vals = cfg[key] if isinstance(cfg[key], list) else [cfg[key]]
            if any(v <= 0 for v in vals):
                raise ValidationError(f"{key} must be positive, got {cfg[key]}")
    for key in ("nx", "ny", "k", "rings", "sectors", "points", "jobs",
                "resolution", "nodes_per_cell_edge"):
        if key in cfg and cfg[key] < 1:
            raise ValidationError(f"{key} must be at least 1, got {cfg[key]}")
    if "beta" in cfg and not isinstance(cfg["beta"], list) and cfg["beta"] < 0:
        raise ValidationError(f"beta must be nonnegative, got {cfg['beta']}")
    return cfg


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _effective_config(args)
        return _COMMANDS[args.command](cfg)
    except SystemExit as exc:  # argparse usage error or --version/--help
        code = exc.code
        return code if isinstance(code, int) else 0
    except ValidationError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error (OSError): {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
