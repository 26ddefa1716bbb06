"""Command-line front end: runs, sweeps, criteria checks, convergence studies.

All outputs are RFC-4180 CSV files with fixed headers. Identical configs
produce bit-identical files: the arithmetic is fixed-order and nothing is
seeded from the clock.
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .diagnostics import BlowupReport, build_report, convergence_study
from .integrator import Status, Trajectory, integrate
from .model import ProblemSpec, check_blowup_criteria
from .presets import PRESET_ALIASES, PRESETS

MONITOR_HEADER = ["t", "sup_norm", "energy", "min_value", "argmax_x"]
SNAPSHOT_HEADER = ["t", "x", "u"]
REPORT_HEADER = [
    "status",
    "t_stop",
    "T_est",
    "T_lower",
    "T_upper",
    "rate_exponent",
    "blowup_x",
    "J0",
    "J0_negative",
    "b_below_crit",
    "norm_above_threshold",
    "initial_derivative_nonneg",
    "theorem_applies",
]
SUMMARY_HEADER = ["value", "status", "t_stop", "T_est", "min_value_overall", "blowup_x"]
CRITERIA_HEADER = [
    "J0",
    "J0_negative",
    "q_regime",
    "b_inf",
    "b_crit",
    "b_below_crit",
    "norm_p1",
    "norm_threshold",
    "norm_above_threshold",
    "initial_derivative_min",
    "initial_derivative_nonneg",
    "theorem_applies",
    "c",
    "beta",
]
CONVERGENCE_HEADER = ["N", "h", "error", "order", "flag"]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Status):
        return value.value
    return format(float(value), ".17g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_run_outputs(out_dir: Path, prefix: str, traj: Trajectory, report: BlowupReport) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    g = traj.grid
    mon = traj.monitors
    monitors_path = out_dir / f"{prefix}monitors.csv"
    _write_csv(
        monitors_path,
        MONITOR_HEADER,
        zip(mon.t, mon.sup_norm, mon.energy, mon.min_value, g.nodes[mon.argmax_node]),
    )
    snapshots_path = out_dir / f"{prefix}snapshots.csv"
    _write_csv(
        snapshots_path,
        SNAPSHOT_HEADER,
        ((t, x, u) for t, state in traj.snapshots for x, u in zip(g.nodes, state)),
    )
    crit = report.criteria
    report_path = out_dir / f"{prefix}report.csv"
    _write_csv(
        report_path,
        REPORT_HEADER,
        [
            (
                report.status,
                report.t_stop,
                report.t_est,
                report.t_lower,
                report.t_upper,
                report.rate_exponent,
                report.blowup_x,
                crit.J0,
                crit.J0_negative,
                crit.b_below_crit,
                crit.norm_above_threshold,
                crit.initial_derivative_nonneg,
                crit.theorem_applies,
            )
        ],
    )
    return [monitors_path, snapshots_path, report_path]


def run_config(config: RunConfig) -> tuple[Trajectory, BlowupReport, ProblemSpec]:
    spec, g = config.build_problem()
    traj = integrate(spec, g, config.integrator_config())
    return traj, build_report(traj, spec), spec


def cmd_run(args) -> int:
    config = load_config(args.config, args.set, args.preset)
    traj, report, _ = run_config(config)
    out_dir = config.resolve_out_dir(args.out)
    paths = write_run_outputs(out_dir, config.prefix, traj, report)
    if not args.quiet:
        print(f"status: {report.status.value}  t_stop: {report.t_stop:.6g}")
        if report.t_est is not None:
            print(
                f"T_est: {report.t_est:.6g}  bounds: "
                f"[{_fmt(report.t_lower) or 'n/a'}, {_fmt(report.t_upper) or 'n/a'}]"
            )
        if report.blowup_x is not None:
            print(f"blow-up node x = {report.blowup_x:.6g}" + (" (tie)" if report.blowup_tie else ""))
        for path in paths:
            print(f"wrote {path}")
    return 0


_SWEEP_PARAMS = {"b_const", "q", "p", "N"}


def _sweep_one(config: RunConfig, parameter: str, value: float):
    if parameter == "N":
        cfg = replace(config, n_interior=int(value))
    elif parameter == "b_const":
        cfg = replace(config, b_kind="const", b_const=value)
    else:
        cfg = replace(config, **{parameter: value})
    traj, report, _ = run_config(cfg)
    return (
        value,
        report.status,
        report.t_stop,
        report.t_est,
        float(np.min(traj.monitors.min_value)),
        report.blowup_x,
    )


def cmd_sweep(args) -> int:
    config = load_config(args.config, args.set, args.preset)
    if args.parameter not in _SWEEP_PARAMS:
        print(f"error: parameter must be one of {sorted(_SWEEP_PARAMS)}", file=sys.stderr)
        return 2
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    if not values:
        print("error: empty sweep values", file=sys.stderr)
        return 2
    try:
        numeric = [float(v) for v in values]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    rows = []
    with ThreadPoolExecutor(max_workers=min(8, len(numeric))) as pool:
        futures = [pool.submit(_sweep_one, config, args.parameter, v) for v in numeric]
        for value, future in zip(numeric, futures):
            try:
                rows.append(future.result())
            except Exception as exc:  # failed value: record, keep sweeping
                rows.append((value, "Failed", None, None, None, None))
                if not args.quiet:
                    print(f"value {value}: failed ({exc})", file=sys.stderr)

    out_dir = config.resolve_out_dir(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{config.prefix}summary.csv"
    _write_csv(path, SUMMARY_HEADER, rows)
    if not args.quiet:
        for row in rows:
            status = row[1].value if isinstance(row[1], Status) else row[1]
            print(f"{args.parameter}={row[0]:g}: {status}")
        print(f"wrote {path}")
    return 0


def cmd_criteria(args) -> int:
    config = load_config(args.config, args.set, args.preset)
    spec, g = config.build_problem()
    crit = check_blowup_criteria(spec, g)
    if not args.quiet:
        for line in crit.summary_lines():
            print(line)
    out_dir = config.resolve_out_dir(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{config.prefix}criteria.csv"
    c = crit.constants
    _write_csv(
        path,
        CRITERIA_HEADER,
        [
            (
                crit.J0,
                crit.J0_negative,
                crit.q_regime,
                crit.b_inf,
                crit.b_crit,
                crit.b_below_crit,
                crit.norm_p1,
                crit.norm_threshold,
                crit.norm_above_threshold,
                crit.initial_derivative_min,
                crit.initial_derivative_nonneg,
                crit.theorem_applies,
                c.c,
                c.beta,
            )
        ],
    )
    if not args.quiet:
        print(f"wrote {path}")
    return 0


def cmd_converge(args) -> int:
    config = load_config(args.config, args.set, args.preset)
    grids = [int(v) for v in args.grids.split(",") if v.strip()]
    if len(grids) < 3:
        print("error: need at least 3 grid sizes", file=sys.stderr)
        return 2

    def family(g):
        return ProblemSpec.from_functions(
            config.p, config.q, config.b_function(), config.u0_function(), g
        )

    cfg = config.integrator_config()
    report = convergence_study(family, grids, args.t_check, cfg=cfg, ref_refine=args.ref_refine)
    rows = []
    for i, (n, h, err) in enumerate(zip(report.n_values, report.h_values, report.errors)):
        order = report.orders[i - 1] if i > 0 else None
        flag = "stopped-before-t-check" if not np.isfinite(err) else ""
        rows.append((n, h, None if not np.isfinite(err) else err, order, flag))
    out_dir = config.resolve_out_dir(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{config.prefix}convergence.csv"
    _write_csv(path, CONVERGENCE_HEADER, rows)
    if not args.quiet:
        print(f"reference grid: N={report.n_reference}")
        for row in rows:
            print(f"N={row[0]}: h={row[1]:.5g} error={row[2]} order={row[3]}")
        for flag in report.flags:
            print(f"flag: {flag}")
        print(f"wrote {path}")
    return 0


def cmd_presets(args) -> int:
    for name, preset in PRESETS.items():
        b_desc = f"b={preset.b_const:g}" if preset.b_kind == "const" else f"b:{preset.b_kind}"
        print(
            f"{name:7s} [{preset.figure_tag}] u0={preset.u0_kind} {b_desc} "
            f"p={preset.p:g} q={preset.q:g} N={preset.n_interior} -- {preset.description}"
        )
    alias_text = ", ".join(f"{a}->{t}" for a, t in PRESET_ALIASES.items())
    print(f"aliases: {alias_text}")
    return 0


def _add_common(parser):
    parser.add_argument("--config", help="path to key=value config file")
    parser.add_argument("--out", help="output directory (overrides config and BLOWUPLAB_OUT)")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )
    parser.add_argument("--preset", help="start from a named preset")
    parser.add_argument("--quiet", action="store_true", help="suppress console output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowuplab",
        description="Semidiscrete blow-up simulator for u_t = u_xx + |u|^p - b(x)|u_x|^q",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate one configuration and write CSV outputs")
    _add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a one-parameter sweep")
    _add_common(p_sweep)
    p_sweep.add_argument("--param", dest="parameter", required=True, help="b_const, q, p or N")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.set_defaults(func=cmd_sweep)

    p_crit = sub.add_parser("criteria", help="evaluate blow-up criteria on the initial data")
    _add_common(p_crit)
    p_crit.set_defaults(func=cmd_criteria)

    p_conv = sub.add_parser("converge", help="grid-refinement convergence study")
    _add_common(p_conv)
    p_conv.add_argument("--grids", required=True, help="comma-separated interior node counts")
    p_conv.add_argument("--t-check", type=float, required=True, help="comparison time")
    p_conv.add_argument("--ref-refine", type=int, default=4, help="reference refinement factor")
    p_conv.set_defaults(func=cmd_converge)

    p_list = sub.add_parser("presets", help="list available presets")
    p_list.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run" and not (args.config or args.preset or args.set):
        parser.print_usage(sys.stderr)
        print("error: run requires --config, --preset or --set", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
