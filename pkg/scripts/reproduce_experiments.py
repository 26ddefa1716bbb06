#!/usr/bin/env python3
"""Reproduce the full experiment set: one run per preset plus the two
constant-b sweeps, writing CSV outputs under an output directory.

Each preset is integrated twice: a first pass to learn the stop time, a
second pass capturing solution snapshots at fixed fractions of it, so the
snapshot files show the profile growing toward blow-up.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from blowuplab.cli import main as cli_main
from blowuplab.config import load_config
from blowuplab.presets import PRESETS

SNAPSHOT_FRACTIONS = (0.5, 0.9, 0.99, 0.999, 0.9999)


def run_preset_with_snapshots(name: str, out_root: Path, quiet: bool) -> None:
    out_dir = out_root / name
    config = load_config(preset=name)
    spec, g = config.build_problem()
    from blowuplab import integrate

    first = integrate(spec, g, config.integrator_config())
    times = ",".join(f"{f * first.t_stop:.17g}" for f in SNAPSHOT_FRACTIONS)
    args = [
        "run",
        "--preset", name,
        "--out", str(out_dir),
        "--set", f"snapshot_times={times}",
    ]
    if quiet:
        args.append("--quiet")
    rc = cli_main(args)
    if rc != 0:
        raise SystemExit(f"preset {name} failed with exit code {rc}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="blowuplab_out", help="output root directory")
    parser.add_argument("--quiet", action="store_true")
    parser.add_argument(
        "--presets", default=",".join(PRESETS), help="comma-separated preset subset"
    )
    args = parser.parse_args(argv)
    out_root = Path(args.out)

    for name in [p for p in args.presets.split(",") if p]:
        if not args.quiet:
            print(f"== {name} ==")
        run_preset_with_snapshots(name, out_root, args.quiet)

    sweeps = [
        ("sweep_b_subcritical", "fig8", "1,10,100,1000"),
        ("sweep_b_critical", "fig12", "1,1.48,1.49"),
    ]
    for label, preset, values in sweeps:
        if not args.quiet:
            print(f"== {label} ==")
        rc = cli_main(
            [
                "sweep", "--preset", preset, "--param", "b_const",
                "--values", values, "--out", str(out_root / label),
            ]
            + (["--quiet"] if args.quiet else [])
        )
        if rc != 0:
            raise SystemExit(f"sweep {label} failed with exit code {rc}")

    if not args.quiet:
        print("== convergence ==")
    rc = cli_main(
        [
            "converge", "--set", "u0_scale=8e-4", "--set", "rel_tol=1e-9",
            "--set", "abs_tol=1e-11", "--grids", "25,50,100", "--t-check", "0.25",
            "--out", str(out_root / "convergence"),
        ]
        + (["--quiet"] if args.quiet else [])
    )
    if rc != 0:
        raise SystemExit(f"convergence study failed with exit code {rc}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
