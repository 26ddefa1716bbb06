#!/usr/bin/env python3
"""Plot the discrete energy J(t) from a monitors.csv file.

Usage: render_energy.py MONITORS_CSV --out IMAGE [--vector]
"""

from __future__ import annotations

import argparse
import sys

from common import column_floats, new_figure, read_table, require_columns, save_figure


def render(monitors_csv: str, out: str, vector: bool) -> list[str]:
    header, rows = read_table(monitors_csv)
    require_columns(header, ["t", "energy"], monitors_csv)
    t = column_floats(rows, "t")
    energy = column_floats(rows, "energy")
    fig, ax = new_figure()
    ax.plot(t, energy)
    ax.set_xlabel("t")
    ax.set_ylabel("J")
    ax.set_title("discrete energy")
    return save_figure(fig, out, vector)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("monitors_csv", help="monitors.csv produced by a run")
    parser.add_argument("--out", required=True, help="output image path (PNG)")
    parser.add_argument("--vector", action="store_true", help="also write an SVG")
    args = parser.parse_args(argv)
    for path in render(args.monitors_csv, args.out, args.vector):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
