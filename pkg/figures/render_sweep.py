#!/usr/bin/env python3
"""Chart one column of a sweep summary.csv against the swept value.

Usage: render_sweep.py SUMMARY_CSV --column NAME --out IMAGE [--vector]
"""

from __future__ import annotations

import argparse
import sys

from common import fail, new_figure, read_table, save_figure


def render(summary_csv: str, column: str, out: str, vector: bool) -> list[str]:
    header, rows = read_table(summary_csv)
    if column not in header:
        raise fail(
            f"unknown column {column!r}; available columns: {', '.join(header)}"
        )
    values, ys, skipped = [], [], 0
    for row in rows:
        try:
            values.append(float(row["value"]))
            ys.append(float(row[column]))
        except (KeyError, ValueError):
            skipped += 1
    if skipped:
        print(f"skipped {skipped} non-numeric row(s)", file=sys.stderr)
    if not values:
        raise fail(f"no numeric data for column {column!r} in {summary_csv}")

    fig, ax = new_figure()
    ax.plot(values, ys, marker="o")
    ax.set_xlabel("swept value")
    ax.set_ylabel(column)
    if len(values) > 1 and max(values) / max(min(values), 1e-300) > 50:
        ax.set_xscale("log")
    ax.set_title(f"sweep: {column}")
    return save_figure(fig, out, vector)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("summary_csv", help="summary.csv produced by a sweep")
    parser.add_argument("--column", required=True, help="summary column to chart")
    parser.add_argument("--out", required=True, help="output image path (PNG)")
    parser.add_argument("--vector", action="store_true", help="also write an SVG")
    args = parser.parse_args(argv)
    for path in render(args.summary_csv, args.column, args.out, args.vector):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
