#!/usr/bin/env python3
"""Plot solution profiles u(x, t) from a snapshots.csv file, one curve per
requested time.

Usage: render_snapshots.py SNAPSHOTS_CSV --out IMAGE [--times T1,T2,...] [--vector]
"""

from __future__ import annotations

import argparse
import sys

from common import column_floats, fail, new_figure, read_table, require_columns, save_figure


def render(snapshots_csv: str, out: str, times: list[float] | None, vector: bool) -> list[str]:
    header, rows = read_table(snapshots_csv)
    require_columns(header, ["t", "x", "u"], snapshots_csv)
    available = sorted({float(row["t"]) for row in rows})
    if times is None:
        chosen = available
    else:
        chosen = []
        for t in times:
            if t not in available:
                shown = ", ".join(format(v, ".6g") for v in available[:12])
                raise fail(
                    f"time {t:g} not present in {snapshots_csv}; available times: {shown}"
                )
            chosen.append(t)

    fig, ax = new_figure()
    for t in chosen:
        group = [row for row in rows if float(row["t"]) == t]
        xs = column_floats(group, "x")
        us = column_floats(group, "u")
        ax.plot(xs, us, label=f"t = {t:.6g}")
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    ax.set_title("solution profiles")
    ax.legend(fontsize="small")
    return save_figure(fig, out, vector)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("snapshots_csv", help="snapshots.csv produced by a run")
    parser.add_argument("--out", required=True, help="output image path (PNG)")
    parser.add_argument("--times", help="comma-separated subset of snapshot times")
    parser.add_argument("--vector", action="store_true", help="also write an SVG")
    args = parser.parse_args(argv)
    times = None
    if args.times:
        try:
            times = [float(v) for v in args.times.split(",") if v.strip()]
        except ValueError as exc:
            raise fail(str(exc))
    for path in render(args.snapshots_csv, args.out, times, args.vector):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
