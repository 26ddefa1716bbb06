"""Shared helpers for the figure scripts: CSV ingestion and deterministic
rendering (fixed size and DPI, pinned metadata, no timestamps).
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "blowuplab-figures"

import matplotlib.pyplot as plt  # noqa: E402

FIGSIZE = (8.0, 4.5)
DPI = 120


def fail(message: str) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)


def read_table(path: str) -> tuple[list[str], list[dict[str, str]]]:
    """Read a CSV file into a header list and row dicts."""
    csv_path = Path(path)
    if not csv_path.is_file():
        raise fail(f"input file not found: {path}")
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows:
        raise fail(f"{path} is empty")
    header = rows[0]
    data = [dict(zip(header, row)) for row in rows[1:]]
    if not data:
        raise fail(f"{path} has a header but no data rows")
    return header, data


def require_columns(header: list[str], required: list[str], path: str) -> None:
    missing = [name for name in required if name not in header]
    if missing:
        raise fail(
            f"{path} is missing column(s) {', '.join(missing)}; available: {', '.join(header)}"
        )


def column_floats(rows: list[dict[str, str]], name: str):
    return [float(row[name]) for row in rows]


def new_figure():
    return plt.subplots(figsize=FIGSIZE)


def save_figure(fig, out: str, vector: bool = False) -> list[str]:
    """Write the PNG (and optionally an SVG next to it); returns the paths."""
    out_path = Path(out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    written = []
    fig.savefig(out_path, dpi=DPI, metadata={"Software": "blowuplab-figures"})
    written.append(str(out_path))
    if vector:
        svg_path = out_path.with_suffix(".svg")
        fig.savefig(svg_path, metadata={"Creator": "blowuplab-figures", "Date": None})
        written.append(str(svg_path))
    plt.close(fig)
    return written
