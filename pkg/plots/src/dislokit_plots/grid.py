"""Render a fundamental-cell zeta grid as a flat-block gray-scale map.

Usage: plot_grid <grid.csv> -o fig7a.png

The input is the five-column CSV "ix,iy,x,y,zeta" covering a complete
n x n grid (20 x 20 for the reference runs).  The map is linear gray
with the minimum black and the maximum white, rendered without
interpolation; the printed extremes repeat the input tokens verbatim.
"""

from __future__ import annotations

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class GridFormatError(ValueError):
    pass


def read_grid(path: str) -> tuple[np.ndarray, str, str]:
    """Returns (values[ix, iy], min_token, max_token).

    The tokens are the untouched CSV strings of the extreme cells, so
    printed extremes match the file digit for digit.
    """
    cells: dict[tuple[int, int], tuple[float, str]] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["ix", "iy", "x", "y", "zeta"]:
            raise GridFormatError(f"{path}: row 1: expected header 'ix,iy,x,y,zeta'")
        for i, row in enumerate(reader, start=2):
            if len(row) != 5:
                raise GridFormatError(f"{path}: row {i}: expected 5 columns")
            try:
                ix, iy = int(row[0]), int(row[1])
                val = float(row[4])
            except ValueError:
                raise GridFormatError(f"{path}: row {i}: bad cell {row}")
            cells[(ix, iy)] = (val, row[4])
    if not cells:
        raise GridFormatError(f"{path}: no data rows")
    n = max(max(ix for ix, _ in cells), max(iy for _, iy in cells)) + 1
    missing = [(ix, iy) for ix in range(n) for iy in range(n) if (ix, iy) not in cells]
    if missing:
        raise GridFormatError(f"{path}: incomplete {n}x{n} grid, missing cells {missing[:8]}"
                              + ("..." if len(missing) > 8 else ""))
    values = np.empty((n, n))
    for (ix, iy), (val, _) in cells.items():
        values[ix, iy] = val
    lo = min(cells.values(), key=lambda t: t[0])
    hi = max(cells.values(), key=lambda t: t[0])
    return values, lo[1], hi[1]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="plot_grid",
                                     description="gray-scale map of a zeta grid CSV")
    parser.add_argument("csv")
    parser.add_argument("-o", "--out", default="fig7.png")
    args = parser.parse_args(argv)

    try:
        values, lo_tok, hi_tok = read_grid(args.csv)
    except GridFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    vmin, vmax = float(values.min()), float(values.max())
    fig, ax = plt.subplots(figsize=(5, 5))
    if vmin == vmax:
        # constant field renders as uniform mid-gray
        ax.imshow(np.full_like(values, 0.5).T, cmap="gray", vmin=0.0, vmax=1.0,
                  origin="lower", interpolation="nearest")
        note = f"constant grid: min=max, value = {lo_tok}"
        print(note)
    else:
        ax.imshow(values.T, cmap="gray", vmin=vmin, vmax=vmax,
                  origin="lower", interpolation="nearest")
        note = f"black = {lo_tok}, white = {hi_tok}"
        print(note)
    ax.set_title(note, fontsize=9)
    ax.set_xlabel("ix")
    ax.set_ylabel("iy")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
