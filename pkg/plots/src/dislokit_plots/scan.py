"""Plot zeta-vs-log(N) scans with a least-squares line per series.

Usage: plot_scan <gauss.csv> [<eisenstein.csv> ...] -o fig6.png

Each input is a two-column CSV "N,zeta" with a header row, N strictly
increasing and zeta nondecreasing.  For every series the fitted
c1*log(N) + c0 and the coefficient of determination are printed.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class ScanFormatError(ValueError):
    pass


def read_scan(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse and validate one scan CSV; row numbers in errors are 1-based."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["N", "zeta"]:
            raise ScanFormatError(f"{path}: row 1: expected header 'N,zeta', got {header}")
        for i, row in enumerate(reader, start=2):
            if len(row) != 2:
                raise ScanFormatError(f"{path}: row {i}: expected 2 columns, got {len(row)}")
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                raise ScanFormatError(f"{path}: row {i}: non-numeric value in {row}")
    if not rows:
        raise ScanFormatError(f"{path}: no data rows")
    n = np.array([r[0] for r in rows])
    z = np.array([r[1] for r in rows])
    if not np.all(np.diff(n) > 0):
        raise ScanFormatError(f"{path}: N values are not strictly increasing")
    if not np.all(np.diff(z) >= 0):
        raise ScanFormatError(f"{path}: zeta values are not nondecreasing")
    return n, z


def fit_log(n: np.ndarray, z: np.ndarray) -> tuple[float, float, float]:
    """Least squares zeta = c1*log(N) + c0; returns (c1, c0, R^2)."""
    x = np.log(n)
    A = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(A, z, rcond=None)
    resid = z - A @ coef
    ss_res = float(resid @ resid)
    ss_tot = float(((z - z.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), float(coef[1]), r2


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="plot_scan",
                                     description="zeta vs log N with fitted lines")
    parser.add_argument("csv", nargs="+", help="scan CSV files (N,zeta)")
    parser.add_argument("-o", "--out", default="fig6.png")
    args = parser.parse_args(argv)

    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        for path in args.csv:
            n, z = read_scan(path)
            c1, c0, r2 = fit_log(n, z)
            label = os.path.splitext(os.path.basename(path))[0]
            print(f"{label}: c1={c1:.17g} c0={c0:.17g} R2={r2:.17g}")
            ax.plot(n, z, "o", label=label)
            grid = np.geomspace(n[0], n[-1], 200)
            ax.plot(grid, c1 * np.log(grid) + c0, "-", alpha=0.7)
    except ScanFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ax.set_xscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("zeta")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
