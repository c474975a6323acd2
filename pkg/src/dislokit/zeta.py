"""Truncated Epstein-Hurwitz zeta sums over annuli of Z[i] and Z[w6].

zeta_A(s, z0) = sum over l in A of (|l + z0|^2)^(-s/2), with A a finite
subset of the normalized lattice.  Annuli are windowed around -z0 so that
the summed distances |l + z0| are exactly the windowed ones: the Gauss
rule is strict on both sides, the Eisenstein rule keeps |l + z0| >= rho
and requires every planar neighbor within N (the sheet-0 BCC window in
the regime where the type-III core reduces to the type-II disk).

All sums are compensated and run in canonical lattice order, so values
are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .cyclotomic import GAUSS, EISENSTEIN, LatticePoint2, LatticeRing, RingKind
from .graph import (
    PointSet,
    RegionError,
    eisenstein_annulus_points,
    gauss_annulus_points,
)
from .lattice import points_complex
from .summation import compensated_sum


@dataclass(frozen=True)
class ZetaResult:
    value: float
    s: float
    z0: complex
    ring: LatticeRing
    region: str
    terms: int


def _terms(values: np.ndarray, z0: complex, s: float) -> np.ndarray:
    w = values + z0
    r2 = w.real * w.real + w.imag * w.imag
    if np.any(r2 == 0):
        idx = int(np.nonzero(r2 == 0)[0][0])
        raise RegionError(f"singular term: lattice point at index {idx} equals -z0 = {-z0}")
    if s == 2.0:
        return 1.0 / r2
    return r2 ** (-s / 2.0)


def truncated_zeta(ring: LatticeRing, s: float, z0: complex, points) -> ZetaResult:
    """Compensated sum of (|l + z0|^2)^(-s/2) over an explicit point set.

    ``points`` may be a PointSet, an iterable of LatticePoint2, or an
    array of complex lattice values.
    """
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    z0 = complex(z0)
    if isinstance(points, PointSet):
        values = points.values
        n = len(points)
    elif isinstance(points, np.ndarray):
        values = points.astype(np.complex128)
        n = values.size
    else:
        pts = list(points)
        values = np.array([p.complex_value(ring) if isinstance(p, LatticePoint2) else complex(p)
                           for p in pts], dtype=np.complex128)
        n = len(pts)
    if n == 0:
        return ZetaResult(0.0, s, z0, ring, "explicit:0", 0)
    value = compensated_sum(_terms(values, z0, s))
    return ZetaResult(value, s, z0, ring, f"explicit:{n}", n)


def annulus_points(ring: LatticeRing, z0: complex, rho: float, N: float) -> PointSet:
    """The ring's annulus rule around -z0, in normalized units."""
    if not 0 < rho < N:
        raise RegionError(f"need 0 < rho < N, got rho={rho}, N={N}")
    u0 = -complex(z0)
    if ring.kind is RingKind.GAUSS:
        return gauss_annulus_points(u0, rho, N)
    return eisenstein_annulus_points(u0, rho, N)


def zeta_annulus(ring: LatticeRing, s: float, z0: complex, rho: float, N: float) -> ZetaResult:
    """Truncated zeta over the ring's (rho, N) annulus."""
    pts = annulus_points(ring, z0, rho, N)
    res = truncated_zeta(ring, s, z0, pts)
    return ZetaResult(res.value, s, res.z0, ring, f"annulus rho={rho} N={N}", res.terms)


def zeta_scan(ring: LatticeRing, s: float, z0: complex, rho: float,
              n_values, threads: int = 1) -> list[ZetaResult]:
    """zeta_annulus at each N in ``n_values`` (one result per N)."""
    n_values = list(n_values)

    def one(N: float) -> ZetaResult:
        return zeta_annulus(ring, s, z0, rho, N)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, n_values))
    return [one(N) for N in n_values]


@dataclass(frozen=True)
class ZetaGrid:
    """Zeta over a 20x20 (or n x n) subdivision of the fundamental cell.

    ``values[ix, iy]`` is evaluated at z0 = x + y*tau with basis
    coordinates x = (ix+0.5)/n, y = (iy+0.5)/n (cell centers, which stay
    clear of the lattice points at the corners).
    """

    ring: LatticeRing
    s: float
    rho: float
    N: float
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray

    @property
    def min(self) -> float:
        return float(self.values.min())

    @property
    def max(self) -> float:
        return float(self.values.max())


def zeta_grid(ring: LatticeRing, s: float, rho: float, N: float,
              n: int = 20, threads: int = 1) -> ZetaGrid:
    """Evaluate zeta_{rho,N}(s, x + y*tau) at the n x n cell centers.

    The lattice cloud is enumerated once; each cell re-centers it.  Cells
    are independent, so threading changes nothing but wall time.
    """
    if not 0 < rho < N:
        raise RegionError(f"need 0 < rho < N, got rho={rho}, N={N}")
    xs = (np.arange(n) + 0.5) / n
    ys = (np.arange(n) + 0.5) / n
    values = np.empty((n, n), dtype=np.float64)

    def cell(ix: int, iy: int) -> float:
        tau = ring.tau
        z0 = complex(xs[ix] + ys[iy] * tau.real, ys[iy] * tau.imag)
        return zeta_annulus(ring, s, z0, rho, N).value

    jobs = [(ix, iy) for ix in range(n) for iy in range(n)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: cell(*t), jobs))
    else:
        results = [cell(*t) for t in jobs]
    for (ix, iy), val in zip(jobs, results):
        values[ix, iy] = val
    return ZetaGrid(ring, s, rho, N, xs, ys, values)


def fit_log(n_values, zeta_values) -> tuple[float, float, float]:
    """Least squares fit zeta = c1*log(N) + c0; returns (c1, c0, R^2)."""
    x = np.log(np.asarray(n_values, dtype=np.float64))
    y = np.asarray(zeta_values, dtype=np.float64)
    if x.size < 2:
        raise ValueError("need at least two points to fit")
    A = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), float(coef[1]), r2
