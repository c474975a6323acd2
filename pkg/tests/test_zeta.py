import math

import numpy as np
import pytest

from dislokit.cyclotomic import EISENSTEIN, GAUSS, NU, LatticePoint2, unit_power
from dislokit.graph import RegionError, eisenstein_annulus_points, gauss_annulus_points
from dislokit.zeta import (
    ZetaResult,
    fit_log,
    truncated_zeta,
    zeta_annulus,
    zeta_grid,
    zeta_scan,
)


def test_truncated_zeta_single_point():
    res = truncated_zeta(GAUSS, 2.0, 0j, [LatticePoint2(1, 0)])
    assert res.value == 1.0
    assert res.terms == 1


def test_truncated_zeta_units():
    units = [LatticePoint2(1, 0), LatticePoint2(-1, 0), LatticePoint2(0, 1), LatticePoint2(0, -1)]
    assert truncated_zeta(GAUSS, 2.0, 0j, units).value == pytest.approx(4.0, abs=1e-14)
    hexagon = [LatticePoint2(*unit) for unit in
               ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))]
    assert truncated_zeta(EISENSTEIN, 2.0, 0j, hexagon).value == pytest.approx(6.0, abs=1e-13)


def test_truncated_zeta_empty_and_validation():
    assert truncated_zeta(GAUSS, 2.0, 0j, []).value == 0.0
    with pytest.raises(ValueError):
        truncated_zeta(GAUSS, -1.0, 0j, [LatticePoint2(1, 0)])


def test_truncated_zeta_singular_term():
    with pytest.raises(RegionError) as err:
        truncated_zeta(GAUSS, 2.0, complex(-2.0, -3.0), [LatticePoint2(2, 3)])
    assert "singular" in str(err.value)


def test_zeta_annulus_rejects_bad_radii():
    with pytest.raises(RegionError):
        zeta_annulus(GAUSS, 2.0, 0j, 5.0, 5.0)
    with pytest.raises(RegionError):
        zeta_annulus(GAUSS, 2.0, 0j, 7.0, 5.0)


def test_zeta_annulus_additivity_gauss():
    # strict shells at boundary-free radii partition the larger annulus
    z0 = complex(0.31, 0.17)
    a = zeta_annulus(GAUSS, 2.0, z0, 2.3, 7.7).value
    b = zeta_annulus(GAUSS, 2.0, z0, 7.7, 13.3).value
    c = zeta_annulus(GAUSS, 2.0, z0, 2.3, 13.3).value
    assert a + b == pytest.approx(c, rel=1e-12)


def test_truncated_zeta_disjoint_union():
    # set-level additivity holds for any explicit disjoint split
    z0 = complex(0.31, 0.17)
    pts = eisenstein_annulus_points(-z0, 2.5, 9.0)
    values = pts.values
    left = truncated_zeta(EISENSTEIN, 2.0, z0, values[: len(values) // 2]).value
    right = truncated_zeta(EISENSTEIN, 2.0, z0, values[len(values) // 2:]).value
    both = truncated_zeta(EISENSTEIN, 2.0, z0, values).value
    assert left + right == pytest.approx(both, rel=1e-12)


def test_zeta_monotone_in_N():
    z0 = complex(0.4, 0.2)
    values = [zeta_annulus(GAUSS, 2.0, z0, 3.1, N).value for N in (5.0, 6.0, 8.0, 12.0)]
    assert all(b > a for a, b in zip(values, values[1:]))
    # no new points, no change
    v1 = zeta_annulus(GAUSS, 2.0, z0, 3.1, 5.003).value
    v2 = zeta_annulus(GAUSS, 2.0, z0, 3.1, 5.004).value
    n1 = len(gauss_annulus_points(-z0, 3.1, 5.003))
    n2 = len(gauss_annulus_points(-z0, 3.1, 5.004))
    if n1 == n2:
        assert v1 == v2


def test_zeta_unit_rotation_invariance():
    for ring in (GAUSS, EISENSTEIN):
        z0 = complex(0.33, 0.21)
        base = zeta_annulus(ring, 2.0, z0, 2.1, 9.0).value
        for k in range(1, ring.order):
            u = unit_power(ring, k)
            assert zeta_annulus(ring, 2.0, u * z0, 2.1, 9.0).value == pytest.approx(
                base, rel=1e-12)
        assert zeta_annulus(ring, 2.0, z0.conjugate(), 2.1, 9.0).value == pytest.approx(
            base, rel=1e-12)
        tau = ring.tau
        lam = complex(3 - 2 * tau.real, -2 * tau.imag)  # lattice point 3 - 2*tau
        assert zeta_annulus(ring, 2.0, z0 + lam, 2.1, 9.0).value == pytest.approx(
            base, rel=1e-12)


def test_zeta_scan_fits_log():
    n_values = [20, 30, 50, 75, 100, 150, 200, 300, 500]
    for ring in (GAUSS, EISENSTEIN):
        results = zeta_scan(ring, 2.0, 0j, 5.1, n_values)
        c1, c0, r2 = fit_log(n_values, [r.value for r in results])
        assert r2 >= 0.999
        assert c1 > 0
        # slope tracks the continuum density 2*pi/cell-area
        cell = 1.0 if ring is GAUSS else math.sqrt(3.0) / 2.0
        assert c1 == pytest.approx(2.0 * math.pi / cell, rel=0.05)


def test_zeta_scan_threads_match():
    n_values = [10, 15, 20]
    seq = [r.value for r in zeta_scan(GAUSS, 2.0, 0j, 3.1, n_values, threads=1)]
    par = [r.value for r in zeta_scan(GAUSS, 2.0, 0j, 3.1, n_values, threads=4)]
    assert seq == par


def test_fit_log_exact_fixture():
    n = np.array([10.0, 20.0, 40.0, 80.0])
    y = 2.0 * np.log(n) + 1.0
    c1, c0, r2 = fit_log(n, y)
    assert c1 == pytest.approx(2.0, abs=1e-10)
    assert c0 == pytest.approx(1.0, abs=1e-10)
    assert r2 == pytest.approx(1.0, abs=1e-12)


def test_zeta_grid_small():
    grid = zeta_grid(GAUSS, 2.0, 2.1, 8.0, n=4)
    assert grid.values.shape == (4, 4)
    assert grid.min > 0 and grid.max >= grid.min
    # inversion symmetry of the lattice: cell centers pair up
    for ix in range(4):
        for iy in range(4):
            assert grid.values[ix, iy] == pytest.approx(
                grid.values[3 - ix, 3 - iy], rel=1e-12)


def test_zeta_grid_gauss_quarter_turn_symmetry():
    grid = zeta_grid(GAUSS, 2.0, 2.1, 8.0, n=4)
    # i*(x + iy) = -y + ix maps center (ix, iy) to (n-1-iy, ix)
    for ix in range(4):
        for iy in range(4):
            assert grid.values[ix, iy] == pytest.approx(
                grid.values[3 - iy, ix], rel=1e-10)


def test_zeta_grid_eisenstein_inversion():
    grid = zeta_grid(EISENSTEIN, 2.0, 2.1, 8.0, n=4)
    for ix in range(4):
        for iy in range(4):
            assert grid.values[ix, iy] == pytest.approx(
                grid.values[3 - ix, 3 - iy], rel=1e-12)


def test_zeta_grid_threads_identical():
    g1 = zeta_grid(GAUSS, 2.0, 2.1, 8.0, n=4, threads=1)
    g4 = zeta_grid(GAUSS, 2.0, 2.1, 8.0, n=4, threads=4)
    assert np.array_equal(g1.values, g4.values)


def test_eisenstein_annulus_window_is_neighbor_max():
    # a point whose farthest planar neighbor reaches N is excluded
    u0 = 0j
    pts = eisenstein_annulus_points(u0, 1.5, 4.0)
    for l1, l2 in zip(pts.l1.tolist(), pts.l2.tolist()):
        z = LatticePoint2(l1, l2, 0).complex_value(EISENSTEIN)
        assert max(abs(z + NU[j]) for j in range(6)) < 4.0
        assert abs(z) >= 1.5
