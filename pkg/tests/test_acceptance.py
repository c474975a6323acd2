"""Acceptance suite: one test per top-level criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``)."""

import math
import time

import numpy as np
import pytest

from dislokit import energy as energy_mod
from dislokit import validate as validate_mod
from dislokit import cli
from dislokit.cyclotomic import EISENSTEIN, GAUSS, NU, check_cyclotomic_sums, nu_quadratic_identity, unit_power
from dislokit.energy import (
    BCC_PRINCIPAL_COEFF,
    SC_PRINCIPAL_COEFF,
    bcc_delta_arrays,
    bcc_density_arrays,
    bcc_eps_arrays,
    regional_energy,
    sc_delta_arrays,
    sc_density_arrays,
    sc_eps_arrays,
)
from dislokit.graph import (
    RegionSpec,
    bcc_core_and_annulus,
    bcc_regime_holds,
    eisenstein_annulus_points,
    gauss_annulus_points,
    sc_annulus,
)
from dislokit.lattice import DislocationConfig, bcc_constants
from dislokit.summation import compensated_sum
from dislokit.zeta import fit_log, zeta_annulus, zeta_grid, zeta_scan

TWO_PI = 2.0 * math.pi

FIG7A_MIN, FIG7A_MAX = 14.664, 14.779
FIG7B_MIN, FIG7B_MAX = 16.061, 16.907
GRID_TOL = 0.01
RUNTIME_BUDGET = 10.0


def report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")


def test_fig7a_gauss_grid_extremes():
    t0 = time.perf_counter()
    grid = zeta_grid(GAUSS, 2.0, 7.2, 75.0)
    elapsed = time.perf_counter() - t0
    ok_min = abs(grid.min - FIG7A_MIN) <= GRID_TOL * FIG7A_MIN
    ok_max = abs(grid.max - FIG7A_MAX) <= GRID_TOL * FIG7A_MAX
    ok_time = elapsed < RUNTIME_BUDGET
    report("fig7a-gauss-grid", ok_min and ok_max and ok_time,
           f"min={grid.min:.4f} (target {FIG7A_MIN} +-1%), "
           f"max={grid.max:.4f} (target {FIG7A_MAX} +-1%), {elapsed:.1f}s")
    assert ok_time, f"grid took {elapsed:.1f}s, budget {RUNTIME_BUDGET}s"
    assert ok_min, f"grid min {grid.min} outside 1% of {FIG7A_MIN}"
    assert ok_max, f"grid max {grid.max} outside 1% of {FIG7A_MAX}"


def test_fig7b_eisenstein_grid_extremes():
    t0 = time.perf_counter()
    grid = zeta_grid(EISENSTEIN, 2.0, 7.2, 75.0)
    elapsed = time.perf_counter() - t0
    ok_min = abs(grid.min - FIG7B_MIN) <= GRID_TOL * FIG7B_MIN
    ok_max = abs(grid.max - FIG7B_MAX) <= GRID_TOL * FIG7B_MAX
    ok_time = elapsed < RUNTIME_BUDGET
    report("fig7b-eisenstein-grid", ok_min and ok_max and ok_time,
           f"min={grid.min:.4f} (target {FIG7B_MIN} +-1%), "
           f"max={grid.max:.4f} (target {FIG7B_MAX} +-1%), {elapsed:.1f}s")
    assert ok_time, f"grid took {elapsed:.1f}s, budget {RUNTIME_BUDGET}s"
    assert ok_max, f"grid max {grid.max} outside 1% of {FIG7B_MAX}"
    assert ok_min, f"grid min {grid.min} outside 1% of {FIG7B_MIN}"


def test_fig6_log_fit_both_rings():
    n_values = [20, 30, 50, 75, 100, 150, 200, 300, 500]
    details = []
    ok = True
    for ring in (GAUSS, EISENSTEIN):
        results = zeta_scan(ring, 2.0, 0j, 5.1, n_values)
        c1, c0, r2 = fit_log(n_values, [r.value for r in results])
        details.append(f"{ring}: c1={c1:.4f} c0={c0:.4f} R2={r2:.6f}")
        ok = ok and r2 >= 0.999
    report("fig6-log-fit", ok, "; ".join(details))
    assert ok


def test_sc_principal_energy_matches_zeta():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(5):
        z0 = complex(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95))
        rho = rng.uniform(3.0, 8.0)
        N = rho + rng.uniform(15.0, 40.0)
        cfg = DislocationConfig(z0=z0, kd=float(rng.uniform(0.5, 2.0)))
        ann = sc_annulus(cfg, RegionSpec(rho, N))
        reg = regional_energy(cfg, ann, "sc")
        zres = zeta_annulus(GAUSS, 2.0, -(cfg.z0 / cfg.a), rho, N)
        expected = SC_PRINCIPAL_COEFF * cfg.kd * cfg.a ** 2 * zres.value
        worst = max(worst, abs(reg.principal - expected) / abs(expected))
    ok = worst <= 1e-12
    report("sc-energy-zeta-consistency", ok, f"worst relative error {worst:.2e}")
    assert ok


def test_bcc_principal_energy_matches_zeta():
    rng = np.random.default_rng(43)
    worst = 0.0
    regimes = []
    for _ in range(5):
        consts = bcc_constants(DislocationConfig(0j))
        w0 = complex(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95))
        tau = EISENSTEIN.tau
        z0 = complex(w0.real + w0.imag * tau.real, w0.imag * tau.imag) * consts.d1
        rho = rng.uniform(7.0, 9.0)
        N = rho + rng.uniform(15.0, 30.0)
        cfg = DislocationConfig(z0=z0, kd=float(rng.uniform(0.5, 2.0)))
        region = RegionSpec(rho, N, 0.2 * consts.d3)
        regimes.append(bcc_regime_holds(cfg, region))
        regions = bcc_core_and_annulus(cfg, region)
        reg = regional_energy(cfg, regions.annulus, "bcc")
        zres = zeta_annulus(EISENSTEIN, 2.0, -(cfg.z0 / consts.d1), rho, N)
        expected = BCC_PRINCIPAL_COEFF * cfg.kd * consts.d1 ** 2 * zres.value
        worst = max(worst, abs(reg.principal - expected) / abs(expected))
    ok = worst <= 1e-12 and all(regimes)
    report("bcc-energy-zeta-consistency", ok,
           f"worst relative error {worst:.2e}, regime holds in {sum(regimes)}/5 runs")
    assert all(regimes)
    assert worst <= 1e-12


def test_leading_coefficient_recovery():
    # SC with kd = 1 and arbitrary kp
    cfg = DislocationConfig(z0=complex(0.5, 0.5), kp=2.3, kd=1.0)
    u0 = cfg.z0 / cfg.a
    region = gauss_annulus_points(u0, 50.0, 100.0)
    v = region.values - u0
    exact, _ = sc_density_arrays(v, cfg)
    r2 = (v.real ** 2 + v.imag ** 2) * cfg.a ** 2
    fit_sc = float(np.mean(exact * r2 / cfg.a ** 4))
    err_sc = abs(fit_sc - SC_PRINCIPAL_COEFF) / SC_PRINCIPAL_COEFF

    consts = bcc_constants(cfg)
    cfg_b = DislocationConfig(z0=complex(0.4, 0.3) * consts.d1, kd=1.0)
    u0b = cfg_b.z0 / consts.d1
    region_b = eisenstein_annulus_points(u0b, 50.0, 100.0)
    vb = region_b.values - u0b
    exact_b, _ = bcc_density_arrays(vb, cfg_b)
    r2b = (vb.real ** 2 + vb.imag ** 2) * consts.d1 ** 2
    fit_bcc = float(np.mean(exact_b * r2b / consts.d1 ** 4))
    err_bcc = abs(fit_bcc - BCC_PRINCIPAL_COEFF) / BCC_PRINCIPAL_COEFF

    ok = err_sc <= 0.005 and err_bcc <= 0.005
    report("leading-coefficient-recovery", ok,
           f"sc 1/(8 pi^2): err {err_sc:.2e} ({len(region)} nodes); "
           f"bcc 1/(384 pi^2): err {err_bcc:.2e} ({len(region_b)} nodes)")
    assert err_sc <= 0.005
    assert err_bcc <= 0.005


def test_identity_suites():
    failures = []
    for ring in (GAUSS, EISENSTEIN):
        if check_cyclotomic_sums(ring) > 1e-12:
            failures.append(f"cyclotomic {ring}")
    rng = np.random.default_rng(7)
    for _ in range(100):
        r = rng.uniform(0.1, 10.0)
        t = rng.uniform(0.0, TWO_PI)
        z = complex(r * math.cos(t), r * math.sin(t))
        for parity in ("even", "odd"):
            lhs, rhs = nu_quadratic_identity(z, parity)
            if abs(lhs - rhs) > 1e-12 * max(1.0, abs(rhs)):
                failures.append(f"nu quadratic at {z}")
    from dislokit.cyclotomic import NU_THIRDS
    for j, base in ((2, 0), (4, 0), (3, 1), (5, 1)):
        d1 = NU_THIRDS[j][0] - NU_THIRDS[base][0]
        d2 = NU_THIRDS[j][1] - NU_THIRDS[base][1]
        if d1 % 3 or d2 % 3:
            failures.append(f"nu membership {j}")
    for ring in (GAUSS, EISENSTEIN):
        z0 = complex(0.29, 0.41)
        base = zeta_annulus(ring, 2.0, z0, 3.1, 15.0).value
        for k in range(1, ring.order):
            val = zeta_annulus(ring, 2.0, unit_power(ring, k) * z0, 3.1, 15.0).value
            if abs(val - base) > 1e-12 * base:
                failures.append(f"zeta rotation {ring} k={k}")
        if abs(zeta_annulus(ring, 2.0, z0.conjugate(), 3.1, 15.0).value - base) > 1e-12 * base:
            failures.append(f"zeta conjugation {ring}")
        tau = ring.tau
        lam = complex(1 + 2 * tau.real, 2 * tau.imag)
        if abs(zeta_annulus(ring, 2.0, z0 + lam, 3.1, 15.0).value - base) > 1e-12 * base:
            failures.append(f"zeta translation {ring}")
    ok = not failures
    report("identity-suites", ok, "all residuals <= 1e-12" if ok else "; ".join(failures))
    assert ok, failures


def test_approximation_order_bounds():
    # every annulus node with |w| <= 0.02 obeys the quadratic error bounds
    cfg = DislocationConfig(z0=complex(0.5, 0.5))
    a = cfg.a
    u0 = cfg.z0 / a
    region = gauss_annulus_points(u0, 60.0, 90.0)
    v = region.values - u0
    w = 1.0 / v
    aw = np.abs(w)
    assert np.max(aw) <= 0.02
    eps = sc_eps_arrays(v, a)
    delta = sc_delta_arrays(eps, a)
    checks = []
    for kind, u in (("e1", 1.0), ("e2", 1.0j), ("e+", 1 + 1j), ("e-", 1 - 1j)):
        lin = a / TWO_PI * np.imag(u * w)
        checks.append(np.max(np.abs(eps[kind] - lin) - 2.0 * aw ** 2 * a))
    # stretches against their linearized forms
    lin_ax1 = eps["e1"] ** 2 / (2 * a)
    lin_mix = eps["e1"] / math.sqrt(2.0)
    lin_pl = eps["e+"] ** 2 / (2 * math.sqrt(2.0) * a)
    checks.append(np.max(np.abs(delta["a1"] - lin_ax1) - 2.0 * aw ** 2 * a))
    checks.append(np.max(np.abs(delta["d1+"] - lin_mix) - 2.0 * aw ** 2 * a))
    checks.append(np.max(np.abs(delta["d+"] - lin_pl) - 2.0 * aw ** 2 * a))

    consts = bcc_constants(cfg)
    cfg_b = DislocationConfig(z0=complex(0.4, 0.3) * consts.d1)
    u0b = cfg_b.z0 / consts.d1
    region_b = eisenstein_annulus_points(u0b, 30.0, 45.0)
    vb = region_b.values - u0b
    eps_b = bcc_eps_arrays(vb, consts)
    delta_b = bcc_delta_arrays(eps_b, consts)
    for j in range(6):
        wj = NU[j] / vb
        assert np.max(np.abs(wj)) <= 0.02
        lin = consts.d0 / TWO_PI * np.imag(wj)
        checks.append(np.max(np.abs(eps_b[j] - lin) - 2.0 * np.abs(wj) ** 2 * consts.d0))
        lin_d = (-1.0) ** j * consts.d3 / consts.d0 * eps_b[j]
        checks.append(np.max(np.abs(delta_b[j] - lin_d) - 2.0 * np.abs(wj) ** 2 * consts.d0))
    worst = max(checks)
    ok = worst <= 0.0
    report("approximation-order", ok, f"worst margin {worst:.2e} (<= 0 required)")
    assert ok


def test_determinism(tmp_path):
    # byte-identical CSV across repeated runs
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["zeta", "--lattice", "bcc", "--mode", "grid", "--rho", "3.1", "--N", "15.0"]
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b)]) == 0
    bytes_ok = a.read_bytes() == b.read_bytes()
    # value-identical across thread counts
    grids = [zeta_grid(GAUSS, 2.0, 3.1, 15.0, threads=t).values for t in (1, 4, 8)]
    threads_ok = all(np.array_equal(grids[0], g) for g in grids[1:])
    scan_vals = [tuple(r.value for r in zeta_scan(EISENSTEIN, 2.0, 0j, 5.1,
                                                  [10, 20, 30], threads=t))
                 for t in (1, 4, 8)]
    threads_ok = threads_ok and all(s == scan_vals[0] for s in scan_vals[1:])
    ok = bytes_ok and threads_ok
    report("determinism", ok,
           f"csv bytes identical: {bytes_ok}; thread counts 1/4/8 identical: {threads_ok}")
    assert ok
