"""Self-check suites wired to the ``validate`` CLI command.

Each suite exercises one family of identities or invariants and reports
counts and failure messages; the report is machine readable.  Checks are
seeded, so the report is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import energy, zeta
from .cyclotomic import (
    EISENSTEIN,
    GAUSS,
    NU,
    NU_THIRDS,
    LatticePoint2,
    check_cyclotomic_sums,
    nu_quadratic_identity,
    rotate_basis,
    unit_power,
)
from .graph import SC_NEIGHBOR_OFFSETS, bcc_neighbors, sc_neighbors
from .lattice import BccConstants, DislocationConfig, bcc_constants

REL_TOL = 1e-12


@dataclass
class SuiteResult:
    name: str
    count: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.count += 1
        if not ok:
            self.failures.append(message)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "count": self.count,
                "failures": self.failures}


def _suite_cyclotomic() -> SuiteResult:
    s = SuiteResult("cyclotomic-sums")
    for ring in (GAUSS, EISENSTEIN):
        r = check_cyclotomic_sums(ring)
        s.check(r <= 1e-15, f"{ring} residual {r}")
    s.check(abs(unit_power(EISENSTEIN, 5) - EISENSTEIN.tau.conjugate()) <= 1e-15,
            "conj(w6) != w6^5")
    for j in range(6):
        s.check(abs(NU[(j + 3) % 6] + NU[j]) <= 1e-15, f"nu_{j+3} != -nu_{j}")
        s.check(abs(abs(NU[j]) - 1.0 / math.sqrt(3.0)) <= 1e-15, f"|nu_{j}| != 1/sqrt(3)")
    return s


def _suite_nu_quadratic(n: int = 100, seed: int = 20240811) -> SuiteResult:
    s = SuiteResult("nu-quadratic-identity")
    rng = np.random.default_rng(seed)
    radii = rng.uniform(0.1, 10.0, n)
    angles = rng.uniform(0.0, 2.0 * math.pi, n)
    for r, t in zip(radii, angles):
        z = complex(r * math.cos(t), r * math.sin(t))
        for parity in ("even", "odd"):
            lhs, rhs = nu_quadratic_identity(z, parity)
            err = abs(lhs - rhs) / max(1.0, abs(rhs))
            s.check(err <= REL_TOL, f"z={z} {parity}: relative error {err}")
    return s


def _suite_nu_membership() -> SuiteResult:
    # nu_2, nu_4 lie on the nu_0-shifted sublattice; nu_3, nu_5 on nu_1's
    s = SuiteResult("nu-translation-membership")
    for j, base in ((2, 0), (4, 0), (3, 1), (5, 1)):
        d1 = NU_THIRDS[j][0] - NU_THIRDS[base][0]
        d2 = NU_THIRDS[j][1] - NU_THIRDS[base][1]
        s.check(d1 % 3 == 0 and d2 % 3 == 0,
                f"nu_{j} - nu_{base} has thirds residue {(d1 % 3, d2 % 3)}")
    return s


def _suite_unit_closure() -> SuiteResult:
    s = SuiteResult("unit-closure")
    for ring in (GAUSS, EISENSTEIN):
        for l1, l2 in ((1, 0), (2, -3), (-5, 7)):
            r1, r2 = l1, l2
            for _ in range(ring.order):
                r1, r2 = rotate_basis(ring, r1, r2)
            s.check((r1, r2) == (l1, l2), f"{ring}: tau^order not identity on {(l1, l2)}")
            q1, q2 = rotate_basis(ring, l1, l2)
            z = complex(l1 + l2 * ring.tau.real, l2 * ring.tau.imag) * ring.tau
            zq = complex(q1 + q2 * ring.tau.real, q2 * ring.tau.imag)
            s.check(abs(z - zq) <= 1e-12, f"{ring}: basis rotation mismatch on {(l1, l2)}")
    return s


def _suite_zeta_invariance() -> SuiteResult:
    s = SuiteResult("zeta-invariance")
    rho, N = 3.1, 18.0
    for ring in (GAUSS, EISENSTEIN):
        z0 = complex(0.31, 0.17)
        base = zeta.zeta_annulus(ring, 2.0, z0, rho, N).value
        for k in range(1, ring.order):
            u = unit_power(ring, k)
            rot = zeta.zeta_annulus(ring, 2.0, u * z0, rho, N).value
            s.check(abs(rot - base) <= REL_TOL * abs(base),
                    f"{ring}: unit rotation k={k} changed zeta by {rot - base}")
        conj = zeta.zeta_annulus(ring, 2.0, z0.conjugate(), rho, N).value
        s.check(abs(conj - base) <= REL_TOL * abs(base), f"{ring}: conjugation changed zeta")
        lam = complex(2 + 1 * ring.tau.real, 1 * ring.tau.imag)
        trans = zeta.zeta_annulus(ring, 2.0, z0 + lam, rho, N).value
        s.check(abs(trans - base) <= REL_TOL * abs(base), f"{ring}: translation changed zeta")
    return s


def _fit_leading_coefficient(lattice: str, cfg: DislocationConfig,
                             r_lo: float, r_hi: float) -> float:
    """Mean of exact_density * r^2 / d^4 over an annulus, with d the
    in-plane lattice constant."""
    from .graph import eisenstein_annulus_points, gauss_annulus_points

    if lattice == "sc":
        d = cfg.a
        u0 = (cfg.z0 - cfg.delta_c) / d
        region = gauss_annulus_points(u0, r_lo, r_hi)
        exact, _ = energy.sc_density_arrays(region.values - u0, cfg)
    else:
        d = bcc_constants(cfg).d1
        u0 = (cfg.z0 - cfg.delta_c) / d
        region = eisenstein_annulus_points(u0, r_lo, r_hi)
        exact, _ = energy.bcc_density_arrays(region.values - u0, cfg)
    v = region.values - u0
    r2 = (v.real ** 2 + v.imag ** 2) * d * d
    return float(np.mean(exact * r2 / d ** 4))


def _suite_sc_coefficient() -> SuiteResult:
    s = SuiteResult("sc-principal-coefficient")
    cfg = DislocationConfig(z0=complex(0.5, 0.5), kp=0.7, kd=1.0)
    fitted = _fit_leading_coefficient("sc", cfg, 50.0, 100.0)
    target = energy.SC_PRINCIPAL_COEFF * cfg.kd
    s.check(abs(fitted - target) <= 1e-4 * target,
            f"fitted {fitted} vs expected {target}")
    return s


def _suite_bcc_coefficient() -> SuiteResult:
    s = SuiteResult("bcc-principal-coefficient")
    cfg = DislocationConfig(z0=complex(0.4, 0.3), kd=1.0)
    fitted = _fit_leading_coefficient("bcc", cfg, 50.0, 100.0)
    target = energy.BCC_PRINCIPAL_COEFF * cfg.kd
    s.check(abs(fitted - target) <= 1e-4 * target,
            f"fitted {fitted} vs expected {target}")
    return s


def _suite_edge_tables() -> SuiteResult:
    s = SuiteResult("edge-tables")
    norms = sorted(o[0] ** 2 + o[1] ** 2 + o[2] ** 2 for o in SC_NEIGHBOR_OFFSETS)
    s.check(len(SC_NEIGHBOR_OFFSETS) == 18, "SC neighbor count != 18")
    s.check(norms[:6] == [1] * 6 and norms[6:] == [2] * 12,
            "SC offsets are not 6 at norm 1 and 12 at norm sqrt(2)")

    consts = BccConstants.from_a(1.0)
    node = (LatticePoint2(0, 0, 0), 0)
    nbrs = bcc_neighbors(node)
    s.check(len(nbrs) == 8, "BCC neighbor count != 8")
    for (q, n), kind in nbrs:
        if kind.label == "vertical_b":
            dist = consts.d0 * abs(n)
        else:
            planar = abs(q.complex_value(EISENSTEIN) - 0.0) * consts.d1
            dist = math.hypot(planar, consts.d3)
        s.check(abs(dist - consts.d0) <= 1e-12, f"BCC edge {kind.label} length {dist}")

    # reciprocity on a small patch
    for start in (LatticePoint2(0, 0), LatticePoint2(1, -2)):
        for (q, n), kind in sc_neighbors((start, 0)):
            back = [m for (m, _) in sc_neighbors((q, n))]
            s.check((start, 0) in back, f"SC edge {start}->{q} not reciprocal")
    for (q, n), kind in bcc_neighbors(node):
        back = [m for (m, _) in bcc_neighbors((q, n))]
        s.check(node in back, f"BCC edge {kind.label} not reciprocal")
    return s


def _suite_energy_zeta_consistency() -> SuiteResult:
    from .graph import RegionSpec, sc_annulus, bcc_core_and_annulus

    s = SuiteResult("energy-zeta-consistency")
    cfg = DislocationConfig(z0=complex(0.5, 0.5))
    region = RegionSpec(5.1, 40.0)
    ann = sc_annulus(cfg, region)
    reg = energy.regional_energy(cfg, ann, "sc")
    zres = zeta.zeta_annulus(GAUSS, 2.0, -(cfg.z0 / cfg.a), region.rho, region.N)
    expected = energy.SC_PRINCIPAL_COEFF * cfg.kd * cfg.a ** 2 * zres.value
    s.check(abs(reg.principal - expected) <= REL_TOL * abs(expected),
            f"sc principal {reg.principal} vs coeff*zeta {expected}")

    consts = bcc_constants(cfg)
    region_b = RegionSpec(5.1, 40.0, eps=0.2 * consts.d3)
    cfg_b = DislocationConfig(z0=complex(0.5, 0.5) * consts.d1)
    regions = bcc_core_and_annulus(cfg_b, region_b)
    reg_b = energy.regional_energy(cfg_b, regions.annulus, "bcc")
    zres_b = zeta.zeta_annulus(EISENSTEIN, 2.0, -(cfg_b.z0 / consts.d1),
                               region_b.rho, region_b.N)
    expected_b = energy.BCC_PRINCIPAL_COEFF * cfg_b.kd * consts.d1 ** 2 * zres_b.value
    s.check(abs(reg_b.principal - expected_b) <= REL_TOL * abs(expected_b),
            f"bcc principal {reg_b.principal} vs coeff*zeta {expected_b}")
    return s


_ALL_SUITES = (
    _suite_cyclotomic,
    _suite_nu_quadratic,
    _suite_nu_membership,
    _suite_unit_closure,
    _suite_zeta_invariance,
    _suite_sc_coefficient,
    _suite_bcc_coefficient,
    _suite_edge_tables,
    _suite_energy_zeta_consistency,
)


def run_all() -> dict:
    """Run every suite; returns the JSON-ready report."""
    suites = [fn() for fn in _ALL_SUITES]
    return {
        "schema": 1,
        "ok": all(s.passed for s in suites),
        "suites": [s.as_dict() for s in suites],
    }
