"""Construction of SC and BCC lattices carrying a single screw dislocation.

The SC lattice lives over Z[i]*a; the BCC lattice is handled through its
(1,1,1)-projection as three sheets (Z[w6] + mu_c)*d1, c = 0, 1, 2, stacked
with spacing d0/3 along the Burgers direction.  A dislocation at z0 lifts
every base point to the heights

    n*d + delta3 + (d/2pi) * Arg(gamma * phase_c * (z - z0)/|z - z0|),

with d = a for SC and d = d0 for BCC, Arg taken in (-pi, pi], and a
per-sheet phase factor of a cube root of unity for BCC.  The winding
integer n indexes the covering sheets.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import (
    EISENSTEIN,
    GAUSS,
    SHEET_THIRDS,
    SQRT3,
    LatticePoint2,
    LatticeRing,
    principal_arg,
    unit_power,
)

TWO_PI = 2.0 * math.pi


class SingularPointError(ValueError):
    """A base point (or its displaced neighbor) coincides with z0."""


@dataclass(frozen=True)
class DislocationConfig:
    """Dislocation center, embedding offset and spring constants.

    ``z0`` and ``delta`` are in physical length units (the same units as
    the lattice constant ``a``).  ``kp`` and ``kd`` are the spring
    constants of the horizontal and diagonal SC springs; BCC uses ``kd``
    only.
    """

    z0: complex
    delta: tuple[float, float, float] = (0.0, 0.0, 0.0)
    a: float = 1.0
    kp: float = 1.0
    kd: float = 1.0

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise ValueError(f"lattice constant must be positive, got {self.a}")
        if self.kp < 0 or self.kd < 0:
            raise ValueError("spring constants must be nonnegative")
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "delta", tuple(float(d) for d in self.delta))

    @property
    def delta_c(self) -> complex:
        return complex(self.delta[0], self.delta[1])

    def gamma(self, d: float) -> complex:
        """Phase exp(2*pi*i*delta3/d) of the constant offset section."""
        return cmath.exp(2j * math.pi * self.delta[2] / d)


@dataclass(frozen=True)
class BccConstants:
    """Length scales of the (1,1,1)-projected BCC lattice.

    d0: sheet period along the Burgers direction (= |b| = sqrt(3)/2 * a)
    d1: in-plane lattice constant of each sheet (= sqrt(2) * a)
    d2: planar nearest-neighbor offset between sheets (= d1/sqrt(3))
    d3: vertical nearest-neighbor offset between sheets (= d0/3)
    """

    d0: float
    d1: float
    d2: float
    d3: float

    @classmethod
    def from_a(cls, a: float) -> "BccConstants":
        return cls(d0=SQRT3 / 2 * a, d1=math.sqrt(2.0) * a, d2=math.sqrt(2.0) / SQRT3 * a, d3=SQRT3 / 6 * a)


def bcc_constants(cfg: DislocationConfig) -> BccConstants:
    return BccConstants.from_a(cfg.a)


@dataclass(frozen=True)
class Node3:
    """A dislocated lattice node: base point, winding index and 3-position."""

    base: LatticePoint2
    n: int
    position: tuple[float, float, float]


# ---------------------------------------------------------------------------
# base-point enumeration

def _gauss_disk_arrays(center: complex, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Integer pairs (l1, l2) with |l1 + l2*i - center| <= radius, in
    lexicographic order.  Comparisons use squared distances."""
    lo1 = math.ceil(center.real - radius)
    hi1 = math.floor(center.real + radius)
    lo2 = math.ceil(center.imag - radius)
    hi2 = math.floor(center.imag + radius)
    if hi1 < lo1 or hi2 < lo2:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    l1, l2 = np.meshgrid(np.arange(lo1, hi1 + 1, dtype=np.int64),
                         np.arange(lo2, hi2 + 1, dtype=np.int64), indexing="ij")
    l1 = l1.ravel()
    l2 = l2.ravel()
    dx = l1 - center.real
    dy = l2 - center.imag
    keep = dx * dx + dy * dy <= radius * radius
    return l1[keep], l2[keep]


def _eisenstein_disk_arrays(center: complex, radius: float,
                            sheet: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Integer pairs (l1, l2) with |l1 + l2*w6 + mu_sheet - center| <= radius,
    lexicographic order."""
    h = SQRT3 / 2
    t1, t2 = SHEET_THIRDS[sheet]
    o1, o2 = t1 / 3.0, t2 / 3.0
    lo2 = math.ceil((center.imag - radius) / h - o2)
    hi2 = math.floor((center.imag + radius) / h - o2)
    if hi2 < lo2:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    # l1 + (l2 + o2)/2 + o1 ranges over [x0 - R, x0 + R]
    half = max(abs(lo2 + o2), abs(hi2 + o2)) / 2.0
    lo1 = math.floor(center.real - radius - half - o1) - 1
    hi1 = math.ceil(center.real + radius + half - o1) + 1
    l1, l2 = np.meshgrid(np.arange(lo1, hi1 + 1, dtype=np.int64),
                         np.arange(lo2, hi2 + 1, dtype=np.int64), indexing="ij")
    l1 = l1.ravel()
    l2 = l2.ravel()
    dx = (l1 + o1) + 0.5 * (l2 + o2) - center.real
    dy = h * (l2 + o2) - center.imag
    keep = dx * dx + dy * dy <= radius * radius
    return l1[keep], l2[keep]


def points_complex(ring: LatticeRing, l1: np.ndarray, l2: np.ndarray,
                   sheet: int = 0) -> np.ndarray:
    """Complex values of basis pairs plus the sheet offset."""
    t1, t2 = SHEET_THIRDS[sheet]
    u = l1 + t1 / 3.0
    v = l2 + t2 / 3.0
    tau = ring.tau
    return (u + v * tau.real) + 1j * (v * tau.imag)


def sc_base_points(cfg: DislocationConfig, radius: float) -> list[LatticePoint2]:
    """All l in Z[i] with |l*a + delta_C - z0| <= radius, sorted by (l1, l2)."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    center = (cfg.z0 - cfg.delta_c) / cfg.a
    l1, l2 = _gauss_disk_arrays(center, radius / cfg.a)
    return [LatticePoint2(int(a_), int(b_)) for a_, b_ in zip(l1, l2)]


def bcc_base_points(cfg: DislocationConfig, sheet: int, radius: float) -> list[LatticePoint2]:
    """All points of (Z[w6] + mu_sheet)*d1 within ``radius`` of z0 - delta_C."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    if sheet not in (0, 1, 2):
        raise ValueError(f"sheet must be 0, 1 or 2, got {sheet}")
    d1 = bcc_constants(cfg).d1
    center = (cfg.z0 - cfg.delta_c) / d1
    l1, l2 = _eisenstein_disk_arrays(center, radius / d1, sheet)
    return [LatticePoint2(int(a_), int(b_), sheet) for a_, b_ in zip(l1, l2)]


# ---------------------------------------------------------------------------
# heights

def sc_height(cfg: DislocationConfig, p: LatticePoint2, n: int) -> float:
    """Third coordinate of SC node (p, n) under the dislocation at z0."""
    a = cfg.a
    z = p.complex_value(GAUSS) * a + cfg.delta_c
    rel = z - cfg.z0
    if rel == 0:
        raise SingularPointError(f"base point {p} coincides with z0 = {cfg.z0}")
    phase = cfg.gamma(a) * (rel / abs(rel))
    return n * a + cfg.delta[2] + a / TWO_PI * principal_arg(phase)


#: additive winding corrections so that the per-sheet phase w3^(-c) keeps n integral
_BCC_SHEET_PHASE = tuple(unit_power(EISENSTEIN, (-2 * c) % 6) for c in range(3))


def bcc_height(cfg: DislocationConfig, p: LatticePoint2, n: int) -> float:
    """Third coordinate of BCC node (p, n); sheet phases are cube roots of
    unity, so the three undislocated sheets sit d0/3 apart."""
    c = bcc_constants(cfg)
    z = p.complex_value(EISENSTEIN) * c.d1 + cfg.delta_c
    rel = z - cfg.z0
    if rel == 0:
        raise SingularPointError(f"base point {p} coincides with z0 = {cfg.z0}")
    phase = _BCC_SHEET_PHASE[p.sheet] * cfg.gamma(c.d0) * (rel / abs(rel))
    return n * c.d0 + cfg.delta[2] + c.d0 / TWO_PI * principal_arg(phase)


def height_increment(cfg: DislocationConfig, lattice: str,
                     p_from: LatticePoint2, p_to: LatticePoint2) -> float:
    """Branch-consistent height change along one graph edge.

    Uses the argument of the phase ratio, which is continuous across the
    branch cut; summing increments around a closed loop therefore counts
    the winding around z0 in units of the Burgers length.
    """
    if lattice == "sc":
        d = cfg.a
        za = p_from.complex_value(GAUSS) * cfg.a + cfg.delta_c
        zb = p_to.complex_value(GAUSS) * cfg.a + cfg.delta_c
        pa = za - cfg.z0
        pb = zb - cfg.z0
    elif lattice == "bcc":
        c = bcc_constants(cfg)
        d = c.d0
        za = p_from.complex_value(EISENSTEIN) * c.d1 + cfg.delta_c
        zb = p_to.complex_value(EISENSTEIN) * c.d1 + cfg.delta_c
        pa = _BCC_SHEET_PHASE[p_from.sheet] * (za - cfg.z0)
        pb = _BCC_SHEET_PHASE[p_to.sheet] * (zb - cfg.z0)
    else:
        raise ValueError(f"lattice must be 'sc' or 'bcc', got {lattice!r}")
    if pa == 0 or pb == 0:
        raise SingularPointError("edge endpoint coincides with z0")
    return d / TWO_PI * principal_arg(pb / pa)


# ---------------------------------------------------------------------------
# dislocated node clouds

def sc_nodes(cfg: DislocationConfig, radius: float, windings: int = 1) -> list[Node3]:
    """Dislocated SC nodes within ``radius`` of z0, windings n = 0..windings-1,
    ordered by (l1, l2, n)."""
    nodes = []
    for p in sc_base_points(cfg, radius):
        z = p.complex_value(GAUSS) * cfg.a + cfg.delta_c
        for n in range(windings):
            nodes.append(Node3(p, n, (z.real, z.imag, sc_height(cfg, p, n))))
    return nodes


def bcc_nodes(cfg: DislocationConfig, radius: float, windings: int = 1) -> list[Node3]:
    """Dislocated BCC nodes of all three sheets within ``radius`` of z0,
    ordered by (sheet, l1, l2, n)."""
    d1 = bcc_constants(cfg).d1
    nodes = []
    for sheet in (0, 1, 2):
        for p in bcc_base_points(cfg, sheet, radius):
            z = p.complex_value(EISENSTEIN) * d1 + cfg.delta_c
            for n in range(windings):
                nodes.append(Node3(p, n, (z.real, z.imag, bcc_height(cfg, p, n))))
    return nodes


def nodes_to_xyz(nodes: list[Node3], comment: str = "dislokit lattice export") -> str:
    """XYZ-format text: count line, comment line, then 'Fe x y z' per node."""
    lines = [str(len(nodes)), comment]
    for node in nodes:
        x, y, z = node.position
        lines.append(f"Fe {x:.17g} {y:.17g} {z:.17g}")
    return "\n".join(lines) + "\n"
