"""Edge structure, spiral-cell classification and region sets.

The SC graph has 18 edges per node (6 axis, 12 face diagonals); the BCC
graph has 8 (6 inter-sheet nearest neighbors through the third-points
nu_j plus 2 along the Burgers direction).  Region construction keeps all
radius comparisons in normalized coordinates (lengths divided by the
in-plane lattice constant), so that the exact same floating-point
membership test is shared by the energy sums and the zeta sums.

Annulus boundary conventions: the SC annulus is strict on both sides and
the SC core is closed (ties at the exact radius go to the core).  The
BCC annulus keeps points at distance >= rho (complement of the strict
type-II core) and windows the outside by the largest distance among the
six planar neighbors of each node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import (
    EISENSTEIN,
    GAUSS,
    NU,
    NU_THIRDS,
    SHEET_THIRDS,
    SQRT3,
    LatticePoint2,
    LatticeRing,
    RingKind,
)
from .lattice import (
    BccConstants,
    DislocationConfig,
    bcc_constants,
    points_complex,
)


class RegionError(ValueError):
    """Invalid region parameters (e.g. N <= rho, eps out of range)."""


@dataclass(frozen=True)
class RegionSpec:
    """Annulus radii and core strain threshold, in lattice units.

    ``rho`` and ``N`` multiply the in-plane lattice constant (a for SC,
    d1 for BCC); ``eps`` is the type-I core threshold in physical length
    units and must stay below d3/2 for BCC.
    """

    rho: float
    N: float
    eps: float = 0.0

    def __post_init__(self) -> None:
        if not self.rho > 0:
            raise RegionError(f"rho must be positive, got {self.rho}")
        if not self.N > self.rho:
            raise RegionError(f"N must exceed rho, got N={self.N}, rho={self.rho}")


@dataclass(frozen=True)
class EdgeKind:
    lattice: str
    label: str


#: SC neighbor offsets (dl1, dl2, dn) with their edge class label
SC_NEIGHBOR_OFFSETS: tuple[tuple[int, int, int, str], ...] = (
    (1, 0, 0, "axis1"), (-1, 0, 0, "axis1"),
    (0, 1, 0, "axis2"), (0, -1, 0, "axis2"),
    (0, 0, 1, "axis3"), (0, 0, -1, "axis3"),
    (0, 1, 1, "diag23"), (0, 1, -1, "diag23"), (0, -1, 1, "diag23"), (0, -1, -1, "diag23"),
    (1, 0, 1, "diag13"), (1, 0, -1, "diag13"), (-1, 0, 1, "diag13"), (-1, 0, -1, "diag13"),
    (1, 1, 0, "diag12+"), (-1, -1, 0, "diag12+"),
    (1, -1, 0, "diag12-"), (-1, 1, 0, "diag12-"),
)


def sc_neighbors(node: tuple[LatticePoint2, int]) -> list[tuple[tuple[LatticePoint2, int], EdgeKind]]:
    """The 18 SC graph neighbors of (l, n): 6 axis and 12 face diagonals."""
    p, n = node
    out = []
    for dl1, dl2, dn, label in SC_NEIGHBOR_OFFSETS:
        out.append(((LatticePoint2(p.l1 + dl1, p.l2 + dl2), n + dn), EdgeKind("sc", label)))
    return out


def _bcc_nu_target(p: LatticePoint2, j: int) -> LatticePoint2:
    """Exact basis arithmetic for the neighbor at planar offset nu_j*d1."""
    t1, t2 = p.thirds()
    n1, n2 = NU_THIRDS[j]
    t1, t2 = t1 + n1, t2 + n2
    r = (t1 % 3, t2 % 3)
    if r == (0, 0):
        sheet = 0
    elif r == (1, 1):
        sheet = 1
    elif r == (2, 2):
        sheet = 2
    else:
        raise AssertionError(f"nu step left the sheet system: thirds {(t1, t2)}")
    s1, s2 = SHEET_THIRDS[sheet]
    return LatticePoint2((t1 - s1) // 3, (t2 - s2) // 3, sheet)


#: winding carry for a nu_j edge from sheet c: target n is n + _BCC_N_CARRY[c][j % 2]
_BCC_N_CARRY = ((0, 0), (-1, 0), (0, 1))


def bcc_neighbors(node: tuple[LatticePoint2, int]) -> list[tuple[tuple[LatticePoint2, int], EdgeKind]]:
    """The 8 BCC graph neighbors of (l, n).

    Six edges step to the adjacent sheets through nu_j (even j up a sheet
    index, odd j down, with vertical offset -d3 resp. +d3 before the
    dislocation); two edges run along the Burgers direction.
    """
    p, n = node
    out = []
    for j in range(6):
        q = _bcc_nu_target(p, j)
        carry = _BCC_N_CARRY[p.sheet][j % 2]
        out.append(((q, n + carry), EdgeKind("bcc", f"nu{j}")))
    out.append(((p, n + 1), EdgeKind("bcc", "vertical_b")))
    out.append(((p, n - 1), EdgeKind("bcc", "vertical_b")))
    return out


# ---------------------------------------------------------------------------
# spiral cells

@dataclass(frozen=True)
class TriangleCell:
    """A projected BCC triangle with one vertex on each sheet."""

    vertices: tuple[LatticePoint2, LatticePoint2, LatticePoint2]

    def center(self, consts: BccConstants) -> complex:
        zs = [v.complex_value(EISENSTEIN) * consts.d1 for v in self.vertices]
        return sum(zs) / 3.0

    def ccw_vertices(self, consts: BccConstants) -> tuple[LatticePoint2, ...]:
        """Vertices reordered to positive (counterclockwise) orientation."""
        zs = [v.complex_value(EISENSTEIN) * consts.d1 for v in self.vertices]
        cross = ((zs[1] - zs[0]).real * (zs[2] - zs[0]).imag
                 - (zs[1] - zs[0]).imag * (zs[2] - zs[0]).real)
        if cross == 0:
            raise RegionError("degenerate triangle cell")
        if cross > 0:
            return self.vertices
        return (self.vertices[0], self.vertices[2], self.vertices[1])


def classify_cell(cfg: DislocationConfig, cell: TriangleCell) -> str:
    """'ascendant' or 'descendant' by the height gained around the cell.

    Traverses the three spiral edges in counterclockwise planar
    orientation, summing branch-consistent height increments; +d0 marks
    an ascendant cell and -d0 a descendant one.  Cells whose circuit
    encloses the dislocation pick up an extra winding and are rejected.
    """
    from .lattice import height_increment

    consts = bcc_constants(cfg)
    verts = cell.ccw_vertices(consts)
    total = 0.0
    for i in range(3):
        total += height_increment(cfg, "bcc", verts[i], verts[(i + 1) % 3])
    if abs(total - consts.d0) < 1e-9 * consts.d0:
        return "ascendant"
    if abs(total + consts.d0) < 1e-9 * consts.d0:
        return "descendant"
    raise RegionError(f"cell circuit gained {total}, not +-d0 (core cell?)")


def bcc_cells_around(p: LatticePoint2) -> tuple[TriangleCell, TriangleCell]:
    """Two adjacent projected faces with a corner at point p.

    Consecutive faces around a vertex cycle the sheets in opposite
    senses, so the pair classifies as one ascendant and one descendant
    cell.
    """
    first = TriangleCell((p, _bcc_nu_target(p, 0), _bcc_nu_target(p, 1)))
    second = TriangleCell((p, _bcc_nu_target(p, 1), _bcc_nu_target(p, 2)))
    return first, second


# ---------------------------------------------------------------------------
# point sets in normalized coordinates

@dataclass
class PointSet:
    """Structure-of-arrays set of lattice points on one sheet.

    ``l1``/``l2`` are integer basis coordinates in canonical lexicographic
    order; ``values`` caches the normalized complex positions (including
    the sheet offset).
    """

    ring: LatticeRing
    l1: np.ndarray
    l2: np.ndarray
    sheet: int = 0
    values: np.ndarray = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.values is None:
            self.values = points_complex(self.ring, self.l1, self.l2, self.sheet)

    def __len__(self) -> int:
        return int(self.l1.size)

    def __iter__(self):
        for a, b in zip(self.l1, self.l2):
            yield LatticePoint2(int(a), int(b), self.sheet)

    def points(self) -> list[LatticePoint2]:
        return list(self)


def _gauss_candidates(u0: complex, radius: float) -> tuple[np.ndarray, np.ndarray]:
    # meshgrid with indexing="ij" over ascending aranges flattens to
    # lexicographic (l1, l2) order, the canonical enumeration order
    lo1 = math.floor(u0.real - radius) - 1
    hi1 = math.ceil(u0.real + radius) + 1
    lo2 = math.floor(u0.imag - radius) - 1
    hi2 = math.ceil(u0.imag + radius) + 1
    l1, l2 = np.meshgrid(np.arange(lo1, hi1 + 1, dtype=np.int64),
                         np.arange(lo2, hi2 + 1, dtype=np.int64), indexing="ij")
    return l1.ravel(), l2.ravel()


def _eisenstein_candidates(u0: complex, radius: float,
                           sheet: int = 0) -> tuple[np.ndarray, np.ndarray]:
    h = SQRT3 / 2
    t1, t2 = SHEET_THIRDS[sheet]
    o1, o2 = t1 / 3.0, t2 / 3.0
    lo2 = math.floor((u0.imag - radius) / h - o2) - 1
    hi2 = math.ceil((u0.imag + radius) / h - o2) + 1
    half = max(abs(lo2 + o2), abs(hi2 + o2)) / 2.0
    lo1 = math.floor(u0.real - radius - half - o1) - 1
    hi1 = math.ceil(u0.real + radius + half - o1) + 1
    l1, l2 = np.meshgrid(np.arange(lo1, hi1 + 1, dtype=np.int64),
                         np.arange(lo2, hi2 + 1, dtype=np.int64), indexing="ij")
    return l1.ravel(), l2.ravel()


def gauss_annulus_points(u0: complex, rho: float, N: float) -> PointSet:
    """{l in Z[i] : rho < |l - u0| < N}, strict on both sides."""
    l1, l2 = _gauss_candidates(u0, N)
    z = points_complex(GAUSS, l1, l2)
    v = z - u0
    r2 = v.real * v.real + v.imag * v.imag
    keep = (r2 > rho * rho) & (r2 < N * N)
    return PointSet(GAUSS, l1[keep], l2[keep], 0, z[keep])


def gauss_core_points(u0: complex, rho: float) -> PointSet:
    """{l in Z[i] : |l - u0| <= rho} (closed: boundary ties go to the core)."""
    l1, l2 = _gauss_candidates(u0, rho)
    z = points_complex(GAUSS, l1, l2)
    v = z - u0
    r2 = v.real * v.real + v.imag * v.imag
    keep = r2 <= rho * rho
    return PointSet(GAUSS, l1[keep], l2[keep], 0, z[keep])


def _eis_max_neighbor_dist2(v: np.ndarray) -> np.ndarray:
    """max_j |v + nu_j|^2 over the six planar neighbor offsets."""
    out = None
    for nuj in NU:
        w = v + nuj
        d2 = w.real * w.real + w.imag * w.imag
        out = d2 if out is None else np.maximum(out, d2)
    return out


def eisenstein_annulus_points(u0: complex, rho: float, N: float) -> PointSet:
    """Sheet-0 BCC annulus in normalized units, for the regime where the
    type-III core reduces to the type-II disk:

        {l in Z[w6] : |l - u0| >= rho  and  max_j |l + nu_j - u0| < N}.
    """
    l1, l2 = _eisenstein_candidates(u0, N + 1.0)
    z = points_complex(EISENSTEIN, l1, l2)
    v = z - u0
    r2 = v.real * v.real + v.imag * v.imag
    keep = (r2 >= rho * rho) & (_eis_max_neighbor_dist2(v) < N * N)
    return PointSet(EISENSTEIN, l1[keep], l2[keep], 0, z[keep])


def eisenstein_disk_points(u0: complex, radius: float, sheet: int = 0,
                           closed: bool = False) -> PointSet:
    """{l on the given sheet : |l - u0| < radius} (or <= if closed)."""
    l1, l2 = _eisenstein_candidates(u0, radius, sheet)
    z = points_complex(EISENSTEIN, l1, l2, sheet)
    v = z - u0
    r2 = v.real * v.real + v.imag * v.imag
    keep = r2 <= radius * radius if closed else r2 < radius * radius
    return PointSet(EISENSTEIN, l1[keep], l2[keep], sheet, z[keep])


# ---------------------------------------------------------------------------
# physical-units region construction

def sc_annulus(cfg: DislocationConfig, region: RegionSpec) -> PointSet:
    """A = {l in Z[i] : rho*a < |l*a - z0| < N*a}, strict inequalities."""
    u0 = (cfg.z0 - cfg.delta_c) / cfg.a
    return gauss_annulus_points(u0, region.rho, region.N)


def sc_core(cfg: DislocationConfig, rho: float) -> PointSet:
    u0 = (cfg.z0 - cfg.delta_c) / cfg.a
    return gauss_core_points(u0, rho)


@dataclass
class BccRegions:
    """Type I/II/III cores and the windowed annulus of the sheet-0 lattice."""

    core_type1: tuple[PointSet, PointSet, PointSet]
    core_type2: PointSet
    core_type3: list[LatticePoint2]
    annulus: PointSet


def _bcc_type1_core(cfg: DislocationConfig, eps: float, sheet: int) -> PointSet:
    """Sheet points where some |eps^(c,j)| exceeds the threshold.

    The strain magnitude is bounded by (d0/2pi)*arcsin(|nu|*d1/r), which
    caps the search radius for any positive threshold.
    """
    from .energy import bcc_eps_arrays

    consts = bcc_constants(cfg)
    x = 2.0 * math.pi * eps / consts.d0
    if x >= math.pi / 2:
        bound = 1.0 / SQRT3 + 1e-9
    else:
        bound = (1.0 / SQRT3) / max(math.sin(x), 1e-300)
    u0 = (cfg.z0 - cfg.delta_c) / consts.d1
    cand = eisenstein_disk_points(u0, bound + 1.0, sheet, closed=True)
    if len(cand) == 0:
        return cand
    v = cand.values - u0
    eps_all = bcc_eps_arrays(v, consts)
    keep = np.max(np.abs(eps_all), axis=0) > eps
    return PointSet(EISENSTEIN, cand.l1[keep], cand.l2[keep], sheet, cand.values[keep])


def bcc_core_and_annulus(cfg: DislocationConfig, region: RegionSpec,
                         adjacency: str = "meets") -> BccRegions:
    """Core sets C_I (per sheet), C_II, C_III and the annulus window.

    ``adjacency`` controls how a sheet-0 point joins C_III through its
    neighbors' type-I membership: "meets" (any neighbor in a type-I core,
    the default) or "subset" (all six neighbors).
    """
    consts = bcc_constants(cfg)
    if not 0 < region.eps < consts.d3 / 2:
        raise RegionError(f"eps must lie in (0, d3/2) = (0, {consts.d3 / 2}), got {region.eps}")
    if adjacency not in ("meets", "subset"):
        raise ValueError(f"adjacency must be 'meets' or 'subset', got {adjacency!r}")

    c1 = tuple(_bcc_type1_core(cfg, region.eps, sheet) for sheet in (0, 1, 2))
    u0 = (cfg.z0 - cfg.delta_c) / consts.d1
    c2 = eisenstein_disk_points(u0, region.rho, 0, closed=False)

    c1_sets = [set(zip(ps.l1.tolist(), ps.l2.tolist())) for ps in c1]
    c2_set = set(zip(c2.l1.tolist(), c2.l2.tolist()))

    # candidates for C_III: anything in C_I(0), C_II, or planar-adjacent to C_I(1)/C_I(2)
    cand: set[tuple[int, int]] = set(c1_sets[0]) | c2_set
    for sheet in (1, 2):
        for a_, b_ in c1_sets[sheet]:
            p = LatticePoint2(a_, b_, sheet)
            for j in range(6):
                q = _bcc_nu_target(p, j)
                if q.sheet == 0:
                    cand.add((q.l1, q.l2))

    c3: list[LatticePoint2] = []
    for a_, b_ in sorted(cand):
        p = LatticePoint2(a_, b_, 0)
        if (a_, b_) in c1_sets[0] or (a_, b_) in c2_set:
            c3.append(p)
            continue
        hits = 0
        for j in range(6):
            q = _bcc_nu_target(p, j)
            if (q.l1, q.l2) in c1_sets[q.sheet]:
                hits += 1
        if (adjacency == "meets" and hits > 0) or (adjacency == "subset" and hits == 6):
            c3.append(p)

    annulus = eisenstein_annulus_points(u0, region.rho, region.N)
    extra = {(p.l1, p.l2) for p in c3} - c2_set
    if extra:
        keep = np.array([(a_, b_) not in extra
                         for a_, b_ in zip(annulus.l1.tolist(), annulus.l2.tolist())])
        annulus = PointSet(EISENSTEIN, annulus.l1[keep], annulus.l2[keep], 0,
                           annulus.values[keep])
    return BccRegions(c1, c2, c3, annulus)


def bcc_regime_holds(cfg: DislocationConfig, region: RegionSpec) -> bool:
    """True when C_III is contained in C_II, i.e. the annulus window is
    independent of the strain threshold."""
    regions = bcc_core_and_annulus(cfg, region)
    c2_set = {(p.l1, p.l2) for p in regions.core_type2}
    return all((p.l1, p.l2) in c2_set for p in regions.core_type3)
