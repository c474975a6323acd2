"""Exact arithmetic for the Gauss and Eisenstein integer lattices.

The two rings used throughout the package are Z[i] (square lattice, unit
i) and Z[w6] (triangular lattice, unit w6 = exp(i*pi/3)).  Points are kept
as integer pairs in the basis {1, tau} so that closure checks, sheet
membership and neighbor arithmetic are exact; complex values are derived
on demand.  Third-points nu_j = (w6^j + w6^(j+1))/3 locate the two shifted
sublattices that stack a three-sheet structure on top of Z[w6].

All numeric constants are derived once from sqrt(3); no transcendental
calls are made per use, so values are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

SQRT3 = math.sqrt(3.0)

_TOL_PRIMITIVE = 1e-15
_TOL_COMPOUND = 1e-12


class RingKind(Enum):
    GAUSS = "gauss"
    EISENSTEIN = "eisenstein"


@dataclass(frozen=True)
class LatticeRing:
    """One of the two quadratic integer rings, with its complex unit tau.

    ``order`` is the size of the cyclic unit group generated by tau
    (4 for Gauss, 6 for Eisenstein).
    """

    kind: RingKind
    tau: complex
    order: int

    def __str__(self) -> str:
        return self.kind.value


#: exact unit powers tau^k in the plane, k = 0 .. order-1
_GAUSS_UNITS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))
_EIS_UNITS = (
    (1.0, 0.0),
    (0.5, SQRT3 / 2),
    (-0.5, SQRT3 / 2),
    (-1.0, 0.0),
    (-0.5, -SQRT3 / 2),
    (0.5, -SQRT3 / 2),
)

#: unit powers tau^k as integer basis pairs (l1, l2) with tau^k = l1 + l2*tau
_GAUSS_UNIT_BASIS = ((1, 0), (0, 1), (-1, 0), (0, -1))
_EIS_UNIT_BASIS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

GAUSS = LatticeRing(RingKind.GAUSS, complex(0.0, 1.0), 4)
EISENSTEIN = LatticeRing(RingKind.EISENSTEIN, complex(0.5, SQRT3 / 2), 6)

#: numerators of nu_j in the basis {1, w6}; the actual point is (n1 + n2*w6)/3
NU_THIRDS = ((1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1))

#: basis-coordinate numerators (over 3) of the sheet offsets mu_0, mu_1, mu_2
SHEET_THIRDS = ((0, 0), (1, 1), (-1, 2))


def unit_power(ring: LatticeRing, k: int) -> complex:
    """tau^k, exact on axis values (e.g. Gauss k=2 is exactly -1)."""
    table = _GAUSS_UNITS if ring.kind is RingKind.GAUSS else _EIS_UNITS
    re, im = table[k % ring.order]
    return complex(re, im)


def unit_basis(ring: LatticeRing, k: int) -> tuple[int, int]:
    """tau^k as an exact integer pair in the basis {1, tau}."""
    table = _GAUSS_UNIT_BASIS if ring.kind is RingKind.GAUSS else _EIS_UNIT_BASIS
    return table[k % ring.order]


def rotate_basis(ring: LatticeRing, l1: int, l2: int, k: int = 1) -> tuple[int, int]:
    """Multiply l1 + l2*tau by tau^k, exactly, in basis coordinates.

    One step is (l1, l2) -> (-l2, l1) for Gauss and (l1, l2) -> (-l2, l1+l2)
    for Eisenstein (from tau^2 = tau - 1).
    """
    k = k % ring.order
    for _ in range(k):
        if ring.kind is RingKind.GAUSS:
            l1, l2 = -l2, l1
        else:
            l1, l2 = -l2, l1 + l2
    return l1, l2


def nu(j: int) -> complex:
    """Third-point nu_j = (w6^j + w6^(j+1))/3 of the Eisenstein lattice."""
    if not 0 <= j <= 5:
        raise ValueError(f"nu index must be in 0..5, got {j}")
    n1, n2 = NU_THIRDS[j]
    tau = EISENSTEIN.tau
    return complex(n1 + n2 * tau.real, n2 * tau.imag) / 3.0


NU = tuple(nu(j) for j in range(6))
MU = (complex(0.0, 0.0), NU[0], NU[1])


@dataclass(frozen=True, order=True)
class LatticePoint2:
    """A lattice point l1 + l2*tau + mu_sheet, held exactly.

    ``sheet`` selects the third-point offset mu_sheet (always 0 for the
    Gauss ring).  Ordering is lexicographic in (sheet, l1, l2), which is
    the canonical enumeration order used everywhere.
    """

    l1: int
    l2: int
    sheet: int = 0

    def __post_init__(self) -> None:
        if self.sheet not in (0, 1, 2):
            raise ValueError(f"sheet must be 0, 1 or 2, got {self.sheet}")

    def thirds(self) -> tuple[int, int]:
        """Basis coordinates times 3, as exact integers."""
        t1, t2 = SHEET_THIRDS[self.sheet]
        return 3 * self.l1 + t1, 3 * self.l2 + t2

    def complex_value(self, ring: LatticeRing) -> complex:
        if ring.kind is RingKind.GAUSS and self.sheet != 0:
            raise ValueError("Gauss lattice points carry no sheet offset")
        t1, t2 = SHEET_THIRDS[self.sheet]
        u = self.l1 + t1 / 3.0
        v = self.l2 + t2 / 3.0
        tau = ring.tau
        return complex(u + v * tau.real, v * tau.imag)

    @classmethod
    def from_complex(cls, z: complex, ring: LatticeRing, tol: float = 1e-9) -> "LatticePoint2":
        """Recover exact basis coordinates (and sheet) from a complex value.

        Raises ValueError if z is not within ``tol`` of a representable
        point (integer coordinates, or thirds on a valid sheet).
        """
        tau = ring.tau
        v = z.imag / tau.imag
        u = z.real - v * tau.real
        t1 = round(3.0 * u)
        t2 = round(3.0 * v)
        if abs(3.0 * u - t1) > 3 * tol or abs(3.0 * v - t2) > 3 * tol:
            raise ValueError(f"{z} is not a lattice point of {ring} (basis ({u}, {v}))")
        r1, r2 = t1 % 3, t2 % 3
        if (r1, r2) == (0, 0):
            sheet = 0
        elif (r1, r2) == (1, 1) and ring.kind is RingKind.EISENSTEIN:
            sheet = 1
        elif (r1, r2) == (2, 2) and ring.kind is RingKind.EISENSTEIN:
            sheet = 2
        else:
            raise ValueError(f"{z} has thirds residue {(r1, r2)}, not on any sheet")
        s1, s2 = SHEET_THIRDS[sheet]
        return cls((t1 - s1) // 3, (t2 - s2) // 3, sheet)


def check_cyclotomic_sums(ring: LatticeRing) -> float:
    """Max residual of the ring's cyclotomic cancellations.

    Gauss: sum of i^l over l = 0..3.  Eisenstein: 1 + w6^2 + w6^4, plus the
    quadratic sums of nu over one parity class and its conjugate.
    """
    if ring.kind is RingKind.GAUSS:
        total = sum(unit_power(ring, k) for k in range(4))
        return abs(total)
    s1 = unit_power(ring, 0) + unit_power(ring, 2) + unit_power(ring, 4)
    s2 = sum(NU[2 * i] ** 2 for i in range(3))
    s3 = sum(NU[2 * i].conjugate() ** 2 for i in range(3))
    return max(abs(s1), abs(s2), abs(s3))


def nu_quadratic_identity(z: complex, parity: str = "even") -> tuple[complex, complex]:
    """Both sides of sum_i (nu_p/z - conj(nu_p)/conj(z))^2 = -2/|z|^2.

    ``parity`` selects the nu indices: "even" uses nu_0, nu_2, nu_4 and
    "odd" uses nu_1, nu_3, nu_5; the identity holds for either class.
    """
    if z == 0:
        raise ValueError("z must be nonzero")
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    p = 0 if parity == "even" else 1
    lhs = sum((NU[2 * i + p] / z - NU[2 * i + p].conjugate() / z.conjugate()) ** 2 for i in range(3))
    rhs = -2.0 / abs(z) ** 2
    return lhs, complex(rhs)


def principal_arg(z: complex) -> float:
    """Argument in (-pi, pi]; the -pi edge (negative real axis approached
    from below) is folded onto +pi so the branch is single valued."""
    a = math.atan2(z.imag, z.real)
    if a <= -math.pi:
        return math.pi
    return a
