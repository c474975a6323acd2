"""dislokit: screw dislocations in SC and BCC lattices, exact discrete
stress-energy densities, and truncated Epstein-Hurwitz zeta sums over the
Gauss and Eisenstein integers."""

from .cyclotomic import (
    EISENSTEIN,
    GAUSS,
    LatticePoint2,
    LatticeRing,
    NU,
    check_cyclotomic_sums,
    nu,
    nu_quadratic_identity,
    unit_power,
)
from .energy import (
    EnergyRecord,
    RegionalEnergy,
    delta_bcc,
    delta_sc,
    density_bcc,
    density_sc,
    eps_bcc,
    eps_sc,
    regional_energy,
)
from .graph import (
    BccRegions,
    PointSet,
    RegionError,
    RegionSpec,
    TriangleCell,
    bcc_core_and_annulus,
    bcc_neighbors,
    classify_cell,
    sc_annulus,
    sc_core,
    sc_neighbors,
)
from .lattice import (
    BccConstants,
    DislocationConfig,
    Node3,
    SingularPointError,
    bcc_base_points,
    bcc_constants,
    bcc_height,
    bcc_nodes,
    sc_base_points,
    sc_height,
    sc_nodes,
)
from .zeta import ZetaGrid, ZetaResult, fit_log, truncated_zeta, zeta_annulus, zeta_grid, zeta_scan

__version__ = "0.1.0"
