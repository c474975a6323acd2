"""Command line interface.

Subcommands:

    lattice   export dislocated node positions (xyz or csv)
    energy    per-node density table plus a JSON summary
    zeta      annulus scans, fundamental-cell grids, single values
    validate  run the identity/invariant suites, JSON report

All numeric output is printed with 17 significant digits and LF line
endings; identical configurations produce byte-identical files.  Exit
codes: 0 ok, 2 usage or domain error, 3 invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import energy as energy_mod
from . import validate as validate_mod
from . import zeta as zeta_mod
from .cyclotomic import EISENSTEIN, GAUSS, LatticeRing
from .graph import (
    RegionError,
    RegionSpec,
    bcc_core_and_annulus,
    sc_annulus,
)
from .lattice import (
    DislocationConfig,
    SingularPointError,
    bcc_constants,
    bcc_nodes,
    nodes_to_xyz,
    sc_nodes,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_INVARIANT = 3


def _ring(lattice: str) -> LatticeRing:
    return GAUSS if lattice == "sc" else EISENSTEIN


def _scale(lattice: str, a: float) -> float:
    """In-plane lattice constant: a for SC, d1 for BCC."""
    return a if lattice == "sc" else bcc_constants(DislocationConfig(0j, a=a)).d1


def _parse_z0(text: str, lattice: str, a: float) -> complex:
    """Basis coordinates "x,y" -> physical z0 = (x + y*tau) * d."""
    try:
        xs, ys = text.split(",")
        x, y = float(xs), float(ys)
    except ValueError:
        raise RegionError(f"--z0 expects 'x,y', got {text!r}")
    tau = _ring(lattice).tau
    return complex(x + y * tau.real, y * tau.imag) * _scale(lattice, a)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("DISLOKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise RegionError(f"DISLOKIT_THREADS is not an integer: {env!r}")
    return 1


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lattice", choices=("sc", "bcc"), default="sc")
    p.add_argument("--a", type=float, default=1.0, help="lattice constant")
    p.add_argument("--z0", default="0.5,0.5",
                   help="dislocation center in basis coordinates 'x,y' of the cell")
    p.add_argument("--kp", type=float, default=1.0)
    p.add_argument("--kd", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=5.1)
    p.add_argument("--N", type=float, default=75.0, dest="N")
    p.add_argument("--eps", type=float, default=None,
                   help="type-I core threshold (default 0.4*d3/2 for bcc)")
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _config(args) -> DislocationConfig:
    z0 = _parse_z0(args.z0, args.lattice, args.a)
    return DislocationConfig(z0=z0, a=args.a, kp=args.kp, kd=args.kd)


def _default_eps(args, cfg: DislocationConfig) -> float:
    if args.eps is not None:
        return args.eps
    return 0.4 * bcc_constants(cfg).d3 / 2.0


# ---------------------------------------------------------------------------
# subcommands

def cmd_lattice(args) -> int:
    cfg = _config(args)
    radius = args.N * _scale(args.lattice, args.a)
    if args.lattice == "sc":
        nodes = sc_nodes(cfg, radius, args.windings)
    else:
        nodes = bcc_nodes(cfg, radius, args.windings)
    if args.format == "xyz":
        _write(args.out, nodes_to_xyz(nodes))
    else:
        lines = ["sheet,l1,l2,n,x,y,z"]
        for nd in nodes:
            x, y, z = nd.position
            lines.append(f"{nd.base.sheet},{nd.base.l1},{nd.base.l2},{nd.n},"
                         f"{_fmt(x)},{_fmt(y)},{_fmt(z)}")
        _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_energy(args) -> int:
    cfg = _config(args)
    region = RegionSpec(args.rho, args.N, args.eps if args.eps is not None else 0.0)
    if args.lattice == "sc":
        ann = sc_annulus(cfg, region)
        u0 = (cfg.z0 - cfg.delta_c) / cfg.a
        d = cfg.a
        exact, principal = (energy_mod.sc_density_arrays(ann.values - u0, cfg)
                            if len(ann) else (np.empty(0), np.empty(0)))
        zeta_z0 = -(cfg.z0 - cfg.delta_c) / cfg.a
        coeff = energy_mod.SC_PRINCIPAL_COEFF * cfg.kd * cfg.a ** 2
        ring = GAUSS
    else:
        consts = bcc_constants(cfg)
        region = RegionSpec(args.rho, args.N, _default_eps(args, cfg))
        regions = bcc_core_and_annulus(cfg, region)
        ann = regions.annulus
        u0 = (cfg.z0 - cfg.delta_c) / consts.d1
        d = consts.d1
        exact, principal = (energy_mod.bcc_density_arrays(ann.values - u0, cfg)
                            if len(ann) else (np.empty(0), np.empty(0)))
        zeta_z0 = -(cfg.z0 - cfg.delta_c) / consts.d1
        coeff = energy_mod.BCC_PRINCIPAL_COEFF * cfg.kd * consts.d1 ** 2
        ring = EISENSTEIN

    lines = ["sheet,l1,l2,x,y,dist,exact_density,principal_density,ratio"]
    if len(ann):
        v = ann.values - u0
        dist = np.hypot(v.real, v.imag) * d
        pos = ann.values * d + cfg.delta_c
        for i in range(len(ann)):
            ratio = exact[i] / principal[i] if principal[i] else float("nan")
            lines.append(f"{ann.sheet},{ann.l1[i]},{ann.l2[i]},{_fmt(pos[i].real)},"
                         f"{_fmt(pos[i].imag)},{_fmt(dist[i])},{_fmt(exact[i])},"
                         f"{_fmt(principal[i])},{_fmt(ratio)}")
    _write(args.out, "\n".join(lines) + "\n")

    from .summation import compensated_sum
    exact_sum = compensated_sum(exact)
    principal_sum = compensated_sum(principal)
    zres = zeta_mod.zeta_annulus(ring, 2.0, zeta_z0, region.rho, region.N) \
        if len(ann) else None
    summary = {
        "schema": 1,
        "lattice": args.lattice,
        "exact": exact_sum,
        "principal": principal_sum,
        "ratio": exact_sum / principal_sum if principal_sum else None,
        "terms": len(ann),
        "zeta": zres.value if zres else 0.0,
        "principal_from_zeta": coeff * zres.value if zres else 0.0,
    }
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_region(args) -> int:
    """Annulus point set as CSV: sheet,l1,l2,x,y,dist."""
    cfg = _config(args)
    region = RegionSpec(args.rho, args.N, args.eps if args.eps is not None else 0.0)
    if args.lattice == "sc":
        ann = sc_annulus(cfg, region)
        d = cfg.a
        u0 = (cfg.z0 - cfg.delta_c) / d
    else:
        consts = bcc_constants(cfg)
        region = RegionSpec(args.rho, args.N, _default_eps(args, cfg))
        ann = bcc_core_and_annulus(cfg, region).annulus
        d = consts.d1
        u0 = (cfg.z0 - cfg.delta_c) / d
    lines = ["sheet,l1,l2,x,y,dist"]
    if len(ann):
        v = ann.values - u0
        dist = np.hypot(v.real, v.imag) * d
        pos = ann.values * d + cfg.delta_c
        for i in range(len(ann)):
            lines.append(f"{ann.sheet},{ann.l1[i]},{ann.l2[i]},{_fmt(pos[i].real)},"
                         f"{_fmt(pos[i].imag)},{_fmt(dist[i])}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_zeta(args) -> int:
    ring = _ring(args.lattice)
    d = _scale(args.lattice, args.a)
    threads = _threads(args)
    if args.mode == "grid":
        grid = zeta_mod.zeta_grid(ring, args.s, args.rho, args.N, threads=threads)
        lines = ["ix,iy,x,y,zeta"]
        for ix in range(grid.values.shape[0]):
            for iy in range(grid.values.shape[1]):
                lines.append(f"{ix},{iy},{_fmt(grid.xs[ix])},{_fmt(grid.ys[iy])},"
                             f"{_fmt(grid.values[ix, iy])}")
        _write(args.out, "\n".join(lines) + "\n")
        sys.stdout.write(json.dumps({"schema": 1, "min": grid.min, "max": grid.max},
                                    sort_keys=True) + "\n")
    elif args.mode == "scan":
        n_values = args.scan_N or [20, 30, 50, 75, 100, 150, 200, 300, 500]
        z0 = _parse_z0(args.z0, args.lattice, args.a) / d
        results = zeta_mod.zeta_scan(ring, args.s, -z0, args.rho, n_values, threads)
        lines = ["N,zeta"] + [f"{_fmt(N)},{_fmt(r.value)}" for N, r in zip(n_values, results)]
        _write(args.out, "\n".join(lines) + "\n")
    else:  # single
        z0 = _parse_z0(args.z0, args.lattice, args.a) / d
        res = zeta_mod.zeta_annulus(ring, args.s, -z0, args.rho, args.N)
        _write(args.out, json.dumps({"schema": 1, "value": res.value, "terms": res.terms,
                                     "s": args.s}, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_validate(args) -> int:
    report = validate_mod.run_all()
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _write(args.out, text)
    return EXIT_OK if report["ok"] else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dislokit",
                                     description="screw dislocation lattices, energies and zeta sums")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="export dislocated node positions")
    _add_common(p)
    p.add_argument("--windings", type=int, default=1)
    p.add_argument("--format", choices=("xyz", "csv"), default="xyz")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("energy", help="regional stress-energy table and summary")
    _add_common(p)
    p.add_argument("--format", choices=("csv",), default="csv")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("region", help="export an annulus point set as CSV")
    _add_common(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("zeta", help="truncated zeta scans and grids")
    _add_common(p)
    p.add_argument("--mode", choices=("scan", "grid", "single"), default="single")
    p.add_argument("--scan-N", type=float, nargs="*", default=None,
                   help="N values for --mode scan")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("validate", help="run identity and invariant suites")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RegionError, SingularPointError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
