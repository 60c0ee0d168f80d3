"""Command-line interface: compute, survey, boundary, and surface commands.

Exit codes: 0 success; 2 argument/parse/validation failure; 3 hierarchy
violation detected during a survey (a solver bug signal, never a physics
outcome).  Progress and diagnostics go to stderr; stdout stays machine
readable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import StateValidationError, load_state_json
from .families import hierarchy_check
from .geometric import geometric_discord
from .normal_form import to_normal_form
from .sampling import parse_sampler
from .solver import SolverConfig, quantum_discord
from .survey import (
    HierarchyViolationError,
    extract_boundary,
    read_survey_csv,
    run_survey,
    surface_grid,
    write_boundary_csv,
    write_surface_csv,
    write_survey_csv,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_HIERARCHY = 3


def _solver_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--grid-theta", type=int, default=None,
                   help="coarse grid points in theta (default 24)")
    p.add_argument("--grid-phi", type=int, default=None,
                   help="coarse grid points in phi (default 48)")
    p.add_argument("--refine-tol", type=float, default=None,
                   help="refinement function tolerance (default 1e-10)")
    p.add_argument("--config", default=None,
                   help="JSON solver config file (same field names as flags)")
    p.add_argument("--side", choices=("A", "B"), default="B",
                   help="measured subsystem (default B)")
    return p


def _build_config(args) -> SolverConfig:
    if args.config:
        cfg = SolverConfig.from_file(args.config)
    else:
        cfg = SolverConfig()
    overrides = {}
    if args.grid_theta is not None:
        overrides["grid_theta"] = args.grid_theta
    if args.grid_phi is not None:
        overrides["grid_phi"] = args.grid_phi
    if args.refine_tol is not None:
        overrides["refine_tol"] = args.refine_tol
    if overrides:
        cfg = SolverConfig(
            grid_theta=overrides.get("grid_theta", cfg.grid_theta),
            grid_phi=overrides.get("grid_phi", cfg.grid_phi),
            refine_tol=overrides.get("refine_tol", cfg.refine_tol),
            max_refine_iters=cfg.max_refine_iters,
        )
    return cfg


def _default_workers() -> int:
    env = os.environ.get("QDISCORD_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdiscord",
        description="Quantum and geometric discord of two-qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    solver_parent = _solver_parent()

    p = sub.add_parser("compute", parents=[solver_parent],
                       help="full report for one state file")
    p.add_argument("state", help="JSON state file ({'matrix': 4x4x[re,im]})")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--plot", default=None, metavar="FILE",
                   help="also render the conditional-entropy surface to FILE")

    p = sub.add_parser("survey", parents=[solver_parent],
                       help="Monte Carlo survey of the (D, 2D_G) plane")
    p.add_argument("--n", type=int, required=True, help="number of states")
    p.add_argument("--sampler", default="ginibre4",
                   choices=("pure", "ginibre1", "ginibre2", "ginibre3", "ginibre4", "xstate"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default $QDISCORD_WORKERS or 1)")
    p.add_argument("--json", action="store_true",
                   help="print a JSON summary to stdout (requires --out)")
    p.add_argument("--plot", default=None, metavar="FILE",
                   help="also render the survey scatter to FILE")

    p = sub.add_parser("boundary", help="extract per-bin extremes from a survey CSV")
    p.add_argument("csv", help="survey CSV produced by the survey command")
    p.add_argument("--bin-width", type=float, default=0.01)
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.add_argument("--json", action="store_true",
                   help="print the curve as JSON to stdout (requires --out)")
    p.add_argument("--plot", default=None, metavar="FILE",
                   help="also render the boundary curves to FILE")

    p = sub.add_parser("surface", parents=[solver_parent],
                       help="dump the conditional-entropy surface of a state")
    p.add_argument("state", help="JSON state file")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.add_argument("--plot", default=None, metavar="FILE",
                   help="also render the surface heat map to FILE")
    return parser


def _cmd_compute(args) -> int:
    cfg = _build_config(args)
    rho = load_state_json(args.state)
    result = quantum_discord(rho, cfg, side=args.side)
    geo = geometric_discord(rho, side=args.side)
    _, margin = hierarchy_check(result.discord, geo.dg_normalized)

    if args.plot:
        from .plotting import render_surface

        nf, _ = to_normal_form(rho)
        thetas, phis, values = surface_grid(nf)
        render_surface(thetas, phis, values, args.plot)

    if args.json:
        doc = {
            "discord": result.discord,
            "classical_correlations": result.classical_correlations,
            "mutual_information": result.mutual_information,
            "min_conditional_entropy": result.min_conditional_entropy,
            "dg": geo.dg,
            "dg_normalized": geo.dg_normalized,
            "theta_min": result.minimizer.theta,
            "phi_min": result.minimizer.phi,
            "hierarchy_margin": margin,
            "side": args.side,
            "stationary_points": [
                {
                    "theta": sp.angles.theta,
                    "phi": sp.angles.phi,
                    "value": sp.value,
                    "signature": sp.hessian_signature.value,
                    "residuals": list(sp.residuals) if sp.residuals else None,
                }
                for sp in result.stationary_points
            ],
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK

    print(f"measured side            : {args.side}")
    print(f"quantum discord          : {result.discord:.9f}")
    print(f"classical correlations   : {result.classical_correlations:.9f}")
    print(f"mutual information       : {result.mutual_information:.9f}")
    print(f"min conditional entropy  : {result.min_conditional_entropy:.9f}")
    print(f"geometric discord        : {geo.dg:.9f}")
    print(f"normalized 2*D_G         : {geo.dg_normalized:.9f}")
    print(f"minimizer (theta, phi)   : ({result.minimizer.theta:.9f}, {result.minimizer.phi:.9f})")
    print(f"hierarchy margin         : {margin:.3e}")
    print("stationary points (theta, phi, value, signature, residuals):")
    for sp in result.stationary_points:
        res = (
            f"({sp.residuals[0]:+.2e}, {sp.residuals[1]:+.2e})"
            if sp.residuals
            else "singular"
        )
        print(
            f"  {sp.angles.theta:11.8f} {sp.angles.phi:11.8f} "
            f"{sp.value:.9f}  {sp.hessian_signature.value:10s} {res}"
        )
    return EXIT_OK


def _cmd_survey(args) -> int:
    cfg = _build_config(args)
    if args.n < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.json and not args.out:
        print("error: --json requires --out (stdout carries the CSV otherwise)",
              file=sys.stderr)
        return EXIT_USAGE
    spec = parse_sampler(args.sampler, args.seed)
    workers = args.workers if args.workers is not None else _default_workers()

    def progress(done):
        print(f"surveyed {done}/{args.n} states", file=sys.stderr, flush=True)

    records = run_survey(spec, args.n, cfg, side=args.side,
                         workers=workers, progress=progress)
    if args.out:
        write_survey_csv(records, args.out)
    else:
        write_survey_csv(records, sys.stdout)
    if args.plot:
        from .plotting import render_survey

        render_survey(records, args.plot)
    if args.json:
        discords = [r.discord for r in records]
        dgs = [r.dg_normalized for r in records]
        print(json.dumps({
            "n": len(records),
            "sampler": args.sampler,
            "seed": args.seed,
            "side": args.side,
            "out": args.out,
            "discord_max": max(discords),
            "dg_normalized_max": max(dgs),
            "min_hierarchy_margin": min(r.hierarchy_margin for r in records),
        }, indent=2))
    return EXIT_OK


def _cmd_boundary(args) -> int:
    records = read_survey_csv(args.csv)
    curve = extract_boundary(records, args.bin_width)
    if args.json and not args.out:
        print("error: --json requires --out (stdout carries the CSV otherwise)",
              file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        write_boundary_csv(curve, args.out)
    else:
        write_boundary_csv(curve, sys.stdout)
    if args.plot:
        from .plotting import render_boundary

        render_boundary(curve, args.plot)
    if args.json:
        print(json.dumps({
            "bin_width": curve.bin_width,
            "bins": [
                {
                    "center": b.center,
                    "min_dg": b.min_dg,
                    "max_dg": b.max_dg,
                    "state_id_min": b.id_min,
                    "state_id_max": b.id_max,
                }
                for b in curve.bins
            ],
        }, indent=2))
    return EXIT_OK


def _cmd_surface(args) -> int:
    cfg = _build_config(args)
    rho = load_state_json(args.state)
    if args.side == "A":
        from .solver import SWAP

        rho = SWAP @ rho @ SWAP
    nf, _ = to_normal_form(rho)
    n_theta = args.grid_theta if args.grid_theta is not None else 90
    n_phi = args.grid_phi if args.grid_phi is not None else 180
    del cfg  # solver settings do not affect a raw surface dump
    thetas, phis, values = surface_grid(nf, n_theta, n_phi)
    if args.out:
        write_surface_csv(thetas, phis, values, args.out)
    else:
        write_surface_csv(thetas, phis, values, sys.stdout)
    if args.plot:
        from .plotting import render_surface

        render_surface(thetas, phis, values, args.plot)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "survey":
            return _cmd_survey(args)
        if args.command == "boundary":
            return _cmd_boundary(args)
        if args.command == "surface":
            return _cmd_surface(args)
        raise AssertionError(f"unhandled command {args.command!r}")
    except HierarchyViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HIERARCHY
    except (StateValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
