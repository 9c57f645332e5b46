"""Command-line interface: figure data as CSV plus the depth certifier.

Every CSV gets a sidecar manifest (key=value lines) with the exact
parameters, solver seed and tool version; re-running with the same manifest
parameters reproduces the CSV byte for byte.

Exit codes: 0 success, 2 argument error, 3 convergence error, 4 capacity
error, 5 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .basis import spin_flip_permutation, translation_permutation
from .bethe import e_n, e_n_minus_2, solve_ground
from .closedform import mg_e_n, mg_e_n_minus_2, xxz4_thermal
from .correlator import alternating, pure_correlator
from .eigensolver import (START_SEED, ground_multiplet, ground_state,
                          symmetric_combination)
from .errors import (ArgumentError, CapacityError, ConvergenceError,
                     GridBoundaryError)
from .hamiltonian import ChainSpec, Ising, MajumdarGhosh, Xxz, build
from .hierarchy import certify
from .scaling import critical_point_fit, worker_count


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_csv(header: list[str], rows: list[list[float]], destination: str):
    """Write comma-separated data with 17-significant-digit floats."""
    lines = [",".join(header)]
    lines += [",".join(_fmt(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if destination == "-":
        sys.stdout.write(text)
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)


def write_manifest(destination: str, subcommand: str, params: dict, wall_time: float):
    if destination == "-":
        return
    lines = [f"tool=spincorr", f"version={__version__}", f"subcommand={subcommand}"]
    lines += [f"{k}={v}" for k, v in sorted(params.items())]
    lines += [f"solver_seed={START_SEED}", f"workers={worker_count()}",
              f"wall_time_s={wall_time:.3f}"]
    with open(destination + ".manifest", "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ArgumentError(f"cannot parse float list {text!r}") from exc


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ArgumentError(f"cannot parse integer list {text!r}") from exc


def _parse_range(text: str) -> np.ndarray:
    """min:max:steps -> linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ArgumentError(f"range must be min:max:steps, got {text!r}")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1 or hi < lo:
        raise ArgumentError(f"bad range {text!r}")
    return np.linspace(lo, hi, steps)


def _resolved_ground(spec: ChainSpec, sector: int | None, permutation):
    """Ground state with any exact degeneracy resolved by symmetry projection."""
    op = build(spec, sector)
    gs = ground_state(op)
    if gs.degenerate:
        gs = symmetric_combination(ground_multiplet(op), permutation)
    return gs


def cmd_ising(args) -> int:
    orders = _parse_ints(args.orders)
    if any(m < 1 or m > args.n for m in orders):
        raise ArgumentError(f"orders must lie in [1, {args.n}]")
    grid = np.linspace(args.g_min, args.g_max, args.steps)
    flip = spin_flip_permutation(args.n)
    rows = []
    for g in grid:
        gs = _resolved_ground(ChainSpec(Ising(float(g), args.k), args.n), None, flip)
        rows.append([g] + [pure_correlator(gs, alternating(m)).e_value for m in orders])
    emit_csv(["g"] + [f"E{m}" for m in orders], rows, args.output)
    return 0


def cmd_xxz(args) -> int:
    grid = np.linspace(args.delta_min, args.delta_max, args.steps)
    n = args.n
    rows = []
    for d in grid:
        if args.method == "ed":
            gs = ground_state(build(ChainSpec(Xxz(float(d)), n), sector=n // 2))
            en = pure_correlator(gs, alternating(n)).e_value
            enm2 = pure_correlator(gs, alternating(n - 2)).e_value
        else:
            st = solve_ground(n, float(d))
            en, enm2 = e_n(st), e_n_minus_2(st)
        rows.append([d, en, enm2])
    emit_csv(["delta", f"E{n}", f"E{n - 2}"], rows, args.output)
    return 0


def cmd_thermal4(args) -> int:
    betas = _parse_floats(args.beta_list)
    grid = _parse_range(args.delta_range)
    rows = [[d] + [xxz4_thermal(float(d), b) for b in betas] for d in grid]
    emit_csv(["delta"] + [f"E4[beta={_fmt(b)}]" for b in betas], rows, args.output)
    return 0


def cmd_mg(args) -> int:
    n = args.n
    spec = ChainSpec(MajumdarGhosh(), n)
    op = build(spec, sector=n // 2)
    gs = symmetric_combination(ground_multiplet(op),
                               translation_permutation(n, op.sector))
    print(f"Majumdar-Ghosh ring, N={n} (ground energy {gs.energy:.12g})")
    print(f"{'quantity':<10} {'closed form':<24} {'exact diag':<24} {'abs diff':<10}")
    for label, closed, m in ((f"E_{n}", mg_e_n(n), n),
                             (f"E_{n - 2}", mg_e_n_minus_2(n), n - 2)):
        ed = pure_correlator(gs, alternating(m)).e_value
        print(f"{label:<10} {_fmt(closed):<24} {_fmt(ed):<24} {abs(closed - ed):.3e}")
    return 0


def cmd_certify(args) -> int:
    cert = certify(args.value, args.n)
    print(f"E = {_fmt(args.value)} on {args.n} sites")
    if cert.unexplainable:
        print("value exceeds the universal bound 1/4: "
              "no quantum state produces it")
        return 0
    print(f"entanglement depth: {cert.ent_depth}   "
          f"non-locality depth: {cert.nl_depth}")
    print(f"{'k':>3} {'entanglement <=':>22} {'non-locality <=':>22}")
    for (k, eb), (_, nb) in zip(cert.ent_ladder, cert.nl_ladder):
        mark_e = " <-" if k == cert.ent_depth else ""
        mark_n = " <-" if k == cert.nl_depth else ""
        print(f"{k:>3} {_fmt(eb):>22}{mark_e:<3} {_fmt(nb):>19}{mark_n}")
    if cert.ent_fine:
        print("distinct partition bounds (entanglement):")
        for value, shape in cert.ent_fine:
            print(f"    {_fmt(value):<24} {shape}")
    return 0


def cmd_scaling(args) -> int:
    sizes = _parse_ints(args.sizes)
    fit = critical_point_fit(args.k, sizes, progressive=not args.full_grid)
    rows = [[float(n), g] for n, g in zip(fit.sizes, fit.peak_positions)]
    emit_csv(["n", "g_star"], rows, args.output)
    print(f"g_c estimate: {_fmt(fit.intercept)} +- {_fmt(fit.confidence)} "
          f"(0.9 confidence, stderr {_fmt(fit.stderr)})")
    print(f"slope (1/N coefficient): {_fmt(fit.slope)}")
    print(f"expected 1 - 2K = {_fmt(1 - 2 * args.k)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spincorr",
        description="Formation-probability correlators, depth certification "
                    "and closed-form validation for short spin-1/2 chains.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ising", help="ground-state E_m(g) sweep of the Ising chain")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--g-min", type=float, default=1e-3)
    p.add_argument("--g-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--k", type=float, default=0.0,
                   help="next-to-nearest neighbour coupling")
    p.add_argument("--orders", default="2,3,4,5,6", help="comma list of orders m")
    p.add_argument("--output", "-o", default="ising.csv", help="'-' for stdout")
    p.set_defaults(func=cmd_ising)

    p = sub.add_parser("xxz", help="E_N and E_{N-2} of the XXZ ring over delta")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--delta-min", type=float, default=-0.9)
    p.add_argument("--delta-max", type=float, default=0.9)
    p.add_argument("--steps", type=int, default=37)
    p.add_argument("--method", choices=("ed", "bethe"), default="ed")
    p.add_argument("--output", "-o", default="xxz.csv")
    p.set_defaults(func=cmd_xxz)

    p = sub.add_parser("thermal4", help="thermal E_4 of the 4-site XXZ ring")
    p.add_argument("--beta-list", default="1,2,5,10")
    p.add_argument("--delta-range", default="-1:5:61", help="min:max:steps")
    p.add_argument("--output", "-o", default="thermal4.csv")
    p.set_defaults(func=cmd_thermal4)

    p = sub.add_parser("mg", help="Majumdar-Ghosh closed form vs exact diagonalization")
    p.add_argument("--n", type=int, default=8)
    p.set_defaults(func=cmd_mg)

    p = sub.add_parser("certify", help="depth certificate for a measured E value")
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scaling", help="finite-size scaling of the E_{N/2} peak")
    p.add_argument("--k", type=float, default=0.0)
    p.add_argument("--sizes", default="8,12,16,20")
    p.add_argument("--full-grid", action="store_true",
                   help="scan the full default grid at every size")
    p.add_argument("--output", "-o", default="scaling.csv")
    p.set_defaults(func=cmd_scaling)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "subcommand") and v is not None}
    start = time.time()
    try:
        code = args.func(args)
    except ArgumentError as exc:
        print(f"argument error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, GridBoundaryError) as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 5
    if code == 0 and getattr(args, "output", None):
        try:
            write_manifest(args.output, args.subcommand, params, time.time() - start)
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return 5
    return code


if __name__ == "__main__":
    sys.exit(main())
