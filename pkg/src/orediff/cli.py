"""Command-line benchmark harness.

Verbs:
  run     stream one scenario or generated signal, write trace/report/plot
  sweep   randomized bound-verification runs, write sweep.csv
  bounds  print the error bound and convergence time for given parameters

Exit codes: 0 all applicable bounds satisfied, 1 a bound check failed,
2 configuration error. The output directory defaults to $OREDIFF_OUT, then
the current directory.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from .analysis import BoundInputs, convergence_time, worst_case_bound
from .benchmarks import (ScenarioConfig, default_window_limit, execute, sweep,
                         write_outputs, write_sweep_csv)
from .core import CoreParams
from .rate_filter import FilterParams
from .signals import NOISE_FAMILIES, NoiseSpec, SignalSpec

_NOISE_SEED_OFFSET = 1000003


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--L", type=float, default=1.0, help="curvature bound L (1/s^2)")
    p.add_argument("--Nbar", type=float, default=0.08,
                   help="noise capacity the window is sized for")
    p.add_argument("--N", type=float, default=None,
                   help="actual noise amplitude (default: Nbar)")
    p.add_argument("--delta", type=float, default=0.01, help="sampling period (s)")
    p.add_argument("--gamma", type=float, default=1.96,
                   help="output rate bound (must exceed L)")
    p.add_argument("--k0", type=int, default=0, help="filter start index")
    p.add_argument("--kbar", type=int, default=None,
                   help="window limit in samples (default: sized from Nbar)")
    p.add_argument("--horizon", type=float, default=20.0, help="run length (s)")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--out", type=str, default=None,
                   help="output directory (default: $OREDIFF_OUT, then .)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orediff",
        description="Streaming differentiation benchmarks with worst-case "
                    "error certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one benchmark signal")
    which = p_run.add_mutually_exclusive_group(required=True)
    which.add_argument("--scenario", type=int, choices=(1, 2),
                       help="built-in benchmark scenario")
    which.add_argument("--signal", type=str, choices=("random", "polynomial"),
                       help="generated signal family")
    p_run.add_argument("--noise", type=str, choices=NOISE_FAMILIES, default="uniform",
                       help="noise family for generated signals and scenario 1")
    p_run.add_argument("--R0", type=float, default=1.0, help="bound on |f(0)|")
    p_run.add_argument("--R1", type=float, default=1.0, help="bound on |f'(0)|")
    p_run.add_argument("--digits", type=int, default=10,
                       help="significant digits in CSV output")
    _add_common(p_run)

    p_sweep = sub.add_parser("sweep", help="randomized bound-verification runs")
    p_sweep.add_argument("--count", type=int, default=200, help="number of runs")
    _add_common(p_sweep)

    p_bounds = sub.add_parser("bounds", help="print bound and convergence time")
    p_bounds.add_argument("--R1", type=float, default=1.0, help="bound on |f'(0)|")
    _add_common(p_bounds)
    return parser


def _outdir(args: argparse.Namespace) -> Path:
    out = args.out or os.environ.get("OREDIFF_OUT") or "."
    return Path(out)


def _resolve(args: argparse.Namespace) -> tuple[float, int]:
    """Effective noise amplitude and window limit from the parsed flags."""
    N = args.Nbar if args.N is None else args.N
    kbar = args.kbar if args.kbar is not None else default_window_limit(
        args.L, args.delta, args.Nbar)
    return N, kbar


def _cmd_bounds(args: argparse.Namespace) -> int:
    N, kbar = _resolve(args)
    inputs = BoundInputs(args.L, N, args.delta, args.gamma, args.k0, args.R1)
    nbar = CoreParams(args.L, args.delta, kbar).nbar
    print(f"convergence_time = {convergence_time(inputs):.4f} s")
    print(f"worst_case_bound = {worst_case_bound(args.L, N, args.delta):.6g}")
    print(f"increment_bound = {args.gamma * args.delta:.6g} per step")
    print(f"kbar = {kbar}")
    print(f"nbar = {nbar:.6g}")
    print(f"applicable = {'yes' if N <= nbar * (1 + 1e-12) else 'no (N exceeds nbar)'}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    N, kbar = _resolve(args)
    if args.scenario == 1:
        sig_spec = SignalSpec("scenario1", L=args.L, R0=0.0, R1=1.0, seed=args.seed)
        noise_spec = NoiseSpec(args.noise, N=N, seed=args.seed)
    elif args.scenario == 2:
        sig_spec = SignalSpec("scenario2", L=args.L, R0=0.5, R1=0.5, seed=args.seed)
        noise_spec = NoiseSpec("modulated", N=N, seed=args.seed)
    else:
        family = "piecewise_quadratic" if args.signal == "random" else "polynomial"
        sig_spec = SignalSpec(family, L=args.L, R0=args.R0, R1=args.R1, seed=args.seed)
        noise_spec = NoiseSpec(args.noise, N=N, seed=args.seed + _NOISE_SEED_OFFSET)
    config = ScenarioConfig(
        signal=sig_spec, noise=noise_spec,
        core=CoreParams(args.L, args.delta, kbar),
        filt=FilterParams(args.gamma, args.delta, args.k0),
        horizon=args.horizon)
    result = execute(config)
    paths = write_outputs(result, _outdir(args), args.digits)
    for report in result.reports:
        print(report.summary())
    print(f"wrote {paths['trace']} and {len(result.reports)} report files")
    failed = [r for r in result.reports if r.satisfied is False]
    return 1 if failed else 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    N_override = args.N  # None means: draw per-run levels up to 0.9*Nbar
    entries = sweep(args.count, args.seed, L=args.L, Nbar=args.Nbar,
                    delta=args.delta, gamma=args.gamma, N_override=N_override)
    outdir = _outdir(args)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "sweep.csv"
    write_sweep_csv(entries, path)
    n_ok = sum(1 for e in entries if e.report.satisfied is True)
    n_na = sum(1 for e in entries if e.report.satisfied is None)
    failed = [e for e in entries if e.report.satisfied is False]
    print(f"sweep: {len(entries)} runs, {n_ok} satisfied, {n_na} not-applicable, "
          f"{len(failed)} violations -> {path}")
    if failed:
        print(f"first failing seed: {failed[0].seed} "
              f"(family={failed[0].family}, N={failed[0].N:.6g})")
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_sweep(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
