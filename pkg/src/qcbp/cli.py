"""Command-line front end: generate instances, solve them, and run
benchmark sweeps.

Exit codes are a stable contract: 0 converged / success, 2 usage or I/O
error, 3 not converged within the iteration cap, 4 diverged.
"""

from __future__ import annotations

import argparse
import csv
import math
import statistics
import sys
import time
from pathlib import Path

from . import io as qio
from .instance import GeneratorParams, generate
from .solver import SolveStatus, SolverConfig, solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3
EXIT_DIVERGED = 4

_STATUS_EXIT = {
    SolveStatus.CONVERGED: EXIT_OK,
    SolveStatus.MAX_ITER_REACHED: EXIT_NOT_CONVERGED,
    SolveStatus.DIVERGED: EXIT_DIVERGED,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcbp",
        description="ADMM solver for quadratically constrained basis pursuit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic instance to disk")
    gen.add_argument("--d", type=int, required=True, help="ambient dimension")
    gen.add_argument("--ps", type=float, required=True, help="sparsity fraction")
    gen.add_argument("--pm", type=float, required=True, help="measurement fraction")
    gen.add_argument("--eta", type=float, required=True, help="noise level")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", type=Path, required=True, help="output directory")
    gen.add_argument(
        "--slack", action="store_true",
        help="scale noise to 0.99*eta so the planted point is strictly feasible",
    )

    slv = sub.add_parser("solve", help="solve an instance from a manifest")
    slv.add_argument("--problem", type=Path, required=True, help="manifest path")
    slv.add_argument(
        "--rho", type=float, default=None,
        help="penalty parameter; default scales with the data norm",
    )
    slv.add_argument("--max-iter", type=int, default=100_000)
    slv.add_argument("--eps-p", type=float, default=1e-4)
    slv.add_argument("--eps-d", type=float, default=1e-4)
    slv.add_argument("--eps-gap", type=float, default=1e-3)
    slv.add_argument("--history", type=Path, default=None, help="write history CSV here")
    slv.add_argument("--adaptive-rho", action="store_true")

    bench = sub.add_parser("bench", help="generate-and-solve timing sweep")
    bench.add_argument(
        "--sizes", type=str, required=True,
        help="comma-separated list of dimensions d",
    )
    bench.add_argument("--ps", type=float, default=0.4)
    bench.add_argument("--pm", type=float, default=0.05)
    bench.add_argument("--eta", type=float, default=0.1)
    bench.add_argument("--repeats", type=int, default=1)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", type=Path, default=None, help="also write CSV here")
    return parser


def cmd_generate(args) -> int:
    try:
        params = GeneratorParams(
            d=args.d, p_s=args.ps, p_m=args.pm, eta=args.eta,
            seed=args.seed, interior_slack=args.slack,
        )
        inst = generate(params)
        manifest = qio.write_instance(inst, args.out, generator=params)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"manifest: {manifest.manifest_path}")
    print(f"d={params.d} m={params.m} k={params.k} eta={params.eta}")
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        inst = qio.read_instance(args.problem)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = SolverConfig(
        rho=args.rho,
        max_iter=args.max_iter,
        eps_p=args.eps_p,
        eps_d=args.eps_d,
        eps_gap=args.eps_gap,
        adaptive_rho=args.adaptive_rho,
    )
    report = solve(inst, config)
    if args.history is not None:
        qio.write_history(report, args.history)
    print(f"status: {report.status.value}")
    print(f"iterations: {report.iterations}")
    print(f"objective: {report.final.objective:.12g}")
    print(f"r_p: {report.final.r_p:.6g}")
    print(f"r_d: {report.final.r_d:.6g}")
    print(f"gap: {report.final.gap:.6g}")
    print(f"factorization_time_sec: {report.factorization_time:.6g}")
    print(f"total_time_sec: {report.factorization_time + report.iteration_time:.6g}")
    return _STATUS_EXIT[report.status]


def cmd_bench(args) -> int:
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
        if not sizes or args.repeats < 1:
            raise ValueError("need at least one size and one repeat")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    rows = []
    failed_size = None
    for d in sizes:
        params = GeneratorParams(
            d=d, p_s=args.ps, p_m=args.pm, eta=args.eta, seed=args.seed
        )
        inst = generate(params)
        times = []
        report = None
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            report = solve(inst, SolverConfig())
            times.append(time.perf_counter() - t0)
        rows.append(
            {
                "d": d,
                "m": params.m,
                "iterations": report.iterations,
                "time_sec": f"{statistics.median(times):.6g}",
                "status": report.status.value,
                "objective": f"{report.final.objective:.12g}",
                "gap": "inf" if math.isinf(report.final.gap) else f"{report.final.gap:.6g}",
            }
        )
        if report.status is not SolveStatus.CONVERGED and failed_size is None:
            failed_size = d

    fieldnames = ["d", "m", "iterations", "time_sec", "status", "objective", "gap"]
    writer = csv.DictWriter(sys.stdout, fieldnames=fieldnames)
    writer.writeheader()
    writer.writerows(rows)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fw = csv.DictWriter(fh, fieldnames=fieldnames)
            fw.writeheader()
            fw.writerows(rows)
    if failed_size is not None:
        print(f"error: size d={failed_size} did not converge", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate":
        return cmd_generate(args)
    if args.command == "solve":
        return cmd_solve(args)
    return cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
