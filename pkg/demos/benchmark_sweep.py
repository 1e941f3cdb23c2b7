"""Timing sweep over problem sizes at fixed sparsity/measurement ratios.

Generates and solves one instance per size and reports wall-clock time,
iteration count, and per-iteration cost. The factorization is O(d m^2)
once; each iteration costs two matrix-vector products, so per-iteration
time grows linearly in d at fixed m/d.

Run:  python3 demos/benchmark_sweep.py [--sizes 200,400,800,1600]
"""

import argparse
import time

from qcbp import GeneratorParams, SolverConfig, generate, solve

parser = argparse.ArgumentParser()
parser.add_argument("--sizes", default="200,400,800,1600")
args = parser.parse_args()
sizes = [int(s) for s in args.sizes.split(",")]

print(f"{'d':>7} {'m':>5} {'iters':>8} {'time_s':>8} {'us/iter':>8} "
      f"{'objective':>12} {'gap':>10}")
for d in sizes:
    params = GeneratorParams(d=d, p_s=0.4, p_m=0.05, eta=0.1, seed=3)
    inst = generate(params)
    t0 = time.perf_counter()
    report = solve(inst, SolverConfig(history_stride=1000))
    dt = time.perf_counter() - t0
    per_iter = report.iteration_time / report.iterations * 1e6
    print(f"{d:>7} {params.m:>5} {report.iterations:>8} {dt:>8.2f} "
          f"{per_iter:>8.1f} {report.final.objective:>12.4f} "
          f"{report.final.gap:>10.2e}")
