#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the two hot loops (CG halting runs and the Laguerre wavefunction
recurrence) on representative workloads and prints a comparison table.

    python3 benchmarks/bench_backends.py [--samples 200] [--n-dim 100]
"""

import argparse
import math
import time

import numpy as np

from critlue import _kernels_py
from critlue import ensembles as en

try:
    from critlue import _kernels
except ImportError:
    _kernels = None


def time_cg(kernels, spec, samples, eps=1e-14):
    xs = [np.asfortranarray(en.sample_matrix(spec, k)) for k in range(samples)]
    bs = [en.sample_rhs(spec, k).astype(complex) for k in range(samples)]
    t0 = time.perf_counter()
    total_iters = 0
    for X, b in zip(xs, bs):
        T, _, _, _ = kernels.cg_halt(X, b, eps, 10 * spec.N)
        total_iters += T
    return time.perf_counter() - t0, total_iters


def time_laguerre(kernels, n_deg, alpha, n_points, repeats):
    lam = np.linspace(0.05, 4.0 * n_deg, n_points)
    lg = math.lgamma(alpha + 1.0)
    t0 = time.perf_counter()
    for _ in range(repeats):
        kernels.laguerre_pair(alpha, n_deg, lam, lg)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--n-dim", type=int, default=100)
    args = ap.parse_args()

    spec = en.EnsembleSpec(N=args.n_dim, scaling_rule="critical", c=1.0, seed=0)
    rows = []

    with en.single_threaded_blas():
        t_py, iters = time_cg(_kernels_py, spec, args.samples)
        rows.append(("cg_halt (python)", t_py, f"{iters} total iterations"))
        if _kernels is not None:
            t_cy, _ = time_cg(_kernels, spec, args.samples)
            rows.append(("cg_halt (cython)", t_cy, f"speedup {t_py / t_cy:.2f}x"))

        t_py = time_laguerre(_kernels_py, 1600, 80.0, 400, 20)
        rows.append(("laguerre_pair (python)", t_py, "N=1600, 400 pts, 20 reps"))
        if _kernels is not None:
            t_cy = time_laguerre(_kernels, 1600, 80.0, 400, 20)
            rows.append(("laguerre_pair (cython)", t_cy, f"speedup {t_py / t_cy:.2f}x"))

    print(f"{'kernel':26s} {'seconds':>10s}   notes")
    for name, secs, note in rows:
        print(f"{name:26s} {secs:10.3f}   {note}")
    if _kernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
