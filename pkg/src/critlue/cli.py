"""Command-line front end for the experiments and verifications.

Every run writes its outputs plus a JSON manifest (full configuration and
artifact version) so results can be reproduced exactly; identical
configurations produce byte-identical files.  Exit codes: 0 success,
2 validation error, 3 numerical non-convergence.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

import critlue
from critlue import cg as cgmod
from critlue import ensembles as en
from critlue import fredholm as fr
from critlue import kernel as kn
from critlue import rh_matrix as rm
from critlue.rh_scalar import ScalingParams

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _threads_default():
    return int(os.environ.get("CRITLUE_THREADS", "1"))


def _parse_grid(text):
    try:
        x0, x1, step = (float(p) for p in text.split(":"))
    except ValueError as exc:
        raise ValueError(f"grid must be x0:x1:step, got {text!r}") from exc
    if step <= 0 or x1 < x0:
        raise ValueError("grid requires x1 >= x0 and step > 0")
    n = int(math.floor((x1 - x0) / step + 1e-9)) + 1
    return [x0 + k * step for k in range(n)]


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(v) for v in row) + "\n")


def _fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def _write_manifest(out_path, args, argv):
    manifest = {
        "artifact": "critlue",
        "version": critlue.__version__,
        "subcommand": args.command,
        "argv": list(argv),
        "config": {k: v for k, v in vars(args).items() if k != "func"},
    }
    path = out_path + ".manifest.json"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def _ensemble_spec(args):
    dist = {"lue": "complex-gaussian", "pbe": "bernoulli-pm1"}[args.ensemble]
    return en.EnsembleSpec(N=args.n_dim, n=args.n_cols or 0,
                           matrix_dist=dist, scaling_rule=args.scaling,
                           c=args.c, seed=args.seed)


def _cmd_spectrum(args, argv):
    spec = _ensemble_spec(args)
    out = en.batch_spectral(spec, args.samples, threads=args.threads)
    rows = [(s.sample_index, s.lambda_min, s.lambda_max, s.kappa) for s in out]
    _write_csv(args.out, ["sample_index", "lambda_min", "lambda_max", "kappa"], rows)
    _write_manifest(args.out, args, argv)
    print(f"wrote {len(rows)} spectra to {args.out}")
    return EXIT_OK


def _cmd_cg_halting(args, argv):
    spec = _ensemble_spec(args)
    recs = cgmod.halting_experiment(spec, args.samples, eps=args.eps,
                                    threads=args.threads)
    rows = [(r.sample_index, r.T, r.kappa, r.kaniel_ok) for r in recs]
    _write_csv(args.out, ["sample_index", "T", "kappa", "kaniel_ok"], rows)
    ts = [r.T for r in recs]
    summary, _ = cgmod.fluctuations(ts)
    lo, hi = min(ts), max(ts)
    hist = [[t, ts.count(t)] for t in range(lo, hi + 1) if ts.count(t)]
    report = {
        "mean": summary.mean, "variance": summary.variance,
        "skewness": summary.skewness, "kurtosis": summary.kurtosis,
        "sample_count": summary.sample_count,
        "cap_hits": sum(r.cap_hit for r in recs),
        "kaniel_ok_count": sum(r.kaniel_ok for r in recs),
        "monotone_violations": sum(not cgmod.residuals_monotone(r) for r in recs),
        "histogram": hist,
    }
    with open(args.out + ".moments.json", "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    _write_manifest(args.out, args, argv)
    print(f"mean T = {summary.mean:.4f}, kurtosis = {summary.kurtosis:.4f} "
          f"({args.samples} samples) -> {args.out}")
    return EXIT_OK


def _cmd_tw2(args, argv):
    grid = [args.s_min + k * args.step
            for k in range(int(math.floor((args.s_max - args.s_min) / args.step + 1e-9)) + 1)]
    rows = []
    for s in grid:
        res = fr.fredholm_det(matrix_builder=fr._airy_matrix,
                              interval=(s, s + fr.AIRY_TAIL_LENGTH),
                              nodes=args.nodes, tol=1e-8)
        rows.append((s, min(max(res.value, 0.0), 1.0), res.convergence_estimate))
    _write_csv(args.out, ["t", "cdf", "convergence_estimate"], rows)
    _write_manifest(args.out, args, argv)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _cmd_gap(args, argv):
    params = ScalingParams.critical(args.n_dim, args.c)
    rows = []
    for t in _parse_grid(args.grid):
        if args.which == "min":
            a, b = 0.0, t
        else:
            a, b = t, fr._right_truncation(params, t)
        if b <= a:
            rows.append((t, 1.0, 0.0))
            continue
        res = fr.fredholm_det(matrix_builder=fr._finite_n_builder(params),
                              interval=(a, b), nodes=args.nodes, tol=1e-8)
        rows.append((t, res.value, res.convergence_estimate))
    _write_csv(args.out, ["t", "cdf", "convergence_estimate"], rows)
    _write_manifest(args.out, args, argv)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _cmd_kernel_limit(args, argv):
    params = ScalingParams.critical(args.n_dim, args.c)
    us = _parse_grid(args.grid)
    grid = kn.build_kernel_grid(args.edge, us, us, params)
    rows = [(x, y, v, lim, abs(v - lim))
            for (x, y), v, lim in zip(grid.points, grid.values, grid.limit_values)]
    _write_csv(args.out, ["x", "y", "value", "limit", "abs_err"], rows)
    _write_manifest(args.out, args, argv)
    err = float(np.max(np.abs(grid.values - grid.limit_values)))
    print(f"sup|K - limit| = {err:.6f} over {len(rows)} points -> {args.out}")
    return EXIT_OK


_RHP_CHECKS = ("n", "sinf", "ainf", "pai", "pbes", "sleft")


def _cmd_rhp_verify(args, argv):
    params = ScalingParams.critical(args.n_dim, args.c)
    checks = _RHP_CHECKS if args.check == "all" else (args.check,)
    rows = []
    worst = 0.0
    for name in checks:
        if name == "n":
            res = rm.verify_script_n()
        elif name == "sinf":
            res = rm.verify_s_infinity(params)
        elif name == "ainf":
            res = rm.verify_a_infinity(args.c, delta=args.delta)
        elif name == "pai":
            res = rm.verify_p_airy()
        elif name == "pbes":
            res = rm.verify_p_bessel(min(params.alpha, 5.0))
        elif name == "sleft":
            res = rm.verify_s_local_left(params, delta=args.delta)
        else:
            raise ValueError(f"unknown check {name!r}")
        for r in res:
            rows.append((name, r.location.real, r.location.imag,
                         r.contour_tag.value, r.residual))
        m = max(r.residual for r in res)
        worst = max(worst, m)
        print(f"{name:5s} max residual {m:.3e} over {len(res)} points")
    if args.out:
        _write_csv(args.out, ["check", "loc_re", "loc_im", "contour", "residual"], rows)
        _write_manifest(args.out, args, argv)
    print(f"overall max residual {worst:.3e}")
    return EXIT_OK


def _cmd_asymp_compare(args, argv):
    rows = []
    n_val = args.n_dim
    for _ in range(args.doublings + 1):
        params = ScalingParams.critical(n_val, args.c)
        y11 = rm.y_plus_asymptotic(args.x, "d", params)[0, 0]
        la, sg = kn.monic_rescaled_laguerre(params.N, args.x, params)
        ratio = complex(y11) / (sg * math.exp(la))
        rows.append((n_val, args.x, ratio.real, abs(ratio - 1.0)))
        n_val *= 2
    _write_csv(args.out, ["N", "x", "ratio", "rel_err"], rows)
    _write_manifest(args.out, args, argv)
    for n_v, x, ratio, err in rows:
        print(f"N = {n_v:4d}: Y11/pi_N = {ratio:.8f} (|err| = {err:.3e})")
    return EXIT_OK


def _cmd_rerun(args, argv):
    with open(args.manifest, encoding="utf-8") as f:
        manifest = json.load(f)
    stored = manifest["argv"]
    print(f"re-running: critlue {' '.join(stored)}")
    return main(stored)


def _add_ensemble_flags(p):
    p.add_argument("--ensemble", choices=("lue", "pbe"), default="lue")
    p.add_argument("--n-dim", type=int, required=True)
    p.add_argument("--scaling", choices=("square", "double", "critical", "custom"),
                   default="critical")
    p.add_argument("--n-cols", type=int, default=None,
                   help="number of columns for --scaling custom")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=_threads_default())


def build_parser():
    ap = argparse.ArgumentParser(prog="critlue",
                                 description=sys.modules[__name__].__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="sample ensemble spectra")
    _add_ensemble_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("cg-halting", help="CG halting-time experiment")
    _add_ensemble_flags(p)
    p.add_argument("--eps", type=float, default=cgmod.DEFAULT_EPS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_cg_halting)

    p = sub.add_parser("tw2", help="Tracy-Widom beta=2 distribution table")
    p.add_argument("--s-min", type=float, default=-6.0)
    p.add_argument("--s-max", type=float, default=3.0)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--nodes", type=int, default=60)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_tw2)

    p = sub.add_parser("gap", help="finite-N gap probabilities")
    p.add_argument("--which", choices=("min", "max"), default="max")
    p.add_argument("--grid", required=True, help="t grid as x0:x1:step")
    p.add_argument("--n-dim", type=int, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--nodes", type=int, default=60)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gap)

    p = sub.add_parser("kernel-limit", help="rescaled kernel vs edge limit")
    p.add_argument("--edge", choices=("hard", "soft"), required=True)
    p.add_argument("--grid", default="-2.0:1.0:0.5", help="u grid as x0:x1:step")
    p.add_argument("--n-dim", type=int, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_kernel_limit)

    p = sub.add_parser("rhp-verify", help="jump-residual verification suite")
    p.add_argument("--check", choices=_RHP_CHECKS + ("all",), default="all")
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--n-dim", type=int, default=8)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_rhp_verify)

    p = sub.add_parser("asymp-compare", help="leading-order Y11 against the recurrence")
    p.add_argument("--n-dim", type=int, default=20)
    p.add_argument("--doublings", type=int, default=1)
    p.add_argument("--x", type=float, default=2.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_asymp_compare)

    p = sub.add_parser("rerun", help="repeat a run from its manifest")
    p.add_argument("manifest")
    p.set_defaults(func=_cmd_rerun)
    return ap


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, argv)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (fr.NonConvergenceError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
