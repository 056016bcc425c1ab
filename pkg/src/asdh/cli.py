"""Command line entry point.

    asdh solve --problem P19 --n 1000
    asdh bench run --problems P1,P19 --dims 1000,5000 --config asdh --out results.csv
    asdh bench profile --in results.csv --metric niter --out profile.svg
    asdh bench list-problems
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .bench.config import BUILTIN_CONFIGS, ConfigError, load_config
from .bench.harness import LARGE_DIMS, BenchPlan, emit_csv, read_csv, run_benchmark
from .bench.profile import METRICS, emit_profile, performance_profile
from .problems import CATALOG, instantiate, list_problems, required_ids
from .solver import SolverConfig, solve


def _csv_list(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def cmd_list_problems(args) -> int:
    print(f"{'id':<5} {'name':<36} {'scale':<6} {'dims':<24} status")
    for s in list_problems():
        print(f"{s.id:<5} {s.name:<36} {s.scale:<6} {s.dims_label():<24} {s.status}")
    return 0


def cmd_solve(args) -> int:
    overrides = {
        k: v
        for k, v in dict(
            eps=args.eps, k_max=args.kmax, theta=args.theta, gamma=args.gamma, rho=args.rho, l=args.l, u=args.u
        ).items()
        if v is not None
    }
    _, base = load_config(args.config)
    cfg = replace(base, **overrides)
    problem = instantiate(args.problem, args.n)
    rec = solve(problem, cfg)
    print(f"problem  {rec.problem} (n={rec.n}, m={rec.m})")
    print(f"status   {rec.status}")
    print(f"NITER    {rec.niter}")
    print(f"NFEVAL   {rec.nfeval}")
    print(f"NMVP     {rec.nmvp}")
    print(f"TIME     {rec.time_s:.6f}")
    print(f"FVALUE   {rec.fvalue!r}")
    print(f"||g||    {rec.gnorm:.3e}")
    if rec.message:
        print(f"message  {rec.message}")
    return 0 if rec.converged else 1


def cmd_bench_run(args) -> int:
    problems = required_ids() if args.problems in (None, "required") else (
        [s.id for s in list_problems() if s.implemented] if args.problems == "all" else _csv_list(args.problems)
    )
    configs = dict(load_config(c) for c in (args.config or list(BUILTIN_CONFIGS)))
    dims = tuple(int(d) for d in _csv_list(args.dims)) if args.dims else LARGE_DIMS
    plan = BenchPlan(problems, large_dims=dims, configs=configs)
    records = run_benchmark(plan, jobs=args.jobs, repeats=args.repeats)
    emit_csv(records, args.out)
    failed = sum(not r.converged for r in records)
    print(f"{len(records)} runs written to {args.out} ({failed} not converged)")
    return 0


def cmd_bench_profile(args) -> int:
    records = read_csv(args.inp)
    metrics = list(METRICS) if args.metric == "all" else [args.metric]
    out = Path(args.out)
    for metric in metrics:
        curves = performance_profile(records, metric)
        target = out if len(metrics) == 1 else out.with_name(f"{out.stem}_{metric}{out.suffix}")
        emit_profile(curves, target)
        if target.suffix.lower() == ".svg":
            emit_profile(curves, target.with_suffix(".csv"))
        print(f"{metric}: wrote {target}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asdh", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--list-problems", action="store_true", help="print the problem catalog and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("solve", help="solve one catalog problem")
    s.add_argument("--problem", required=True)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--config", default="asdh", help="builtin name or key=value file")
    s.add_argument("--eps", type=float)
    s.add_argument("--kmax", type=int)
    s.add_argument("--theta", type=float)
    s.add_argument("--gamma", type=float)
    s.add_argument("--rho", type=float)
    s.add_argument("--l", type=float)
    s.add_argument("--u", type=float)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="benchmark sweeps and performance profiles")
    bsub = b.add_subparsers(dest="bench_command", required=True)

    r = bsub.add_parser("run", help="run a problem x dimension x config sweep")
    r.add_argument("--problems", default=None, help="comma list, 'required' (default) or 'all'")
    r.add_argument("--dims", default=None, help="large-scale dimensions, default 1000,5000,10000")
    r.add_argument("--config", action="append", help="builtin name or config file; repeatable")
    r.add_argument("--out", required=True)
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--repeats", type=int, default=1, help="timing repeats (median), runs serially")
    r.set_defaults(func=cmd_bench_run)

    pr = bsub.add_parser("profile", help="Dolan-More profile from a results CSV")
    pr.add_argument("--in", dest="inp", required=True)
    pr.add_argument("--metric", choices=list(METRICS) + ["all"], default="niter")
    pr.add_argument("--out", required=True, help=".csv or .svg")
    pr.set_defaults(func=cmd_bench_profile)

    lp = bsub.add_parser("list-problems", help="print the problem catalog")
    lp.set_defaults(func=cmd_list_problems)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.list_problems:
        return cmd_list_problems(args)
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except (ConfigError, KeyError, ValueError, NotImplementedError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
