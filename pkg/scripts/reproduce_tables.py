"""Run the benchmark sweep, write a results CSV and print per-dimension tables.

    python scripts/reproduce_tables.py --out results/results.csv --jobs 4
"""

import argparse
import logging
import math
from pathlib import Path

from asdh.bench import BUILTIN_CONFIGS, BenchPlan, emit_csv, load_config, run_benchmark
from asdh.bench.harness import LARGE_DIMS
from asdh.problems import CATALOG, list_problems, required_ids


def fmt(rec):
    if not rec.converged:
        return f"{'F':>6} {'F':>6} {'F':>6} {'F':>9} {'F':>12}"
    return f"{rec.niter:>6} {rec.nfeval:>6} {rec.nmvp:>6} {rec.time_s:>9.4f} {rec.fvalue:>12.6g}"


def print_tables(records, solvers):
    groups = {}
    for r in records:
        scale = CATALOG[r.problem].scale
        groups.setdefault((scale, r.n if scale == "large" else 0), {}).setdefault(r.problem, {})[r.solver] = r
    head = " ".join(f"{'NITER':>6} {'NFEVAL':>6} {'NMVP':>6} {'TIME':>9} {'FVALUE':>12}" for _ in solvers)
    for (scale, n), rows in sorted(groups.items()):
        title = f"n = {n}" if scale == "large" else "small scale"
        print(f"\n{title}   solvers: {' | '.join(solvers)}")
        print(f"{'':<5} {head}")
        for pid in sorted(rows, key=lambda p: int(p[1:])):
            print(f"{pid:<5} " + " ".join(fmt(rows[pid][s]) for s in solvers))
    for s in solvers:
        ok = sum(r.converged for r in records if r.solver == s)
        tot = sum(r.solver == s for r in records)
        print(f"\n{s}: {ok}/{tot} runs converged")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="results/results.csv")
    ap.add_argument("--dims", default=",".join(map(str, LARGE_DIMS)))
    ap.add_argument("--config", action="append", help="builtin name or config file (default: both builtins)")
    ap.add_argument("--all", action="store_true", help="include the optional implemented problems")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--repeats", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    problems = [s.id for s in list_problems() if s.implemented] if args.all else required_ids()
    configs = dict(load_config(c) for c in (args.config or list(BUILTIN_CONFIGS)))
    plan = BenchPlan(problems, large_dims=tuple(int(d) for d in args.dims.split(",")), configs=configs)
    records = run_benchmark(plan, jobs=args.jobs, repeats=args.repeats)
    emit_csv(records, Path(args.out))
    print_tables(records, list(configs))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
