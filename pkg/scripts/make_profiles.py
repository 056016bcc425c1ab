"""Turn a results CSV into performance profiles, one SVG + CSV per metric.

    python scripts/make_profiles.py results/results.csv --outdir results/profiles
"""

import argparse
from pathlib import Path

from asdh.bench import emit_profile, performance_profile, read_csv
from asdh.bench.profile import METRICS


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("results")
    ap.add_argument("--outdir", default="results/profiles")
    args = ap.parse_args()

    records = read_csv(args.results)
    outdir = Path(args.outdir)
    for metric in METRICS:
        curves = performance_profile(records, metric)
        emit_profile(curves, outdir / f"profile_{metric}.svg")
        emit_profile(curves, outdir / f"profile_{metric}.csv")
        summary = ", ".join(f"{c.solver} rho(1)={c.rho(1.0):.2f}" for c in curves)
        print(f"{metric:<7} {summary}")


if __name__ == "__main__":
    main()
