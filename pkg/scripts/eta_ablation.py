"""Compare the default eta schedule with fixed-eta variants on the required suite at one n.

    python scripts/eta_ablation.py --n 1000 --etas 0,0.5,0.85
"""

import argparse
from dataclasses import replace

from asdh import SolverConfig, solve
from asdh.problems import CATALOG, instantiate, required_ids


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--etas", default="0,0.5,0.85")
    args = ap.parse_args()

    configs = {"schedule": SolverConfig()}
    for e in args.etas.split(","):
        e = float(e)
        configs[f"eta={e:g}"] = replace(SolverConfig(), eta_min=e, eta_max=e)

    print(f"{'':<5}" + "".join(f"{name:>12}" for name in configs))
    totals = dict.fromkeys(configs, 0)
    for pid in required_ids():
        n = args.n if CATALOG[pid].scale == "large" else None
        cells = []
        for name, cfg in configs.items():
            r = solve(instantiate(pid, n), cfg)
            cells.append(f"{r.niter:>12}" if r.converged else f"{'F':>12}")
            totals[name] += r.converged
        print(f"{pid:<5}" + "".join(cells))
    print(f"{'ok':<5}" + "".join(f"{totals[name]:>12}" for name in configs))


if __name__ == "__main__":
    main()
