"""Problem x dimension x config sweeps and their CSV result files."""

from __future__ import annotations

import csv
import logging
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from ..problems import CATALOG, instantiate, problem_id
from ..solver import RunRecord, SolverConfig, solve
from .config import BUILTIN_CONFIGS

log = logging.getLogger(__name__)

LARGE_DIMS = (1000, 5000, 10000)

CSV_FIELDS = [
    "problem", "n", "m", "solver", "niter", "nfeval", "nmvp", "time_s", "fvalue", "gnorm", "status",
    "theta", "gamma", "rho", "l", "u", "eps", "kmax",
]
# left blank on rows that did not converge
_RESULT_FIELDS = ("niter", "nfeval", "nmvp", "time_s", "fvalue", "gnorm")
_CONFIG_COLUMNS = {"theta": "theta", "gamma": "gamma", "rho": "rho", "l": "l", "u": "u", "eps": "eps", "kmax": "k_max"}


@dataclass
class BenchPlan:
    problems: list
    large_dims: tuple = LARGE_DIMS
    configs: dict = field(default_factory=lambda: dict(BUILTIN_CONFIGS))

    def __post_init__(self):
        self.problems = [problem_id(p) for p in self.problems]
        if not self.problems:
            raise ValueError("a plan needs at least one problem")
        if not self.configs:
            raise ValueError("a plan needs at least one solver config")
        for pid in self.problems:
            if pid not in CATALOG:
                raise KeyError(f"unknown problem {pid}")

    def tasks(self) -> list:
        """(problem id, n or None, solver name) triples; small problems run once."""
        out = []
        for pid in self.problems:
            dims = [None] if CATALOG[pid].fixed_n is not None else list(self.large_dims)
            for n in dims:
                for name in self.configs:
                    out.append((pid, n, name))
        return out


def _sort_key(rec) -> tuple:
    return (int(rec.problem[1:]), rec.n, rec.solver)


def run_one(pid: str, n: Optional[int], name: str, cfg: SolverConfig, repeats: int = 1) -> RunRecord:
    """Solve one triple; failures become records, never exceptions."""
    try:
        problem = instantiate(pid, n)
    except Exception as exc:  # bad dimension or unimplemented entry
        spec = CATALOG[pid]
        nn, mm = spec.dims(n)
        return RunRecord(pid, nn or 0, mm or 0, 0, 0, 0, float("nan"), float("nan"), float("nan"),
                         "eval-fail", cfg, solver=name, message=str(exc))
    runs = [solve(problem, cfg, solver_name=name) for _ in range(max(1, repeats))]
    rec = runs[0]
    rec.time_s = statistics.median(r.time_s for r in runs)
    rec.x = None
    return rec


def run_benchmark(plan: BenchPlan, jobs: int = 1, repeats: int = 1) -> list:
    tasks = [(pid, n, name, plan.configs[name]) for pid, n, name in plan.tasks()]
    if jobs > 1 and repeats == 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run_one, *zip(*tasks)))
    else:
        records = []
        for pid, n, name, cfg in tasks:
            rec = run_one(pid, n, name, cfg, repeats)
            log.info("%s n=%s %s: %s niter=%d", pid, rec.n, name, rec.status, rec.niter)
            records.append(rec)
    return sorted(records, key=_sort_key)


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def emit_csv(records, path) -> Path:
    path = Path(path)
    rows = []
    for rec in sorted(records, key=_sort_key):
        row = {k: getattr(rec, k) for k in ("problem", "n", "m", "solver", "status") + _RESULT_FIELDS}
        if rec.status != "converged":
            row.update({k: "" for k in _RESULT_FIELDS})
        for col, attr in _CONFIG_COLUMNS.items():
            row[col] = getattr(rec.config, attr)
        rows.append({k: _fmt(v) for k, v in row.items()})
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc
    return path


def read_csv(path) -> list:
    """Load records written by :func:`emit_csv` (blank numbers become NaN)."""
    path = Path(path)
    records = []
    with path.open(newline="") as fh:
        for row in csv.DictReader(fh):
            def num(key, cast=float):
                return cast(row[key]) if row[key] != "" else float("nan")

            cfg = replace(
                SolverConfig(),
                **{attr: (int(row[col]) if attr == "k_max" else float(row[col])) for col, attr in _CONFIG_COLUMNS.items()},
            )
            records.append(
                RunRecord(
                    problem=row["problem"], n=int(row["n"]), m=int(row["m"]),
                    niter=num("niter", int), nfeval=num("nfeval", int), nmvp=num("nmvp", int),
                    time_s=num("time_s"), fvalue=num("fvalue"), gnorm=num("gnorm"),
                    status=row["status"], config=cfg, solver=row["solver"],
                )
            )
    return records
