"""Dolan-More performance profiles and their CSV/SVG renderings."""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

METRICS = {"niter": "niter", "nfeval": "nfeval", "nmvp": "nmvp", "time": "time_s"}
METRIC_TITLES = {
    "niter": "number of iterations",
    "nfeval": "number of function evaluations",
    "nmvp": "number of matrix-vector products",
    "time": "CPU time",
}


class IncompleteMatrix(ValueError):
    pass


@dataclass(frozen=True)
class ProfileCurve:
    solver: str
    metric: str
    points: tuple  # ((tau, rho), ...) with tau increasing

    def rho(self, tau: float) -> float:
        """Step-function value at an arbitrary tau."""
        val = 0.0
        for t, r in self.points:
            if t <= tau:
                val = r
            else:
                break
        return val


def performance_ratios(records, metric: str) -> dict:
    """{solver: {(problem, n): ratio}}; failed runs get ratio inf.

    When the best cost on a problem is zero all costs there are shifted by
    one before dividing, so a zero-cost tie still has ratio 1.
    """
    attr = METRICS[metric]
    costs = defaultdict(dict)
    for rec in records:
        t = getattr(rec, attr)
        if rec.status != "converged" or t is None or not math.isfinite(t):
            t = math.inf
        costs[rec.solver][(rec.problem, rec.n)] = float(t)
    solvers = sorted(costs)
    if len(solvers) < 2:
        raise ValueError(f"performance profiles need at least two solvers, got {solvers}")
    keys = set().union(*(c.keys() for c in costs.values()))
    for s in solvers:
        missing = keys - costs[s].keys()
        if missing:
            raise IncompleteMatrix(f"solver {s} has no run for {sorted(missing)[:5]}")

    ratios = {s: {} for s in solvers}
    for key in keys:
        best = min(costs[s][key] for s in solvers)
        for s in solvers:
            t = costs[s][key]
            if math.isinf(best):
                ratios[s][key] = math.inf
            elif best == 0.0:
                ratios[s][key] = (t + 1.0) / 1.0
            else:
                ratios[s][key] = t / best
    return ratios


def performance_profile(records, metric: str) -> list:
    ratios = performance_ratios(records, metric)
    nprob = len(next(iter(ratios.values())))
    taus = sorted({r for rs in ratios.values() for r in rs.values() if math.isfinite(r)})
    curves = []
    for s, rs in ratios.items():
        vals = sorted(rs.values())
        pts = tuple((t, sum(v <= t for v in vals) / nprob) for t in taus)
        curves.append(ProfileCurve(s, metric, pts))
    return curves


def _write_profile_csv(curves, path: Path):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["metric", "solver", "tau", "rho"])
        for c in curves:
            for t, r in c.points:
                w.writerow([c.metric, c.solver, repr(float(t)), repr(float(r))])


def read_profile_csv(path) -> list:
    pts = defaultdict(list)
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            pts[(row["solver"], row["metric"])].append((float(row["tau"]), float(row["rho"])))
    return [ProfileCurve(s, m, tuple(p)) for (s, m), p in pts.items()]


_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]


def render_svg(curves, width: int = 640, height: int = 440) -> str:
    """Step plot of rho(tau) on a log2 tau axis, one polyline per solver."""
    left, right, top, bottom = 60, 150, 40, 50
    pw, ph = width - left - right, height - top - bottom
    metric = curves[0].metric
    tau_max = max((t for c in curves for t, _ in c.points), default=1.0)
    xmax = max(math.log2(tau_max) * 1.05, 1.0)

    def X(tau):
        return left + pw * math.log2(tau) / xmax

    def Y(rho):
        return top + ph * (1.0 - rho)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{left + pw / 2}" y="22" text-anchor="middle" font-size="15">'
        f"Performance profile: {escape(METRIC_TITLES.get(metric, metric))}</text>",
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        rho = i / 5
        out.append(f'<text x="{left - 8}" y="{Y(rho) + 4:.1f}" text-anchor="end" font-size="11">{rho:.1f}</text>')
    nticks = max(1, int(xmax))
    for i in range(nticks + 1):
        out.append(f'<text x="{left + pw * i / xmax:.1f}" y="{top + ph + 16}" text-anchor="middle" font-size="11">{2 ** i:g}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{height - 12}" text-anchor="middle" font-size="12">tau (log2 scale)</text>')
    out.append(f'<text x="16" y="{top + ph / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {top + ph / 2})">rho(tau)</text>')

    for k, c in enumerate(curves):
        color = _COLORS[k % len(_COLORS)]
        xy = []
        prev = 0.0
        for t, r in c.points:
            xy += [(X(t), Y(prev)), (X(t), Y(r))]
            prev = r
        xy.append((left + pw, Y(prev)))
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in xy)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>')
        ly = top + 20 + 20 * k
        out.append(f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 36}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 42}" y="{ly + 4}" font-size="12">{escape(c.solver)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_profile(curves, path, format: str = None) -> Path:
    """Write curves as CSV or SVG (format defaults to the file suffix)."""
    if not curves:
        raise ValueError("no curves to write")
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".") or "csv").lower()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            _write_profile_csv(curves, path)
        elif fmt == "svg":
            path.write_text(render_svg(curves))
        else:
            raise ValueError(f"unsupported profile format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write profile to {path}: {exc}") from exc
    return path
