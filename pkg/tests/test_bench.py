import csv
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from asdh import RunRecord, SolverConfig
from asdh.bench import (
    BUILTIN_CONFIGS,
    BenchPlan,
    ConfigError,
    IncompleteMatrix,
    emit_csv,
    emit_profile,
    load_config,
    parse_config_text,
    performance_profile,
    read_csv,
    read_profile_csv,
    run_benchmark,
)
from asdh.bench.config import format_config
from asdh.bench.harness import CSV_FIELDS
from asdh.cli import main


def rec(problem, solver, niter, status="converged", n=2):
    return RunRecord(problem, n, n, niter, niter + 1, 3 * niter + 1, 0.01 * (niter + 1), 0.0, 0.0,
                     status, SolverConfig(), solver=solver)


def profile_oracle(costs):
    """costs: {solver: [cost per problem or inf]} -> {solver: fn(tau)} by brute force."""
    solvers = list(costs)
    nprob = len(costs[solvers[0]])
    best = [min(costs[s][p] for s in solvers) for p in range(nprob)]

    def ratio(s, p):
        if math.isinf(costs[s][p]):
            return math.inf
        if best[p] == 0:
            return costs[s][p] + 1.0
        return costs[s][p] / best[p]

    return {s: (lambda tau, s=s: sum(ratio(s, p) <= tau for p in range(nprob)) / nprob) for s in solvers}


def by_solver(curves):
    return {c.solver: c for c in curves}


# -- profiles -------------------------------------------------------------------


def test_profile_hand_example():
    records = [rec("P1", "A", 2), rec("P2", "A", 4), rec("P1", "B", 4), rec("P2", "B", 2)]
    c = by_solver(performance_profile(records, "niter"))
    assert c["A"].rho(1.0) == 0.5 and c["A"].rho(2.0) == 1.0
    assert c["B"].rho(1.0) == 0.5 and c["B"].rho(2.0) == 1.0
    assert c["A"].points == ((1.0, 0.5), (2.0, 1.0))


def test_profile_identical_costs():
    records = [rec(f"P{i}", s, i + 1) for i in range(1, 6) for s in ("A", "B")]
    for c in performance_profile(records, "niter"):
        assert c.rho(1.0) == 1.0


def test_profile_failure_caps_fraction():
    records = [rec(f"P{i}", "A", 5, status="maxiter" if i == 3 else "converged") for i in range(1, 11)]
    records += [rec(f"P{i}", "B", 7) for i in range(1, 11)]
    c = by_solver(performance_profile(records, "niter"))
    assert all(r <= 0.9 for _, r in c["A"].points)
    assert c["A"].rho(1e300) == 0.9
    assert c["B"].rho(7 / 5) == 1.0


def test_profile_zero_cost_shift():
    records = [rec("P1", "A", 0), rec("P1", "B", 3)]
    c = by_solver(performance_profile(records, "niter"))
    assert c["A"].rho(1.0) == 1.0
    assert c["B"].rho(3.9) == 0.0 and c["B"].rho(4.0) == 1.0


def test_profile_requires_complete_matrix():
    with pytest.raises(IncompleteMatrix):
        performance_profile([rec("P1", "A", 1), rec("P2", "A", 1), rec("P1", "B", 1)], "niter")
    with pytest.raises(ValueError):
        performance_profile([rec("P1", "A", 1)], "niter")


cost = st.one_of(st.integers(0, 50).map(float), st.just(math.inf))


@given(st.integers(1, 8).flatmap(lambda k: st.lists(st.lists(cost, min_size=k, max_size=k), min_size=2, max_size=4)))
def test_profile_matches_oracle_and_invariants(table):
    solvers = [f"S{j}" for j in range(len(table))]
    records = []
    for s, row in zip(solvers, table):
        for p, t in enumerate(row):
            r = rec(f"P{p + 1}", s, 0 if math.isinf(t) else int(t), status="maxiter" if math.isinf(t) else "converged")
            records.append(r)
    curves = by_solver(performance_profile(records, "niter"))
    oracle = profile_oracle({s: row for s, row in zip(solvers, table)})
    taus = sorted({t for c in curves.values() for t, _ in c.points}) + [1e9]
    for s in solvers:
        pts = curves[s].points
        assert all(t >= 1.0 for t, _ in pts)
        assert all(0.0 <= r <= 1.0 for _, r in pts)
        assert all(a[1] <= b[1] for a, b in zip(pts, pts[1:]))
        for tau in taus:
            assert curves[s].rho(tau) == oracle[s](tau)


# -- CSV ------------------------------------------------------------------------


def test_emit_csv_header_only(tmp_path):
    path = emit_csv([], tmp_path / "r.csv")
    assert path.read_text() == ",".join(CSV_FIELDS) + "\n"


def test_emit_csv_failed_rows_blank(tmp_path):
    path = emit_csv([rec("P1", "A", 3), rec("P2", "A", 1000, status="maxiter")], tmp_path / "r.csv")
    rows = list(csv.DictReader(path.open()))
    assert rows[0]["niter"] == "3"
    assert rows[1]["status"] == "maxiter"
    for key in ("niter", "nfeval", "nmvp", "time_s", "fvalue", "gnorm"):
        assert rows[1][key] == ""
    assert rows[1]["theta"] == "0.0001" and rows[1]["kmax"] == "1000"


def test_csv_round_trip(tmp_path):
    records = [rec("P3", "B", 2), rec("P1", "A", 5)]
    records[0].fvalue = 0.1 + 0.2
    back = read_csv(emit_csv(records, tmp_path / "r.csv"))
    assert [r.problem for r in back] == ["P1", "P3"]
    assert back[1].fvalue == 0.1 + 0.2
    assert back[0].config == SolverConfig()


def test_emit_csv_reports_path(tmp_path):
    (tmp_path / "blocker").write_text("")
    with pytest.raises(OSError, match="blocker"):
        emit_csv([], tmp_path / "blocker" / "r.csv")


def test_profile_csv_round_trip_and_svg(tmp_path):
    records = [rec("P1", "A", 2), rec("P2", "A", 4), rec("P1", "B", 4), rec("P2", "B", 2)]
    curves = performance_profile(records, "nmvp")
    back = read_profile_csv(emit_profile(curves, tmp_path / "p.csv"))
    assert sorted(back, key=lambda c: c.solver) == sorted(curves, key=lambda c: c.solver)
    svg = emit_profile(curves, tmp_path / "p.svg").read_text()
    assert svg.count("<polyline") == 2
    assert "matrix-vector products" in svg
    with pytest.raises(ValueError):
        emit_profile(curves, tmp_path / "p.png")


def test_single_breakpoint_svg(tmp_path):
    curves = performance_profile([rec("P1", "A", 1), rec("P1", "B", 1)], "niter")
    svg = emit_profile(curves, tmp_path / "p.svg").read_text()
    assert svg.count("<polyline") == 2


# -- harness ----------------------------------------------------------------------


def test_plan_cardinality():
    plan = BenchPlan(["P19", "P8", "P17", "P4", "P30"], large_dims=(100,))
    assert len(plan.tasks()) == 10
    assert len(BenchPlan(["P19", "P28"]).tasks()) == 3 * 2 + 2


def test_plan_validation():
    with pytest.raises(ValueError):
        BenchPlan([])
    with pytest.raises(KeyError):
        BenchPlan(["P99"])


def test_run_benchmark_records_and_determinism(tmp_path):
    plan = BenchPlan(["P19", "P2", "P28"], large_dims=(100,))
    a = run_benchmark(plan)
    b = run_benchmark(plan, jobs=2)
    assert len(a) == 6
    assert all(r.converged for r in a if r.problem != "P2")
    strip = lambda rs: [(r.problem, r.n, r.solver, r.niter, r.nfeval, r.nmvp, r.fvalue, r.status) for r in rs]
    assert strip(a) == strip(b)
    assert all(r.fingerprint == BUILTIN_CONFIGS[r.solver].fingerprint() for r in a)


def test_run_benchmark_unimplemented_is_data():
    recs = run_benchmark(BenchPlan(["P7"], large_dims=(100,)))
    assert [r.status for r in recs] == ["eval-fail", "eval-fail"]


def test_maxiter_record_keeps_last_fvalue():
    cfg = {"short": SolverConfig(k_max=3)}
    (r,) = run_benchmark(BenchPlan(["P2"], large_dims=(100,), configs=cfg))
    assert r.status == "maxiter" and r.niter == 3 and np.isfinite(r.fvalue)


# -- config files ----------------------------------------------------------------------


def test_parse_config_text():
    name, cfg = parse_config_text("# tuned\nname = tight\nkmax = 50\ntheta=1e-3  # comment\nl = 1e-4\n")
    assert name == "tight"
    assert cfg.k_max == 50 and cfg.theta == 1e-3 and cfg.l == 1e-4 and cfg.u == 1e30


@pytest.mark.parametrize("text", ["bogus = 1", "theta", "theta = abc", "theta = 2"])
def test_parse_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_load_config(tmp_path):
    assert load_config("asdh-monotone")[1].eta_max == 0.0
    f = tmp_path / "mine.cfg"
    f.write_text(format_config(SolverConfig(gamma=0.3)))
    name, cfg = load_config(str(f))
    assert name == "mine" and cfg == SolverConfig(gamma=0.3)
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.cfg"))


# -- CLI ----------------------------------------------------------------------------


def test_cli_solve(capsys):
    assert main(["solve", "--problem", "P19", "--n", "1000"]) == 0
    out = capsys.readouterr().out
    assert "NITER    1" in out and "NMVP     4" in out
    assert main(["solve", "--problem", "P2", "--n", "100", "--kmax", "2"]) == 1


def test_cli_errors(capsys):
    assert main(["solve", "--problem", "P99"]) == 2
    assert main(["solve", "--problem", "P19", "--n", "7"]) == 2
    assert main([]) == 2


def test_cli_list_problems(capsys):
    assert main(["bench", "list-problems"]) == 0
    out = capsys.readouterr().out
    assert out.count("\nP") == 30 and "optional-unimplemented" in out
    assert main(["--list-problems"]) == 0


def test_cli_bench_run_and_profile(tmp_path, capsys):
    out = tmp_path / "res.csv"
    cfg = tmp_path / "loose.cfg"
    cfg.write_text("eps = 1e-3\n")
    assert main(["bench", "run", "--problems", "P19,P8,P28", "--dims", "100", "--config", "asdh",
                 "--config", str(cfg), "--out", str(out)]) == 0
    records = read_csv(out)
    assert len(records) == 6 and {r.solver for r in records} == {"asdh", "loose"}
    assert main(["bench", "profile", "--in", str(out), "--metric", "all", "--out", str(tmp_path / "prof.svg")]) == 0
    for metric in ("niter", "nfeval", "nmvp", "time"):
        assert (tmp_path / f"prof_{metric}.svg").is_file()
        assert (tmp_path / f"prof_{metric}.csv").is_file()
    assert main(["bench", "profile", "--in", str(out), "--metric", "niter", "--out", str(tmp_path / "one.csv")]) == 0
    assert read_profile_csv(tmp_path / "one.csv")[0].metric == "niter"
