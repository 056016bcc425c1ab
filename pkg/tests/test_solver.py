import numpy as np
import pytest

from asdh import NlsProblem, SolverConfig, check_termination, instantiate, solve
from asdh.problem import linear_problem


def test_check_termination_examples():
    assert check_termination(5e-5, 3, 1e-4, 1000) == "converged"
    assert check_termination(1.0, 1000, 1e-4, 1000) == "maxiter"
    assert check_termination(1.0, 0, 1e-4, 1000) is None
    # convergence wins when both hold
    assert check_termination(1e-5, 1000, 1e-4, 1000) == "converged"


def test_zero_residual_start_returns_immediately():
    p = instantiate("P19", 4)
    rec = solve(p, x0=np.ones(4))
    assert rec.status == "converged"
    assert (rec.niter, rec.nfeval, rec.nmvp) == (0, 1, 1)
    assert rec.fvalue == 0.0


def test_rosenbrock_single_step():
    rec = solve(instantiate("P19", 1000))
    assert rec.converged
    assert (rec.niter, rec.nfeval, rec.nmvp) == (1, 2, 4)
    assert rec.fvalue <= 1e-12
    np.testing.assert_allclose(rec.x, 1.0)


@pytest.mark.parametrize("n", [1000, 5000])
def test_strictly_convex_optimum(n):
    rec = solve(instantiate("P8", n))
    assert rec.converged
    assert rec.fvalue == pytest.approx(n / 2, abs=1e-6 * n)


def test_first_direction_is_steepest_descent():
    p = instantiate("P17", 100)
    rec = solve(p, record_trace=True)
    first = rec.trace[0]
    assert first.k == 0
    # H0 = I: d0 = -g0 so g0'd0 = -|g0|^2 and |d0| = |g0|
    assert first.gtd == pytest.approx(-first.gnorm**2, rel=1e-14)
    assert first.dnorm == pytest.approx(first.gnorm, rel=1e-14)


def test_maxiter_status_and_last_iterate():
    rec = solve(instantiate("P2", 1000), SolverConfig(k_max=5))
    assert rec.status == "maxiter" and rec.niter == 5
    assert np.isfinite(rec.fvalue) and rec.gnorm > 1e-4
    assert rec.nmvp == 3 * rec.niter + 1


def test_evaluation_failure_becomes_status():
    bad = NlsProblem("nan", 1, 1, np.array([1.0]), lambda x: np.array([np.nan]), lambda x, v: v, lambda x, u: u)
    rec = solve(bad)
    assert rec.status == "eval-fail" and rec.niter == 0


def test_monotone_config_runs(rng):
    A = rng.standard_normal((30, 20)) + 4 * np.eye(30, 20)
    p = linear_problem(A, rng.standard_normal(30), np.zeros(20))
    rec = solve(p, SolverConfig(eta_min=0.0, eta_max=0.0), record_trace=True)
    assert rec.converged
    fs = [t.f for t in rec.trace] + [rec.fvalue]
    assert all(b <= a for a, b in zip(fs, fs[1:]))


def test_solve_is_deterministic():
    a = solve(instantiate("P17", 200))
    b = solve(instantiate("P17", 200))
    assert (a.niter, a.nfeval, a.nmvp, a.fvalue) == (b.niter, b.nfeval, b.nmvp, b.fvalue)
    np.testing.assert_array_equal(a.x, b.x)


@pytest.mark.parametrize(
    "bad",
    [dict(gamma=0.0), dict(gamma=1.0), dict(theta=1.0), dict(rho=0.0), dict(l=2.0), dict(u=0.5),
     dict(eta_min=0.9), dict(eps=0.0), dict(k_max=0)],
)
def test_config_validation(bad):
    with pytest.raises(ValueError):
        SolverConfig(**bad)


def test_fingerprint_tracks_numeric_fields():
    assert SolverConfig().fingerprint() == SolverConfig().fingerprint()
    assert SolverConfig().fingerprint() != SolverConfig(theta=1e-3).fingerprint()
    assert len(SolverConfig().fingerprint()) == 12
