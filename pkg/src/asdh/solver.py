"""ASDH outer iteration: diagonal quasi-Newton direction, nonmonotone line search."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field, fields
from typing import Callable, Optional

import numpy as np

from .diagonal import DiagHessian, SafeguardParams, direction, safeguard_secant, secant_vectors, update_diagonal
from .linesearch import (
    LineSearchFailure,
    LineSearchParams,
    LineSearchState,
    backtrack,
    default_eta,
    eta_schedule,
    update_pq,
)
from .problem import EvaluationError, Evaluator, NlsProblem

STATUSES = ("converged", "maxiter", "ls-fail", "eval-fail")


@dataclass(frozen=True)
class SolverConfig:
    gamma: float = 0.2
    theta: float = 1e-4
    rho: float = 1e-4
    l: float = 1e-30
    u: float = 1e30
    eta_min: float = 0.1
    eta_max: float = 0.85
    eps: float = 1e-4
    k_max: int = 1000
    max_halvings: int = 60
    eta_schedule: Callable[[int], float] = field(default=default_eta, compare=False)

    def __post_init__(self):
        if not 0.0 < self.l <= 1.0 <= self.u:
            raise ValueError(f"need 0 < l <= 1 <= u, got l={self.l}, u={self.u}")
        if not self.eps > 0.0:
            raise ValueError("eps must be positive")
        if self.k_max < 1:
            raise ValueError("k_max must be at least 1")
        # the remaining ranges are checked by the parameter objects
        self.safeguard_params()
        self.linesearch_params()

    def safeguard_params(self) -> SafeguardParams:
        return SafeguardParams(gamma=self.gamma, rho=self.rho)

    def linesearch_params(self) -> LineSearchParams:
        return LineSearchParams(
            theta=self.theta, eta_min=self.eta_min, eta_max=self.eta_max, max_halvings=self.max_halvings
        )

    def numeric_fields(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "eta_schedule"}

    def fingerprint(self) -> str:
        parts = [f"{k}={v!r}" for k, v in self.numeric_fields().items()]
        sched = self.eta_schedule
        parts.append(f"eta_schedule={getattr(sched, '__module__', '')}.{getattr(sched, '__qualname__', repr(sched))}")
        return hashlib.sha1(";".join(parts).encode()).hexdigest()[:12]


@dataclass(frozen=True)
class IterationLog:
    """Quantities at the start of iteration k, before the step is taken."""

    k: int
    f: float
    P: float
    gnorm: float
    gtd: float
    dnorm: float
    alpha: float
    trials: int


@dataclass
class RunRecord:
    problem: str
    n: int
    m: int
    niter: int
    nfeval: int
    nmvp: int
    time_s: float
    fvalue: float
    gnorm: float
    status: str
    config: SolverConfig
    solver: str = "asdh"
    x: Optional[np.ndarray] = field(default=None, repr=False)
    message: str = ""
    trace: list = field(default_factory=list, repr=False)
    final_P: float = float("nan")

    @property
    def converged(self) -> bool:
        return self.status == "converged"

    @property
    def fingerprint(self) -> str:
        return self.config.fingerprint()


def check_termination(gnorm: float, k: int, eps: float, k_max: int) -> Optional[str]:
    """'converged', 'maxiter' or None to keep iterating."""
    if gnorm <= eps:
        return "converged"
    if k >= k_max:
        return "maxiter"
    return None


def solve(
    problem: NlsProblem,
    config: Optional[SolverConfig] = None,
    *,
    x0=None,
    solver_name: str = "asdh",
    record_trace: bool = False,
) -> RunRecord:
    """Run ASDH on ``problem`` and return the run's telemetry.

    Evaluation and line-search failures end the run with status
    ``eval-fail`` / ``ls-fail``; the record then describes the last
    accepted iterate.
    """
    cfg = config or SolverConfig()
    ev = Evaluator(problem)
    sg = cfg.safeguard_params()
    lp = cfg.linesearch_params()
    trace = []

    x = np.array(problem.x0 if x0 is None else x0, dtype=float)
    f = np.inf
    gnorm = np.inf
    status = None
    message = ""
    ls = None

    t0 = time.perf_counter()
    try:
        F = ev.residual(x)
        f = 0.5 * float(F @ F)
        g = ev.gradient(x, F)
        gnorm = float(np.linalg.norm(g))
        H = DiagHessian.identity(problem.n, cfg.l, cfg.u)
        ls = LineSearchState(P=f, Q=1.0, k=0)
        k = 0
        while True:
            status = check_termination(gnorm, k, cfg.eps, cfg.k_max)
            if status is not None:
                break
            d = direction(H, g)
            gtd = float(g @ d)
            step = backtrack(ev, x, d, ls.P, gtd, lp)
            if record_trace:
                trace.append(
                    IterationLog(k, f, ls.P, gnorm, gtd, float(np.linalg.norm(d)), step.alpha, step.trials)
                )
            g_new = ev.gradient(step.x_new, step.F_new)
            pair = secant_vectors(ev, x, step.x_new, step.F_new, g_new)
            pair = safeguard_secant(pair, g_new, sg)
            H = update_diagonal(pair, cfg.l, cfg.u)
            eta = eta_schedule(k, cfg.eta_min, cfg.eta_max, cfg.eta_schedule)
            ls = update_pq(ls, eta, step.f_new)

            x, F, f, g = step.x_new, step.F_new, step.f_new, g_new
            gnorm = float(np.linalg.norm(g))
            k += 1
            ev.counters.niter = k
    except LineSearchFailure as exc:
        status, message = "ls-fail", str(exc)
    except EvaluationError as exc:
        status, message = "eval-fail", str(exc)
    elapsed = time.perf_counter() - t0

    c = ev.counters
    return RunRecord(
        problem=problem.name,
        n=problem.n,
        m=problem.m,
        niter=c.niter,
        nfeval=c.nfeval,
        nmvp=c.nmvp,
        time_s=elapsed,
        fvalue=f,
        gnorm=gnorm,
        status=status,
        config=cfg,
        solver=solver_name,
        x=x,
        message=message,
        trace=trace,
        final_P=ls.P if ls is not None else f,
    )
