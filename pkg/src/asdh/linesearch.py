"""Zhang-Hager nonmonotone Armijo backtracking.

The reference value P_k is a running convex combination of past objective
values, weighted through Q_k and the schedule eta_k.  With eta_k == 0 the
test is the ordinary monotone Armijo rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .problem import EvaluationError, Evaluator, Vector


class LineSearchFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class LineSearchState:
    P: float
    Q: float = 1.0
    k: int = 0


@dataclass(frozen=True)
class LineSearchParams:
    theta: float = 1e-4
    eta_min: float = 0.1
    eta_max: float = 0.85
    max_halvings: int = 60

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        if not 0.0 <= self.eta_min <= self.eta_max <= 1.0:
            raise ValueError(f"need 0 <= eta_min <= eta_max <= 1, got {self.eta_min}, {self.eta_max}")
        if self.max_halvings < 1:
            raise ValueError("max_halvings must be positive")


def default_eta(k: int) -> float:
    return 0.75 * math.exp(-((k / 45.0) ** 2)) + 0.1


def eta_schedule(k: int, eta_min: float = 0.1, eta_max: float = 0.85, schedule=default_eta) -> float:
    return min(max(schedule(k), eta_min), eta_max)


def accept_test(f_trial: float, P: float, alpha: float, gtd: float, theta: float) -> bool:
    return f_trial <= P + theta * alpha * gtd


@dataclass
class StepResult:
    alpha: float
    f_new: float
    x_new: Vector
    F_new: Vector
    trials: int


def backtrack(
    ev: Evaluator, x: Vector, d: Vector, P: float, gtd: float, params: LineSearchParams
) -> StepResult:
    """Halve alpha from 1 until the nonmonotone Armijo test holds.

    A trial point whose residual is not finite counts as a rejected trial.
    Raises LineSearchFailure after ``max_halvings`` halvings.
    """
    alpha = 1.0
    for trial in range(1, params.max_halvings + 2):
        x_new = x + alpha * d
        try:
            F_new = ev.residual(x_new)
        except EvaluationError:
            F_new = None
        if F_new is not None:
            with np.errstate(over="ignore"):
                f_new = 0.5 * float(F_new @ F_new)
            if accept_test(f_new, P, alpha, gtd, params.theta):
                return StepResult(alpha, f_new, x_new, F_new, trial)
        alpha *= 0.5
    raise LineSearchFailure(
        f"no acceptable step after {params.max_halvings} halvings (gtd={gtd:.3e}, P={P:.6e})"
    )


def update_pq(state: LineSearchState, eta_k: float, f_new: float) -> LineSearchState:
    """Advance (P, Q) after an accepted step.

    P' = (eta Q P + f_new) / (eta Q + 1) is written as P + (f_new - P)/Q' and
    kept inside [min(P, f_new), max(P, f_new)] so rounding cannot break the
    convex-combination property.
    """
    if not 0.0 <= eta_k <= 1.0:
        raise ValueError(f"eta_k must lie in [0, 1], got {eta_k}")
    Q_new = eta_k * state.Q + 1.0
    P_new = state.P + (f_new - state.P) / Q_new
    P_new = float(np.clip(P_new, min(state.P, f_new), max(state.P, f_new)))
    return replace(state, P=P_new, Q=Q_new, k=state.k + 1)
