"""Matrix-free nonlinear least squares with a structured diagonal Hessian."""

from .problem import EvalCounters, EvaluationError, Evaluator, NlsProblem
from .diagonal import (
    DiagHessian,
    SafeguardParams,
    SecantPair,
    direction,
    safeguard_secant,
    secant_vectors,
    update_diagonal,
)
from .linesearch import (
    LineSearchFailure,
    LineSearchParams,
    LineSearchState,
    accept_test,
    backtrack,
    eta_schedule,
    update_pq,
)
from .solver import IterationLog, RunRecord, SolverConfig, check_termination, solve
from .problems import (
    DimensionMismatch,
    ProblemSpec,
    UnknownProblem,
    instantiate,
    list_problems,
)

__all__ = [
    "DiagHessian",
    "DimensionMismatch",
    "EvalCounters",
    "EvaluationError",
    "Evaluator",
    "IterationLog",
    "LineSearchFailure",
    "LineSearchParams",
    "LineSearchState",
    "NlsProblem",
    "ProblemSpec",
    "RunRecord",
    "SafeguardParams",
    "SecantPair",
    "SolverConfig",
    "UnknownProblem",
    "accept_test",
    "backtrack",
    "check_termination",
    "direction",
    "eta_schedule",
    "instantiate",
    "list_problems",
    "safeguard_secant",
    "secant_vectors",
    "solve",
    "update_diagonal",
    "update_pq",
]
