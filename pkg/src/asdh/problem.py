"""Matrix-free problem handle and the evaluation counters behind NITER/NFEVAL/NMVP.

A problem is described by its residual map F: R^n -> R^m and the actions of
its Jacobian, J(x) v and J(x)^T u.  The Jacobian is never formed by the
solver.  All counting goes through :class:`Evaluator`, which wraps one
problem for the duration of a single run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

Vector = np.ndarray


class EvaluationError(ArithmeticError):
    """A residual or Jacobian product produced a non-finite entry."""

    def __init__(self, what: str, index: int):
        super().__init__(f"non-finite value in {what} at index {index}")
        self.what = what
        self.index = index


@dataclass(frozen=True)
class NlsProblem:
    """min 0.5*||F(x)||^2 given through F and the products J v, J^T u.

    ``gn`` optionally supplies a fused J^T (J s); when absent the two
    products are composed.
    """

    name: str
    n: int
    m: int
    x0: Vector
    F: Callable[[Vector], Vector]
    jv: Callable[[Vector, Vector], Vector]
    jtv: Callable[[Vector, Vector], Vector]
    gn: Optional[Callable[[Vector, Vector], Vector]] = None

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"{self.name}: dimensions must be positive (n={self.n}, m={self.m})")
        x0 = np.array(self.x0, dtype=float)
        if x0.shape != (self.n,):
            raise ValueError(f"{self.name}: x0 has shape {x0.shape}, expected ({self.n},)")
        x0.setflags(write=False)
        object.__setattr__(self, "x0", x0)

    def objective(self, x: Vector) -> float:
        """Uncounted f(x); convenient in tests and scripts."""
        r = self.F(np.asarray(x, dtype=float))
        return 0.5 * float(r @ r)


@dataclass
class EvalCounters:
    nfeval: int = 0
    nmvp: int = 0
    niter: int = 0


def _check_finite(v: Vector, what: str) -> Vector:
    if not np.all(np.isfinite(v)):
        raise EvaluationError(what, int(np.flatnonzero(~np.isfinite(v))[0]))
    return v


@dataclass
class Evaluator:
    """Counted access to a problem's operators for one solver run.

    Counting convention: every residual evaluation is one NFEVAL; each of
    J v, J^T u and the fused J^T J s is one NMVP.  With this convention an
    ASDH iteration costs exactly three products.
    """

    problem: NlsProblem
    counters: EvalCounters = field(default_factory=EvalCounters)

    def residual(self, x: Vector) -> Vector:
        self.counters.nfeval += 1
        with np.errstate(all="ignore"):
            r = np.asarray(self.problem.F(x), dtype=float)
        return _check_finite(r, "residual")

    def jacobian_apply(self, x: Vector, v: Vector) -> Vector:
        self.counters.nmvp += 1
        with np.errstate(all="ignore"):
            r = np.asarray(self.problem.jv(x, v), dtype=float)
        return _check_finite(r, "jacobian_apply")

    def jacobian_transpose_apply(self, x: Vector, u: Vector) -> Vector:
        self.counters.nmvp += 1
        with np.errstate(all="ignore"):
            r = np.asarray(self.problem.jtv(x, u), dtype=float)
        return _check_finite(r, "jacobian_transpose_apply")

    def gradient(self, x: Vector, F_x: Vector) -> Vector:
        """g(x) = J(x)^T F(x), reusing an already evaluated residual."""
        return self.jacobian_transpose_apply(x, F_x)

    def gauss_newton_apply(self, x: Vector, s: Vector) -> Vector:
        """J(x)^T (J(x) s), counted as a single product."""
        self.counters.nmvp += 1
        p = self.problem
        with np.errstate(all="ignore"):
            if p.gn is not None:
                r = np.asarray(p.gn(x, s), dtype=float)
            else:
                r = np.asarray(p.jtv(x, p.jv(x, s)), dtype=float)
        return _check_finite(r, "gauss_newton_apply")

    def fd_jacobian_apply(self, x: Vector, v: Vector, h: Optional[float] = None) -> Vector:
        """Central-difference estimate of J(x) v.  Test oracle only."""
        x = np.asarray(x, dtype=float)
        if h is None:
            h = fd_step(x)
        if not h > 0:
            raise ValueError("finite-difference step must be positive")
        fp = self.residual(x + h * v)
        fm = self.residual(x - h * v)
        return (fp - fm) / (2.0 * h)


def fd_step(x: Vector) -> float:
    # cube root of eps balances truncation and rounding for central differences
    return float(np.cbrt(np.finfo(float).eps) * (1.0 + np.max(np.abs(x), initial=0.0)))


def from_dense_jacobian(
    name: str,
    x0,
    m: int,
    F: Callable[[Vector], Vector],
    jac: Callable[[Vector], np.ndarray],
) -> NlsProblem:
    """Wrap a small problem whose Jacobian is cheap to build explicitly.

    The matrix stays inside the product closures; callers still only see
    J v and J^T u.
    """
    x0 = np.asarray(x0, dtype=float)
    return NlsProblem(
        name=name,
        n=x0.size,
        m=m,
        x0=x0,
        F=F,
        jv=lambda x, v: jac(x) @ v,
        jtv=lambda x, u: jac(x).T @ u,
        gn=lambda x, s: (lambda J: J.T @ (J @ s))(jac(x)),
    )


def linear_problem(A: np.ndarray, b: Vector, x0: Vector, name: str = "linear") -> NlsProblem:
    """F(x) = A x - b; handy for tests with a constant Jacobian."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    return NlsProblem(
        name=name,
        n=A.shape[1],
        m=A.shape[0],
        x0=x0,
        F=lambda x: A @ x - b,
        jv=lambda x, v: A @ v,
        jtv=lambda x, u: A.T @ u,
    )
