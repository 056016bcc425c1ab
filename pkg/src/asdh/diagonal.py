"""Structured secant vectors, sign safeguards and the clamped diagonal Hessian.

The secant target is split into the exact Gauss-Newton part
``y_hat = J_k^T J_k s`` and the curvature estimate
``y_bar = (J_k - J_{k-1})^T F_k``.  Only their sum enters the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import Evaluator, Vector, _check_finite


@dataclass(frozen=True)
class SecantPair:
    y_hat: Vector
    y_bar: Vector
    s: Vector


@dataclass(frozen=True)
class SafeguardParams:
    gamma: float = 0.2
    rho: float = 1e-4

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not self.rho > 0.0:
            raise ValueError(f"rho must be positive, got {self.rho}")


@dataclass(frozen=True)
class DiagHessian:
    h: Vector
    l: float
    u: float

    @classmethod
    def identity(cls, n: int, l: float, u: float) -> "DiagHessian":
        return cls(np.ones(n), l, u)


def secant_vectors(
    ev: Evaluator, x_prev: Vector, x_new: Vector, F_new: Vector, g_new: Vector
) -> SecantPair:
    """Build (y_hat, y_bar, s) at a new iterate; costs two products.

    ``g_new`` must be J(x_new)^T F_new and is reused rather than recomputed.
    """
    s = x_new - x_prev
    y_hat = ev.gauss_newton_apply(x_new, s)
    y_bar = _check_finite(g_new - ev.jacobian_transpose_apply(x_prev, F_new), "y_bar")
    return SecantPair(y_hat=y_hat, y_bar=y_bar, s=s)


def safeguard_secant(pair: SecantPair, g_new: Vector, params: SafeguardParams) -> SecantPair:
    """Flip components of y_hat and y_bar whose sign disagrees with s.

    For s_i > 0 a nonpositive y_hat_i becomes gamma*max(|y_hat_i|, rho) and a
    nonpositive y_bar_i becomes gamma*max(|g_i|, |(J_{k-1}^T F_k)_i|, rho).
    For s_i < 0 the mirrored rule applies with a negative sign.  Components
    with s_i == 0 are untouched.  (J_{k-1}^T F_k)_i is recovered as
    g_i - y_bar_i, so no product is spent.
    """
    s, y_hat, y_bar = pair.s, pair.y_hat.copy(), pair.y_bar.copy()
    gamma, rho = params.gamma, params.rho
    old_jtf = g_new - pair.y_bar
    bar_scale = gamma * np.maximum(np.maximum(np.abs(g_new), np.abs(old_jtf)), rho)

    pos = s > 0
    neg = s < 0

    fix = pos & (y_hat <= 0)
    y_hat[fix] = gamma * np.maximum(np.abs(pair.y_hat[fix]), rho)
    fix = pos & (y_bar <= 0)
    y_bar[fix] = bar_scale[fix]

    fix = neg & (y_hat >= 0)
    y_hat[fix] = -gamma * np.maximum(pair.y_hat[fix], rho)
    fix = neg & (y_bar >= 0)
    y_bar[fix] = -bar_scale[fix]

    return SecantPair(y_hat=y_hat, y_bar=y_bar, s=s)


def update_diagonal(pair: SecantPair, l: float, u: float) -> DiagHessian:
    s = pair.s
    zero = s == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (pair.y_hat + pair.y_bar) / np.where(zero, 1.0, s)
    h = np.where(zero, 1.0, np.clip(ratio, l, u))
    return DiagHessian(h=h, l=l, u=u)


def direction(H: DiagHessian, g: Vector) -> Vector:
    """Solve H d = -g for diagonal H."""
    return -g / H.h
