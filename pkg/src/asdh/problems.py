"""Test problem catalog P1-P30 with analytic Jacobian products.

Large-scale problems take any admissible n (m = n unless noted); small-scale
problems have fixed dimensions.  Definitions follow the More-Garbow-Hillstrom
collection and the La Cruz-Martinez-Raydan / Raydan function lists, with the
starting points of the benchmark table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .problem import NlsProblem, from_dense_jacobian


class UnknownProblem(KeyError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    name: str
    scale: str  # "large" | "small"
    status: str  # "required" | "optional" | "optional-unimplemented"
    start: str
    build: Optional[Callable[[int], NlsProblem]] = None
    fixed_n: Optional[int] = None
    fixed_m: Optional[int] = None
    block: int = 1
    extra_rows: int = 0

    @property
    def implemented(self) -> bool:
        return self.build is not None

    def dims(self, n: Optional[int] = None) -> tuple:
        if self.fixed_n is not None:
            return self.fixed_n, self.fixed_m
        return n, None if n is None else n + self.extra_rows

    def dims_label(self) -> str:
        if self.fixed_n is not None:
            if self.fixed_n == self.fixed_m:
                return f"n=m={self.fixed_n}"
            return f"n={self.fixed_n}, m={self.fixed_m}"
        if self.extra_rows:
            return f"n free, m=n+{self.extra_rows}"
        return "n=m free" if self.block == 1 else f"n=m free, n%{self.block}==0"


# -- large scale -----------------------------------------------------------


def penalty1(n: int) -> NlsProblem:
    # F_i = sqrt(1e-5)(x_i - 1), i < n;  F_n = sum(x^2)/(4n) - 1/4
    a = np.sqrt(1e-5)

    def F(x):
        r = np.empty(n)
        r[:-1] = a * (x[:-1] - 1.0)
        r[-1] = (x @ x) / (4.0 * n) - 0.25
        return r

    def jv(x, v):
        r = np.empty(n)
        r[:-1] = a * v[:-1]
        r[-1] = (x @ v) / (2.0 * n)
        return r

    def jtv(x, u):
        r = x * (u[-1] / (2.0 * n))
        r[:-1] += a * u[:-1]
        return r

    return NlsProblem("P1", n, n, np.full(n, 1.0 / 3.0), F, jv, jtv)


def trigonometric(n: int) -> NlsProblem:
    i = np.arange(1, n + 1)

    def F(x):
        c = np.cos(x)
        return n - c.sum() + i * (1.0 - c) - np.sin(x)

    def jv(x, v):
        sx = np.sin(x)
        return (sx @ v) + (i * sx - np.cos(x)) * v

    def jtv(x, u):
        sx = np.sin(x)
        return sx * u.sum() + (i * sx - np.cos(x)) * u

    return NlsProblem("P2", n, n, np.full(n, 1.0 / n), F, jv, jtv)


def _tridiag_apply(diag, sub, sup, v):
    """(A v) for A with constant or vector sub/super diagonals."""
    r = diag * v
    r[1:] += sub * v[:-1]
    r[:-1] += sup * v[1:]
    return r


def discrete_boundary_value(n: int) -> NlsProblem:
    h = 1.0 / (n + 1)
    t = np.arange(1, n + 1) * h

    def F(x):
        r = 2.0 * x + 0.5 * h**2 * (x + t + 1.0) ** 3
        r[1:] -= x[:-1]
        r[:-1] -= x[1:]
        return r

    def diag(x):
        return 2.0 + 1.5 * h**2 * (x + t + 1.0) ** 2

    def jv(x, v):
        return _tridiag_apply(diag(x), -1.0, -1.0, v)

    def gn(x, s):
        Js = jv(x, s)
        return jv(x, Js)  # J is symmetric

    return NlsProblem("P3", n, n, t * (t - 1.0), F, jv, jv, gn)


def linear_full_rank(n: int) -> NlsProblem:
    # n rows x_i - c*sum(x) - 1 plus one row -c*sum(x) - 1, c = 2/(n+2);
    # optimum (n+2)^2 / (2(n^2+4)), i.e. 0.502 at n=1000
    c = 2.0 / (n + 2)
    m = n + 1

    def F(x):
        t = c * x.sum() + 1.0
        r = np.full(m, -t)
        r[:n] += x
        return r

    def jv(x, v):
        r = np.full(m, -c * v.sum())
        r[:n] += v
        return r

    def jtv(x, u):
        return u[:n] - c * u.sum()

    return NlsProblem("P4", n, m, np.ones(n), F, jv, jtv)


def strictly_convex1(n: int) -> NlsProblem:
    def F(x):
        return np.exp(x) - x

    def jv(x, v):
        return (np.exp(x) - 1.0) * v

    def gn(x, s):
        return (np.exp(x) - 1.0) ** 2 * s

    return NlsProblem("P8", n, n, np.arange(1, n + 1) / n, F, jv, jv, gn)


def strictly_convex2(n: int) -> NlsProblem:
    w = np.arange(1, n + 1) / 10.0

    def F(x):
        return w * (np.exp(x) - x)

    def jv(x, v):
        return w * (np.exp(x) - 1.0) * v

    def gn(x, s):
        return (w * (np.exp(x) - 1.0)) ** 2 * s

    return NlsProblem("P9", n, n, np.ones(n), F, jv, jv, gn)


def _prod_except_self(x):
    left = np.concatenate(([1.0], np.cumprod(x[:-1])))
    right = np.concatenate((np.cumprod(x[::-1][:-1])[::-1], [1.0]))
    return left * right


def brown_almost_linear(n: int) -> NlsProblem:
    def F(x):
        r = x + x.sum() - (n + 1.0)
        r[-1] = np.prod(x) - 1.0
        return r

    def jv(x, v):
        r = v + v.sum()
        r[-1] = _prod_except_self(x) @ v
        return r

    def jtv(x, u):
        r = u.copy()
        r[-1] = 0.0
        r += u[:-1].sum()
        return r + u[-1] * _prod_except_self(x)

    return NlsProblem("P10", n, n, np.full(n, 0.5), F, jv, jtv)


def _check_block(pid: str, n: int, block: int):
    if n % block:
        raise DimensionMismatch(f"{pid} needs n divisible by {block}, got {n}")


def _freudenstein_roth_pairs(a, b):
    f1 = -13.0 + a + ((5.0 - b) * b - 2.0) * b
    f2 = -29.0 + a + ((b + 1.0) * b - 14.0) * b
    return f1, f2, 10.0 * b - 3.0 * b**2 - 2.0, 3.0 * b**2 + 2.0 * b - 14.0


def _pairwise(pid: str, n: int, x0, pair_fn) -> NlsProblem:
    """Block-diagonal problem built from 2x2 blocks on (x_{2i-1}, x_{2i}).

    ``pair_fn(a, b)`` returns (F1, F2, J11, J12, J21, J22) for each pair.
    """
    _check_block(pid, n, 2)

    def F(x):
        f1, f2, *_ = pair_fn(x[0::2], x[1::2])
        r = np.empty(n)
        r[0::2], r[1::2] = f1, f2
        return r

    def jv(x, v):
        _, _, j11, j12, j21, j22 = pair_fn(x[0::2], x[1::2])
        va, vb = v[0::2], v[1::2]
        r = np.empty(n)
        r[0::2] = j11 * va + j12 * vb
        r[1::2] = j21 * va + j22 * vb
        return r

    def jtv(x, u):
        _, _, j11, j12, j21, j22 = pair_fn(x[0::2], x[1::2])
        ua, ub = u[0::2], u[1::2]
        r = np.empty(n)
        r[0::2] = j11 * ua + j21 * ub
        r[1::2] = j12 * ua + j22 * ub
        return r

    def gn(x, s):
        return jtv(x, jv(x, s))

    return NlsProblem(pid, n, n, x0, F, jv, jtv, gn)


def extended_freudenstein_roth(n: int) -> NlsProblem:
    def pair(a, b):
        f1, f2, d1, d2 = _freudenstein_roth_pairs(a, b)
        one = np.ones_like(a)
        return f1, f2, one, d1, one, d2

    return _pairwise("P14", n, np.tile([6.0, 3.0], n // 2), pair)


def extended_powell_singular(n: int) -> NlsProblem:
    _check_block("P15", n, 4)
    r5, r10 = np.sqrt(5.0), np.sqrt(10.0)

    def parts(x):
        return x[0::4], x[1::4], x[2::4], x[3::4]

    def F(x):
        a, b, c, d = parts(x)
        r = np.empty(n)
        r[0::4] = a + 10.0 * b
        r[1::4] = r5 * (c - d)
        r[2::4] = (b - 2.0 * c) ** 2
        r[3::4] = r10 * (a - d) ** 2
        return r

    def jv(x, v):
        a, b, c, d = parts(x)
        va, vb, vc, vd = parts(v)
        p, q = 2.0 * (b - 2.0 * c), 2.0 * r10 * (a - d)
        r = np.empty(n)
        r[0::4] = va + 10.0 * vb
        r[1::4] = r5 * (vc - vd)
        r[2::4] = p * (vb - 2.0 * vc)
        r[3::4] = q * (va - vd)
        return r

    def jtv(x, u):
        a, b, c, d = parts(x)
        u1, u2, u3, u4 = parts(u)
        p, q = 2.0 * (b - 2.0 * c), 2.0 * r10 * (a - d)
        r = np.empty(n)
        r[0::4] = u1 + q * u4
        r[1::4] = 10.0 * u1 + p * u3
        r[2::4] = r5 * u2 - 2.0 * p * u3
        r[3::4] = -r5 * u2 - q * u4
        return r

    return NlsProblem("P15", n, n, np.full(n, 1.5e-4), F, jv, jtv, lambda x, s: jtv(x, jv(x, s)))


def broyden_tridiagonal(n: int) -> NlsProblem:
    def F(x):
        r = (3.0 - 2.0 * x) * x + 1.0
        r[1:] -= x[:-1]
        r[:-1] -= 2.0 * x[1:]
        return r

    def jv(x, v):
        return _tridiag_apply(3.0 - 4.0 * x, -1.0, -2.0, v)

    def jtv(x, u):
        return _tridiag_apply(3.0 - 4.0 * x, -2.0, -1.0, u)

    return NlsProblem("P17", n, n, np.full(n, -1.0), F, jv, jtv)


def extended_rosenbrock(n: int, pid: str = "P19") -> NlsProblem:
    def pair(a, b):
        one = np.ones_like(a)
        return 10.0 * (b - a**2), 1.0 - a, -20.0 * a, 10.0 * one, -one, 0.0 * one

    return _pairwise(pid, n, np.tile([-1.0, 1.0], n // 2), pair)


def extended_himmelblau(n: int) -> NlsProblem:
    def pair(a, b):
        one = np.ones_like(a)
        return a**2 + b - 11.0, a + b**2 - 7.0, 2.0 * a, one, one, 2.0 * b

    return _pairwise("P20", n, np.tile([1.0, 1.0 / n], n // 2), pair)


# -- optional large scale --------------------------------------------------


def exponential1(n: int) -> NlsProblem:
    w = np.arange(1, n + 1, dtype=float)

    def F(x):
        r = w * (np.exp(x - 1.0) - x)
        r[0] = np.exp(x[0] - 1.0) - 1.0
        return r

    def diag(x):
        dg = w * (np.exp(x - 1.0) - 1.0)
        dg[0] = np.exp(x[0] - 1.0)
        return dg

    def jv(x, v):
        return diag(x) * v

    return NlsProblem("P11", n, n, np.full(n, n / (n - 1.0)), F, jv, jv, lambda x, s: diag(x) ** 2 * s)


def singular(n: int) -> NlsProblem:
    i = np.arange(1, n + 1, dtype=float)

    def F(x):
        r = -0.5 * x**2 + i / 3.0 * x**3
        r[0] = x[0] ** 3 / 3.0
        r[:-1] += 0.5 * x[1:] ** 2
        return r

    def diag(x):
        dg = -x + i * x**2
        dg[0] = x[0] ** 2
        return dg

    def jv(x, v):
        return _tridiag_apply(diag(x), 0.0, x[1:], v)

    def jtv(x, u):
        return _tridiag_apply(diag(x), x[1:], 0.0, u)

    return NlsProblem("P12", n, n, np.ones(n), F, jv, jtv)


def logarithmic(n: int) -> NlsProblem:
    def F(x):
        return np.log(x + 1.0) - x / n

    def jv(x, v):
        return (1.0 / (x + 1.0) - 1.0 / n) * v

    return NlsProblem("P13", n, n, np.ones(n), F, jv, jv)


# -- small scale -----------------------------------------------------------

_BARD_Y = np.array(
    [0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39, 0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39]
)


def bard(n: int = 3) -> NlsProblem:
    u = np.arange(1.0, 16.0)
    v = 16.0 - u
    w = np.minimum(u, v)

    def F(x):
        return _BARD_Y - (x[0] + u / (v * x[1] + w * x[2]))

    def jac(x):
        den2 = (v * x[1] + w * x[2]) ** 2
        return np.column_stack([-np.ones(15), u * v / den2, u * w / den2])

    return from_dense_jacobian("P23", [-1000.0, -1000.0, -1000.0], 15, F, jac)


def brown_badly_scaled(n: int = 2) -> NlsProblem:
    def F(x):
        return np.array([x[0] - 1e6, x[1] - 2e-6, x[0] * x[1] - 2.0])

    def jac(x):
        return np.array([[1.0, 0.0], [0.0, 1.0], [x[1], x[0]]])

    return from_dense_jacobian("P24", [1.0, 1.0], 3, F, jac)


def jennrich_sampson(n: int = 2) -> NlsProblem:
    i = np.arange(1.0, 11.0)

    def F(x):
        return 2.0 + 2.0 * i - (np.exp(i * x[0]) + np.exp(i * x[1]))

    def jac(x):
        return np.column_stack([-i * np.exp(i * x[0]), -i * np.exp(i * x[1])])

    return from_dense_jacobian("P25", [0.2, 0.2], 10, F, jac)


def box3d(n: int = 3) -> NlsProblem:
    t = 0.1 * np.arange(1.0, 11.0)
    c = np.exp(-t) - np.exp(-10.0 * t)

    def F(x):
        return np.exp(-t * x[0]) - np.exp(-t * x[1]) - x[2] * c

    def jac(x):
        return np.column_stack([-t * np.exp(-t * x[0]), t * np.exp(-t * x[1]), -c])

    return from_dense_jacobian("P26", [0.0, 10.0, 20.0], 10, F, jac)


def rosenbrock(n: int = 2) -> NlsProblem:
    return extended_rosenbrock(2, pid="P28")


def freudenstein_roth(n: int = 2) -> NlsProblem:
    def F(x):
        f1, f2, _, _ = _freudenstein_roth_pairs(x[0], x[1])
        return np.array([f1, f2])

    def jac(x):
        _, _, d1, d2 = _freudenstein_roth_pairs(x[0], x[1])
        return np.array([[1.0, d1], [1.0, d2]])

    return from_dense_jacobian("P30", [0.5, -2.0], 2, F, jac)


def _spec(pid, name, scale, start, build=None, status=None, **kw) -> ProblemSpec:
    if status is None:
        status = "required" if build is not None else "optional-unimplemented"
    return ProblemSpec(pid, name, scale, status, start, build, **kw)


CATALOG = {
    s.id: s
    for s in [
        _spec("P1", "Penalty function I", "large", "(1/3,...,1/3)", penalty1),
        _spec("P2", "Trigonometric function", "large", "(1/n,...,1/n)", trigonometric),
        _spec("P3", "Discrete boundary value", "large", "t_i(t_i - 1), t_i = i/(n+1)", discrete_boundary_value),
        _spec("P4", "Linear function full rank", "large", "(1,...,1)", linear_full_rank, extra_rows=1),
        _spec("P5", "Problem 202 (Luksan)", "large", "(2,...,2)"),
        _spec("P6", "Problem 206 (Luksan)", "large", "(1/n,...,1/n)"),
        _spec("P7", "Problem 212 (Luksan)", "large", "(0.5,...,0.5)"),
        _spec("P8", "Strictly convex function I", "large", "(1/n,2/n,...,1)", strictly_convex1),
        _spec("P9", "Strictly convex function II", "large", "(1,...,1)", strictly_convex2),
        _spec("P10", "Brown almost linear", "large", "(0.5,...,0.5)", brown_almost_linear),
        _spec("P11", "Exponential function I", "large", "(n/(n-1),...)", exponential1, status="optional"),
        _spec("P12", "Singular function", "large", "(1,...,1)", singular, status="optional"),
        _spec("P13", "Logarithmic function", "large", "(1,...,1)", logarithmic, status="optional"),
        _spec("P14", "Extended Freudenstein and Roth", "large", "(6,3,...,6,3)", extended_freudenstein_roth, block=2),
        _spec("P15", "Extended Powell singular", "large", "(1.5e-4,...)", extended_powell_singular, block=4),
        _spec("P16", "Function 21", "large", "(-1,...,-1)"),
        _spec("P17", "Broyden tridiagonal", "large", "(-1,...,-1)", broyden_tridiagonal),
        _spec("P18", "Generalized Broyden tridiagonal", "large", "(-1,...,-1)"),
        _spec("P19", "Extended Rosenbrock", "large", "(-1,1,...,-1,1)", extended_rosenbrock, block=2),
        _spec("P20", "Extended Himmelblau", "large", "(1,1/n,...,1,1/n)", extended_himmelblau, block=2),
        _spec("P21", "Function 27", "large", "(100,1/n^2,...,1/n^2)"),
        _spec("P22", "Trigonometric logarithmic function", "large", "(1,...,1)"),
        _spec("P23", "Bard", "small", "(-1000,-1000,-1000)", bard, fixed_n=3, fixed_m=15),
        _spec("P24", "Brown badly scaled", "small", "(1,1)", brown_badly_scaled, fixed_n=2, fixed_m=3),
        _spec("P25", "Jennrich and Sampson", "small", "(0.2,0.2)", jennrich_sampson, fixed_n=2, fixed_m=10),
        _spec("P26", "Box 3D", "small", "(0,10,20)", box3d, fixed_n=3, fixed_m=10),
        _spec("P27", "Rank deficient Jacobian", "small", "(-1,1)", fixed_n=2, fixed_m=3),
        _spec("P28", "Rosenbrock", "small", "(-1,1)", rosenbrock, fixed_n=2, fixed_m=2),
        _spec("P29", "Parameterized problem", "small", "(10,10)", fixed_n=2, fixed_m=3),
        _spec("P30", "Freudenstein and Roth", "small", "(0.5,-2)", freudenstein_roth, fixed_n=2, fixed_m=2),
    ]
}


def list_problems() -> list:
    return sorted(CATALOG.values(), key=lambda s: int(s.id[1:]))


def required_ids() -> list:
    return [s.id for s in list_problems() if s.status == "required"]


def problem_id(pid) -> str:
    pid = str(pid).upper()
    return pid if pid.startswith("P") else f"P{pid}"


def instantiate(pid, n: Optional[int] = None, allow_optional: bool = True) -> NlsProblem:
    """Build problem ``pid`` (e.g. "P19") at dimension ``n``.

    Small-scale problems ignore ``n`` unless it contradicts their fixed
    dimension.  Large-scale problems default to n = 1000.
    """
    key = problem_id(pid)
    if key not in CATALOG:
        raise UnknownProblem(key)
    spec = CATALOG[key]
    if not spec.implemented:
        raise NotImplementedError(f"{key} ({spec.name}) has no implementation in this catalog")
    if spec.status == "optional" and not allow_optional:
        raise UnknownProblem(f"{key} is optional and optional problems are disabled")
    if spec.fixed_n is not None:
        if n is not None and n != spec.fixed_n:
            raise DimensionMismatch(f"{key} has fixed n={spec.fixed_n}, got {n}")
        return spec.build(spec.fixed_n)
    n = 1000 if n is None else int(n)
    if n < 2:
        raise DimensionMismatch(f"{key} needs n >= 2, got {n}")
    _check_block(key, n, spec.block)
    return spec.build(n)
