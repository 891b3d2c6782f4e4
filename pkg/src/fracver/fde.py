"""Scalar initial-value problems D y = g(t, y), y(0) = y0.

The Caputo problem and the CF/AB "pseudo-solutions" are all solved in
Volterra form

    y(t) = y0 + c0 g(t, y(t)) + c1 int_0^t k(t - tau) g(tau, y(tau)) dtau

by implicit product-trapezoid stepping with a Picard inner iteration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .convquad import pi_rectangle_weights, product_trapezoid_moments
from .errors import (
    ConstraintViolationError,
    ConvergenceError,
    DegeneracyError,
    DomainError,
)
from .grid import Grid, SampledFunction, T0_VALUE
from .kernels import KernelSpec, PowerLaw, rate
from .operators import OperatorKind, abc_derivative, caputo_derivative, cf_derivative, generic_dphi
from .specfun import mittag_leffler

__all__ = [
    "FDEProblem",
    "ResidualReport",
    "solve_caputo",
    "solve_pseudo",
    "residual_check",
    "reduce_cf_to_integer",
    "reduce_abc_to_caputo",
]

RHS = Callable[[float, float], float]

PICARD_TOL = 1e-12
PICARD_MAX = 50
CONSTRAINT_TOL = 1e-12
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class FDEProblem:
    kind: OperatorKind
    alpha: float
    g: RHS
    y0: float
    grid: Grid
    kernel: KernelSpec | None = None
    g_t: RHS | None = None
    g_y: RHS | None = None
    M: float = 1.0
    B: float = 1.0

    def __post_init__(self):
        allowed = (OperatorKind.CaputoDerivative, OperatorKind.CFDerivative,
                   OperatorKind.ABCDerivative, OperatorKind.GenericDPhi)
        if self.kind not in allowed:
            raise DomainError(f"{self.kind} is not a derivative operator")
        if self.kind is OperatorKind.GenericDPhi and self.kernel is None:
            raise DomainError("a generic problem needs a kernel")
        if self.kind is not OperatorKind.GenericDPhi and not (0.0 < self.alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")

    def rhs(self, t: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.array([self.g(float(a), float(b)) for a, b in zip(t, y)])


@dataclass(frozen=True)
class ResidualReport:
    residual: SampledFunction
    predicted_defect: SampledFunction
    max_mismatch: float

    def to_json(self) -> str:
        return json.dumps({
            "t": self.residual.t.tolist(),
            "residual": self.residual.values.tolist(),
            "predicted_defect": self.predicted_defect.values.tolist(),
            "max_mismatch": self.max_mismatch,
        })


def _picard(step: Callable[[float], float], guess: float, n: int) -> float:
    y = guess
    for _ in range(PICARD_MAX):
        y_new = step(y)
        if not np.isfinite(y_new):
            raise ConvergenceError(f"fixed-point iterate is not finite at step {n}")
        gap = abs(y_new - y)
        y = y_new
        if gap <= PICARD_TOL * max(1.0, abs(y)):
            return y
    raise ConvergenceError(f"fixed-point iteration stalled at step {n}, iterate gap {gap:.3e}")


def _volterra(p: FDEProblem, c0: float, c1: float, k: KernelSpec) -> SampledFunction:
    grid = p.grid
    N, h = grid.N, grid.h
    t = grid.nodes
    A, B = product_trapezoid_moments(k, h, N)
    y = np.empty(N + 1)
    g = np.empty(N + 1)

    y[0] = p.y0 if c0 == 0.0 else _picard(lambda v: p.y0 + c0 * p.g(0.0, v), p.y0, 0)
    g[0] = p.g(0.0, y[0])
    for n in range(1, N + 1):
        # cells j < n: left end g_j weight A_{n-j}, right end g_{j+1} weight B_{n-j}
        hist = np.dot(A[n:0:-1], g[:n]) + np.dot(B[n:1:-1], g[1:n])
        tn = t[n]
        a = c0 + c1 * B[1]
        base = p.y0 + c1 * hist
        y[n] = _picard(lambda v: base + a * p.g(tn, v), y[n - 1], n)
        g[n] = p.g(tn, y[n])
    return SampledFunction(grid, y, t0=T0_VALUE)


def solve_caputo(p: FDEProblem) -> SampledFunction:
    """y = y0 + J^alpha g(., y)."""
    if p.kind is not OperatorKind.CaputoDerivative:
        raise DomainError("solve_caputo needs a Caputo problem")
    return _volterra(p, 0.0, 1.0, PowerLaw(p.alpha))


def solve_pseudo(p: FDEProblem) -> SampledFunction:
    """y = y0 + I g(., y) with the CF or AB integral I.

    The value at t = 0 is y0 + ((1-alpha)/M) g(0, y(0)), which differs from
    y0 unless g(0, y0) = 0.
    """
    a = p.alpha
    if p.kind is OperatorKind.CFDerivative:
        return _volterra(p, (1.0 - a) / p.M, a / p.M, PowerLaw(1.0))
    if p.kind is OperatorKind.ABCDerivative:
        return _volterra(p, (1.0 - a) / p.B, a / p.B, PowerLaw(a))
    raise DomainError("solve_pseudo needs a CF or ABC problem")


def residual_check(p: FDEProblem, y: SampledFunction) -> ResidualReport:
    """Operator applied to y minus g(t, y), against the closed-form defect.

    The defect uses g(0, y(0)) with y(0) the first stored sample.
    """
    grid = p.grid
    if y.grid != grid:
        raise DomainError("solution lives on a different grid")
    t = grid.nodes
    K = OperatorKind
    if p.kind is K.CaputoDerivative:
        Dy = caputo_derivative(p.alpha, y, grid)
    elif p.kind is K.CFDerivative:
        Dy = cf_derivative(p.alpha, y, grid, p.M)
    elif p.kind is K.ABCDerivative:
        Dy = abc_derivative(p.alpha, y, grid, p.B)
    else:
        Dy = generic_dphi(p.kernel, y, grid)

    res = Dy.values - p.rhs(t, y.values)
    g0 = p.g(0.0, float(y.values[0]))
    W = rate(p.alpha) if p.kind in (K.CFDerivative, K.ABCDerivative) else 0.0
    if p.kind is K.CFDerivative:
        pred = -np.exp(-W * t) * g0
    elif p.kind is K.ABCDerivative:
        pred = -mittag_leffler(p.alpha, 1.0, -W * t**p.alpha) * g0
    else:
        pred = np.zeros_like(t)

    mismatch = float(np.max(np.abs(res[1:] - pred[1:])))
    return ResidualReport(SampledFunction(grid, res), SampledFunction(grid, pred), mismatch)


def _check_constraint(p: FDEProblem):
    g0 = p.g(0.0, p.y0)
    if abs(g0) > CONSTRAINT_TOL:
        raise ConstraintViolationError(
            f"the reduction requires g(0, y0) = 0, got {g0:.3e}"
        )


def reduce_cf_to_integer(p: FDEProblem) -> SampledFunction:
    """Solve y' (1 - c g_y) = c g_t + (alpha/M) g, c = (1-alpha)/M, by classical RK4."""
    if p.kind is not OperatorKind.CFDerivative:
        raise DomainError("reduce_cf_to_integer needs a CF problem")
    if p.g_t is None or p.g_y is None:
        raise DomainError("the reduction needs the partial derivatives g_t and g_y")
    _check_constraint(p)
    c = (1.0 - p.alpha) / p.M
    d = p.alpha / p.M

    def F(t, y):
        den = 1.0 - c * p.g_y(t, y)
        if abs(den) < DEGENERACY_TOL:
            raise DegeneracyError(f"1 - c g_y vanishes at t={t:.6g}, y={y:.6g}")
        return (c * p.g_t(t, y) + d * p.g(t, y)) / den

    grid = p.grid
    h = grid.h
    t = grid.nodes
    y = np.empty(grid.N + 1)
    y[0] = p.y0
    for n in range(grid.N):
        tn, yn = t[n], y[n]
        k1 = F(tn, yn)
        k2 = F(tn + h / 2, yn + h / 2 * k1)
        k3 = F(tn + h / 2, yn + h / 2 * k2)
        k4 = F(tn + h, yn + h * k3)
        y[n + 1] = yn + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return SampledFunction(grid, y, t0=T0_VALUE)


def reduce_abc_to_caputo(p: FDEProblem) -> SampledFunction:
    """Solve D_C u = (alpha/B) g(t, y) with u = y - ((1-alpha)/B) g(t, y).

    u is stepped with the L1 scheme (product rectangle on cell slopes); y is
    recovered from u at each node by fixed-point iteration.  This route
    never forms J^alpha, so it is independent of :func:`solve_pseudo`.
    """
    if p.kind is not OperatorKind.ABCDerivative:
        raise DomainError("reduce_abc_to_caputo needs an ABC problem")
    _check_constraint(p)
    c = (1.0 - p.alpha) / p.B
    d = p.alpha / p.B
    grid = p.grid
    N, h = grid.N, grid.h
    t = grid.nodes
    w = pi_rectangle_weights(PowerLaw(1.0 - p.alpha), grid).lag

    y = np.empty(N + 1)
    u = np.empty(N + 1)
    slope = np.empty(N)
    y[0] = p.y0
    u[0] = p.y0 - c * p.g(0.0, p.y0)
    for n in range(1, N + 1):
        # L1: sum_{j<n} w_{n-j} slope_j = d g_n, only slope_{n-1} unknown
        hist = np.dot(w[n:1:-1], slope[: n - 1])
        tn = t[n]
        base = u[n - 1] - h / w[1] * hist
        step = h / w[1] * d
        y[n] = _picard(lambda v: base + step * p.g(tn, v) + c * p.g(tn, v), y[n - 1], n)
        u[n] = y[n] - c * p.g(tn, y[n])
        slope[n - 1] = (u[n] - u[n - 1]) / h
    return SampledFunction(grid, y, t0=T0_VALUE)
