"""Time-fractional diffusion on (0, 1) with Dirichlet data.

    D_phi u - u_xx = f(x, t),  u(x, 0) = v0(x),  u(0, t) = g_left(t),  u(1, t) = g_right(t)

Space: second-order central differences.  Time, one tridiagonal solve per
level with the convolution history explicit:

* power-law kernels: the Volterra form u = v0 + J^alpha (u_xx + f), product
  trapezoid, as in :func:`fracver.fde.solve_caputo`;
* bounded kernels: the derivative-type convolution with u_t constant per
  cell (the weights of :func:`fracver.convquad.convolve_derivative`).

A bounded kernel forces D_phi u(x, 0+) = 0, so an absolutely continuous
solution must satisfy u_xx(x, 0) + f(x, 0) = 0.  When the data violate this
the default ``start="continuous"`` solves the problem with forcing
f - d0, d0 = Delta_h v0 + f(x, 0), which has a continuous solution, and
reports the residual against the true forcing at every level.  With
``start="jump"`` the plain scheme is run instead; it satisfies its own
discrete equations by jumping away from v0 in the first step.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import solve_banded

from .convquad import convolve_lags, pi_rectangle_weights, product_trapezoid_moments
from .errors import DomainError, UnsupportedKernelError
from .grid import Grid
from .kernels import KernelSpec, PowerLaw

__all__ = ["HeatProblem", "HeatResult", "solve_heat", "initial_slice_residual", "discrete_laplacian"]

COMPAT_TOL = 1e-8


def _zero(*args):
    return 0.0


@dataclass(frozen=True)
class HeatProblem:
    x_nodes: int
    grid: Grid
    kernel: KernelSpec
    v0: Callable[[np.ndarray], np.ndarray]
    forcing: Callable[[np.ndarray, float], np.ndarray] = _zero
    g_left: Callable[[float], float] = _zero
    g_right: Callable[[float], float] = _zero

    def __post_init__(self):
        if int(self.x_nodes) != self.x_nodes or self.x_nodes < 3:
            raise DomainError("need at least 3 interior points")

    @property
    def dx(self) -> float:
        return 1.0 / (self.x_nodes + 1)

    @property
    def x(self) -> np.ndarray:
        """All nodes including the two boundary points."""
        return np.arange(self.x_nodes + 2) * self.dx

    @property
    def compatible(self) -> bool:
        """Initial data meet the boundary data at t = 0."""
        v = np.asarray(self.v0(np.array([0.0, 1.0])), dtype=float)
        return bool(abs(v[0] - self.g_left(0.0)) <= COMPAT_TOL and abs(v[1] - self.g_right(0.0)) <= COMPAT_TOL)

    def f(self, t: float) -> np.ndarray:
        xi = self.x[1:-1]
        return np.broadcast_to(np.asarray(self.forcing(xi, t), dtype=float), xi.shape)


@dataclass
class HeatResult:
    x: np.ndarray
    t: np.ndarray
    u: np.ndarray                   # shape (len(x), len(t))
    initial_slice_residual: float
    per_level_residuals: np.ndarray  # max over interior x, levels 1..N
    annotations: list[str] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t"] + [f"x={xi:.6g}" for xi in self.x])
        for n, tn in enumerate(self.t):
            w.writerow([repr(float(tn))] + [repr(float(v)) for v in self.u[:, n]])
        return buf.getvalue()

    def summary_json(self) -> str:
        return json.dumps({
            "initial_slice_residual": self.initial_slice_residual,
            "per_level_residuals": [float(r) for r in self.per_level_residuals],
            "annotations": self.annotations,
        })


def discrete_laplacian(u: np.ndarray, dx: float) -> np.ndarray:
    """Second difference at interior nodes of a vector (or columns) including boundary values."""
    return (u[2:] - 2.0 * u[1:-1] + u[:-2]) / dx**2


def initial_slice_residual(p: HeatProblem) -> float:
    """max_x |Delta_h v0 + f(x, 0)|; zero is necessary for a continuous solution under a bounded kernel."""
    v = np.asarray(p.v0(p.x), dtype=float)
    return float(np.max(np.abs(discrete_laplacian(v, p.dx) + p.f(0.0))))


def _tridiagonal(X: int, dx: float) -> np.ndarray:
    """Banded storage of the interior second-difference matrix."""
    lap = np.zeros((3, X))
    lap[0, 1:] = 1.0 / dx**2
    lap[1, :] = -2.0 / dx**2
    lap[2, :-1] = 1.0 / dx**2
    return lap


def _boundary(u: np.ndarray, n: int, dx: float) -> np.ndarray:
    b = np.zeros(u.shape[0] - 2)
    b[0] += u[0, n] / dx**2
    b[-1] += u[-1, n] / dx**2
    return b


def _step_derivative(p: HeatProblem, u, a, lap, shift):
    """sum_{j<n} a_{n-j} (u_{j+1} - u_j) = Delta_h u_n + f_n + shift."""
    N = u.shape[1] - 1
    t = p.grid.nodes
    ab = -lap
    ab[1] += a[1]
    diffs = np.empty((N, u.shape[0] - 2))
    for n in range(1, N + 1):
        hist = a[n:1:-1] @ diffs[: n - 1] if n > 1 else 0.0
        rhs = a[1] * u[1:-1, n - 1] - hist + p.f(t[n]) + shift + _boundary(u, n, p.dx)
        u[1:-1, n] = solve_banded((1, 1), ab, rhs)
        diffs[n - 1] = u[1:-1, n] - u[1:-1, n - 1]


def _step_volterra(p: HeatProblem, u, A, B, lap):
    """u_n = v0 + sum_j (A, B moments) F_j with F = Delta_h u + f, implicit in F_n."""
    N = u.shape[1] - 1
    t = p.grid.nodes
    X = u.shape[0] - 2
    ab = -B[1] * lap
    ab[1] += 1.0
    F = np.empty((N + 1, X))
    F[0] = discrete_laplacian(u[:, 0], p.dx) + p.f(0.0)
    v0 = u[1:-1, 0].copy()
    for n in range(1, N + 1):
        hist = A[n:0:-1] @ F[:n] + (B[n:1:-1] @ F[1:n] if n > 1 else 0.0)
        fn = p.f(t[n])
        rhs = v0 + hist + B[1] * (fn + _boundary(u, n, p.dx))
        u[1:-1, n] = solve_banded((1, 1), ab, rhs)
        F[n] = discrete_laplacian(u[:, n], p.dx) + fn


def solve_heat(p: HeatProblem, start: str = "continuous") -> HeatResult:
    k = p.kernel
    if not (k.is_bounded or isinstance(k, PowerLaw)):
        raise UnsupportedKernelError("temporal kernel must be bounded or a power law")
    if start not in ("continuous", "jump"):
        raise DomainError(f"unknown start {start!r}")

    grid = p.grid
    N, h = grid.N, grid.h
    t = grid.nodes
    X, dx = p.x_nodes, p.dx
    x = p.x

    u = np.empty((X + 2, N + 1))
    u[:, 0] = np.asarray(p.v0(x), dtype=float)
    for n in range(1, N + 1):
        u[0, n] = p.g_left(t[n])
        u[-1, n] = p.g_right(t[n])

    notes = []
    isr = initial_slice_residual(p)
    d0 = discrete_laplacian(u[:, 0], dx) + p.f(0.0)
    shift = np.zeros(X)
    if k.is_bounded and isr > COMPAT_TOL:
        notes.append(
            f"bounded kernel with Delta_h v0 + f(x,0) != 0 (max {isr:.4g}): "
            "no absolutely continuous solution exists"
        )
        if start == "continuous":
            shift = -d0
    if not p.compatible:
        notes.append("initial data do not match the boundary data at t = 0")

    w = pi_rectangle_weights(k, grid).lag
    lap = _tridiagonal(X, dx)
    if k.is_bounded:
        _step_derivative(p, u, w / h, lap, shift)
    else:
        A, B = product_trapezoid_moments(PowerLaw(1.0 - k.mu, scale=1.0 / k.scale), h, N)
        _step_volterra(p, u, A, B, lap)
    slopes = np.diff(u[1:-1], axis=1).T / h

    if start == "jump" and k.is_bounded and isr > COMPAT_TOL:
        jump = float(np.max(np.abs(u[1:-1, 1] - u[1:-1, 0])))
        notes.append(f"first step jumps by {jump:.4g} away from the initial data")

    # residual against the true forcing, one convolution per spatial node
    Du = np.stack([convolve_lags(w, slopes[:, i]) for i in range(X)])
    res = np.empty((X, N))
    for n in range(1, N + 1):
        res[:, n - 1] = Du[:, n] - discrete_laplacian(u[:, n], dx) - p.f(t[n])
    per_level = np.max(np.abs(res), axis=0)

    return HeatResult(x, t, u, isr, per_level, notes)
