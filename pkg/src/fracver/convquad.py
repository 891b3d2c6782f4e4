"""Product-integration quadrature for convolutions on a uniform grid.

For a kernel k with antiderivatives K and K2 (see :mod:`fracver.kernels`),

* the rectangle weight of lag m is  w_m = int_{(m-1)h}^{mh} k = K(mh) - K((m-1)h),
* the trapezoid moments of lag m are
  A_m = int k(s) (s-a)/h ds  and  B_m = int k(s) (b-s)/h ds  over [a, b] = [(m-1)h, mh],
  the weights of the cell end at lag m and at lag m-1 respectively.

All weights depend on n - j only, so they are stored as one lag vector and
convolutions reduce to ``np.convolve``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import GridTooSmallError, MissingDerivativeError, DomainError
from .grid import Grid, SampledFunction, T0_LIMIT
from .kernels import KernelSpec

__all__ = [
    "ToeplitzWeights",
    "pi_rectangle_weights",
    "product_trapezoid_moments",
    "convolve_lags",
    "convolve_derivative",
    "convolve_value",
    "differentiate_samples",
    "cell_slopes",
]


@dataclass(frozen=True)
class ToeplitzWeights:
    """Lower-triangular Toeplitz table w[n][j] = lag[n - j] for j < n."""

    lag: np.ndarray  # lag[0] unused, lag[m] for m = 1..N
    h: float

    @property
    def N(self) -> int:
        return len(self.lag) - 1

    def __getitem__(self, idx):
        n, j = idx
        if not (0 <= j < n <= self.N):
            return 0.0
        return float(self.lag[n - j])

    def row(self, n: int) -> np.ndarray:
        """w[n][0..n-1]."""
        return self.lag[n:0:-1].copy()

    def dense(self) -> np.ndarray:
        """The full (N+1) x N table; meant for inspection and small N."""
        N = self.N
        n = np.arange(N + 1)[:, None]
        j = np.arange(N)[None, :]
        m = n - j
        return np.where(m >= 1, self.lag[np.clip(m, 0, N)], 0.0)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@functools.lru_cache(maxsize=64)
def _rectangle_lags(k: KernelSpec, h: float, N: int) -> np.ndarray:
    K = np.asarray(k.integral(np.arange(N + 1) * h), dtype=float)
    lag = np.empty(N + 1)
    lag[0] = 0.0
    lag[1:] = np.diff(K)
    return _freeze(lag)


@functools.lru_cache(maxsize=64)
def _trapezoid_lags(k: KernelSpec, h: float, N: int):
    s = np.arange(N + 1) * h
    K = np.asarray(k.integral(s), dtype=float)
    K2 = np.asarray(k.integral2(s), dtype=float)
    dK2 = np.diff(K2) / h
    A = np.zeros(N + 1)
    B = np.zeros(N + 1)
    A[1:] = K[1:] - dK2
    B[1:] = dK2 - K[:-1]
    return _freeze(A), _freeze(B)


def pi_rectangle_weights(k: KernelSpec, grid: Grid) -> ToeplitzWeights:
    """Exact cell integrals of the kernel, w[n][j] = int_{t_j}^{t_{j+1}} k(t_n - tau) dtau."""
    return ToeplitzWeights(_rectangle_lags(k, grid.h, grid.N), grid.h)


def product_trapezoid_moments(k: KernelSpec, h: float, N: int):
    """Moments (A, B) of lags 1..N, as arrays indexed by lag (entry 0 is 0).

    int_0^{Nh} k(s) g(s) ds ~= sum_m B_m g((m-1)h) + A_m g(mh)
    for g linear on each cell.
    """
    return _trapezoid_lags(k, float(h), int(N))


def convolve_lags(lag: np.ndarray, c: np.ndarray) -> np.ndarray:
    """out[n] = sum_{j<n} lag[n-j] c[j], n = 0..N, for per-cell data c (length N)."""
    N = len(lag) - 1
    out = np.zeros(N + 1)
    if N:
        out[1:] = np.convolve(lag[1:], c)[:N]
    return out


def cell_slopes(f: SampledFunction, slopes="difference") -> np.ndarray:
    """Per-cell derivative data for :func:`convolve_derivative`.

    ``"difference"``: (f_{j+1} - f_j)/h, the exact cell mean of f'.
    ``"derivative"``: mean of the stored derivative samples at the cell ends.
    An array of length N is passed through.
    """
    N = f.grid.N
    if isinstance(slopes, str):
        if slopes == "difference":
            return np.diff(f.values) / f.grid.h
        if slopes == "derivative":
            if f.deriv_values is None:
                raise MissingDerivativeError("samples carry no derivative values")
            d = f.deriv_values
            return 0.5 * (d[1:] + d[:-1])
        raise DomainError(f"unknown slope rule {slopes!r}")
    c = np.asarray(slopes, dtype=float)
    if c.shape != (N,):
        raise DomainError(f"expected {N} cell slopes, got shape {c.shape}")
    return c


def _check_grid(f: SampledFunction, grid: Grid | None) -> Grid:
    if grid is not None and grid != f.grid:
        raise DomainError("sampled function lives on a different grid")
    return f.grid


def convolve_derivative(k: KernelSpec, f: SampledFunction, grid: Grid | None = None,
                        slopes="difference") -> SampledFunction:
    """int_0^t k(t - tau) f'(tau) dtau at the nodes, with f' constant per cell.

    The value at t = 0 is stored as 0 and flagged as a limit.
    """
    grid = _check_grid(f, grid)
    c = cell_slopes(f, slopes)
    out = convolve_lags(_rectangle_lags(k, grid.h, grid.N), c)
    return SampledFunction(grid, out, t0=T0_LIMIT, notes=list(f.notes))


def convolve_value(k: KernelSpec, f: SampledFunction, grid: Grid | None = None,
                   rule: str = "trapezoid") -> SampledFunction:
    """int_0^t k(t - tau) f(tau) dtau at the nodes.

    ``rule="trapezoid"`` integrates the kernel exactly against the piecewise
    linear interpolant of f (second order for smooth f); ``"rectangle"``
    uses the right-end value on each cell (first order).
    """
    grid = _check_grid(f, grid)
    v = f.values
    N = grid.N
    if rule == "rectangle":
        out = convolve_lags(_rectangle_lags(k, grid.h, N), v[1:])
    elif rule == "trapezoid":
        A, B = _trapezoid_lags(k, grid.h, N)
        # cell j: left end f_j gets A_{n-j}, right end f_{j+1} gets B_{n-j}
        out = convolve_lags(A, v[:-1]) + convolve_lags(B, v[1:])
    else:
        raise DomainError(f"unknown rule {rule!r}")
    return SampledFunction(grid, out, t0=T0_LIMIT, notes=list(f.notes))


def differentiate_samples(f: SampledFunction) -> SampledFunction:
    """Attach second-order finite-difference derivatives (one-sided at the ends)."""
    if f.grid.N < 2:
        raise GridTooSmallError("differentiate_samples needs N >= 2")
    d = np.gradient(f.values, f.grid.h, edge_order=2)
    return SampledFunction(f.grid, f.values.copy(), d, t0=f.t0,
                           notes=list(f.notes) + ["derivative differentiated from samples, O(h^2)"])
