"""Grünwald-Letnikov differences of fractional order."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .functions import as_input
from .grid import Grid, SampledFunction, T0_LIMIT, T0_UNBOUNDED

__all__ = ["GLWeights", "ExtensionKind", "gl_coefficients", "gl_derivative"]


class ExtensionKind(enum.Enum):
    """How f is continued to t < 0 by zero: as is, or after removing f(0)."""

    ZeroExtension = "zero"
    TaylorExtension = "taylor"


@dataclass(frozen=True)
class GLWeights:
    alpha: float
    omega: np.ndarray

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.omega)


def gl_coefficients(alpha: float, N: int) -> GLWeights:
    """omega_j = (-1)**j binom(alpha, j) by omega_j = omega_{j-1} (1 - (alpha+1)/j).

    ``alpha = 1`` is accepted and gives the backward difference (1, -1, 0, ...).
    """
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if N < 0:
        raise DomainError("N must be non-negative")
    omega = np.empty(N + 1)
    omega[0] = 1.0
    for j in range(1, N + 1):
        omega[j] = omega[j - 1] * (1.0 - (alpha + 1.0) / j)
    omega.setflags(write=False)
    return GLWeights(float(alpha), omega)


def gl_derivative(alpha: float, f, grid: Grid,
                  ext: ExtensionKind | str = ExtensionKind.TaylorExtension) -> SampledFunction:
    """h**-alpha sum_{j<=n} omega_j F(t_n - j h), F = f or f - f(0)."""
    ext = ExtensionKind(ext) if isinstance(ext, str) else ext
    fs = as_input(f).sample(grid)
    F = fs.values.copy()
    if ext is ExtensionKind.TaylorExtension:
        F -= F[0]
    w = gl_coefficients(alpha, grid.N).omega
    out = np.convolve(w, F)[: grid.N + 1] * grid.h ** (-alpha)
    if ext is ExtensionKind.ZeroExtension and F[0] != 0.0 and alpha < 1.0:
        out[0] = np.copysign(np.inf, F[0])
        t0 = T0_UNBOUNDED
    else:
        out[0] = 0.0
        t0 = T0_LIMIT
    return SampledFunction(grid, out, t0=t0)
