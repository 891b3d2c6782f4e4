"""Sonine-pair checks and Laplace-domain probes for convolution kernels."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np
from scipy import special

from .convquad import convolve_value, product_trapezoid_moments
from .errors import ConvergenceError, DomainError, NotApplicableError, UnsupportedKernelError
from .functions import as_input
from .grid import Grid
from .kernels import ABML, CFExp, KernelSpec, PowerLaw, Tabulated
from .operators import generic_dphi

__all__ = [
    "SonineClass",
    "SonineReport",
    "LaplaceProbe",
    "sonine_integral",
    "sonine_check",
    "laplace_transform_numeric",
    "laplace_probe",
    "final_value_check",
    "construct_jpsi_star",
    "jpsi_tilde",
    "theorem_identity_residual",
]

SONINE_TOL = 1e-6


class SonineClass(enum.Enum):
    SoninePair = "SoninePair"
    DefectiveAtZero = "DefectiveAtZero"


@dataclass(frozen=True)
class SonineReport:
    gaps: np.ndarray
    integrals: np.ndarray
    classification: SonineClass
    decay_exponent: float | None

    def to_json(self) -> str:
        return json.dumps({
            "gaps": [float(g) for g in self.gaps],
            "integrals": [float(v) for v in self.integrals],
            "classification": self.classification.value,
            "decay_exponent": self.decay_exponent,
        })


@dataclass(frozen=True)
class LaplaceProbe:
    s_values: np.ndarray
    phi_hat: np.ndarray
    psi_hat: np.ndarray


# {{{ sonine

def _half_integral(weight: KernelSpec, other: KernelSpec, delta: float, cells: int) -> float:
    """int_0^{delta/2} weight(u) other(delta - u) du, weight integrated exactly."""
    h = 0.5 * delta / cells
    A, B = product_trapezoid_moments(weight, h, cells)
    u = np.arange(cells + 1) * h
    g = np.asarray(other.value(delta - u), dtype=float)
    return float(np.dot(B[1:], g[:-1]) + np.dot(A[1:], g[1:]))


def sonine_integral(phi: KernelSpec, psi: KernelSpec, gap: float, cells: int = 1024) -> float:
    """int_0^gap phi(gap - u) psi(u) du.

    The interval is split at its midpoint so that each kernel is only ever
    evaluated away from its own singularity and is integrated exactly where
    it is singular.
    """
    if not gap > 0:
        raise DomainError(f"gap must be positive, got {gap}")
    val = _half_integral(psi, phi, gap, cells) + _half_integral(phi, psi, gap, cells)
    if not np.isfinite(val):
        raise ConvergenceError(f"Sonine quadrature produced {val} at gap {gap}")
    return val


def sonine_check(phi: KernelSpec, psi: KernelSpec, gaps, cells: int = 1024,
                 tol: float = SONINE_TOL) -> SonineReport:
    """Evaluate the Sonine convolution for each gap and classify the pair.

    Gaps are sorted into strictly decreasing order.  For a defective pair the
    decay exponent is the slope of log|integral| against log(gap).
    """
    if cells < 256:
        raise DomainError("use at least 256 cells per half interval")
    gaps = np.unique(np.asarray(gaps, dtype=float))[::-1]
    if gaps.size == 0 or gaps[-1] <= 0:
        raise DomainError("gaps must be positive")
    vals = np.array([sonine_integral(phi, psi, g, cells) for g in gaps])
    if np.all(np.abs(vals - 1.0) <= tol):
        return SonineReport(gaps, vals, SonineClass.SoninePair, None)
    expo = None
    if gaps.size >= 2 and np.all(vals != 0):
        expo = float(np.polyfit(np.log(gaps), np.log(np.abs(vals)), 1)[0])
    return SonineReport(gaps, vals, SonineClass.DefectiveAtZero, expo)

# }}}


# {{{ laplace

_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


def _gauss(fn, a: np.ndarray, b: np.ndarray) -> float:
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    x = mid + half * _GL_X[None, :]
    return float(np.sum(half * _GL_W[None, :] * fn(x)))


def laplace_transform_numeric(k: KernelSpec, s: float, T: float) -> float:
    """int_0^T exp(-s t) k(t) dt (k extended by zero beyond T)."""
    s = float(s)
    if not s > 0:
        raise DomainError(f"Laplace variable must be positive, got {s}")
    if not T > 0:
        raise DomainError(f"horizon must be positive, got {T}")

    if isinstance(k, CFExp):
        r = s + k.W
        return float(k.M / (1.0 - k.alpha) / r * -np.expm1(-r * T))
    if isinstance(k, PowerLaw):
        # int_0^T t^(mu-1) e^{-st} dt / Gamma(mu) = s^-mu P(mu, sT)
        return float(k.scale * s ** (-k.mu) * special.gammainc(k.mu, s * T))

    upper = min(T, 60.0 / s)
    if isinstance(k, Tabulated):
        nodes = k.samples.t
        edges = np.concatenate([nodes[nodes < upper], [upper]])
    else:
        # geometric grading towards 0 for kernels with an integrable singularity
        edges = np.concatenate([[0.0], upper * 2.0 ** -np.arange(200, -1, -1.0)])

    def integrand(x):
        return np.exp(-s * x) * np.asarray(k.value(x.ravel()), dtype=float).reshape(x.shape)

    a, b = edges[:-1], edges[1:]
    keep = b > a
    return _gauss(integrand, a[keep], b[keep])


def laplace_probe(k: KernelSpec, s_values, T: float = np.inf) -> LaplaceProbe:
    """phi_hat(s) and psi_hat(s) = 1/(s phi_hat(s)) at the given abscissae."""
    s_values = np.asarray(s_values, dtype=float)
    phi_hat = np.array([laplace_transform_numeric(k, s, T) for s in s_values])
    return LaplaceProbe(s_values, phi_hat, 1.0 / (s_values * phi_hat))


def final_value_check(k: KernelSpec, s: float = 1e4) -> float:
    """s phi_hat(s); tends to phi(0) as s grows for a bounded kernel."""
    if not k.is_bounded:
        raise NotApplicableError(f"{k!r} is unbounded at 0; the final-value limit does not apply")
    # beyond 60/s the exponential weight is below e^-60
    return float(s * laplace_transform_numeric(k, s, np.inf))

# }}}


# {{{ split of the inverse operator

def construct_jpsi_star(k: KernelSpec) -> tuple[float, KernelSpec]:
    """Return (1/phi(0), psi*) with J_psi u = u/phi(0) + psi* * u."""
    if isinstance(k, CFExp):
        return (1.0 - k.alpha) / k.M, PowerLaw(1.0, scale=k.alpha / k.M)
    if isinstance(k, ABML):
        return (1.0 - k.alpha) / k.B, PowerLaw(k.alpha, scale=k.alpha / k.B)
    raise UnsupportedKernelError(f"no closed-form split for {type(k).__name__}")


def jpsi_tilde(k: KernelSpec, f, grid: Grid, rule: str = "trapezoid"):
    """Apply u -> u/phi(0) + psi* * u on the grid."""
    c, psi_star = construct_jpsi_star(k)
    fs = as_input(f).sample(grid)
    conv = convolve_value(psi_star, fs, grid, rule=rule)
    return fs.with_values(c * fs.values + conv.values)


def _limit_at_zero(t1: float, v1: float, t2: float, v2: float) -> float:
    """Estimate v(0+) from two samples: 0 if they decay like C t**p with p > 0, else v1."""
    if v1 == 0.0 or v2 == 0.0 or np.sign(v1) != np.sign(v2):
        return 0.0
    p = np.log(v2 / v1) / np.log(t2 / t1)
    if p > 0:
        return 0.0
    return float(v1)


def theorem_identity_residual(k: KernelSpec, f, grid: Grid) -> tuple[float, float]:
    """Max over t > 0 of | D_phi[J~ f] - (f - phi(t)/phi(0) f(0) - phi(t) L) |.

    L is the limit of psi* * f at 0+, estimated from the first two nodes.
    Returns (residual, L).
    """
    fin = as_input(f)
    fs = fin.sample(grid)
    u = jpsi_tilde(k, fin, grid)
    lhs = generic_dphi(k, u, grid).values
    _, psi_star = construct_jpsi_star(k)
    conv = convolve_value(psi_star, fs, grid).values
    t = grid.nodes
    L = _limit_at_zero(t[1], conv[1], t[2], conv[2])
    phi = np.asarray(k.value(t), dtype=float)
    rhs = fs.values - phi / k.at_zero() * fs.values[0] - phi * L
    return float(np.max(np.abs(lhs[1:] - rhs[1:]))), L

# }}}
