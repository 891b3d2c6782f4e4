"""Fractional integrals and Caputo-type derivatives on a uniform grid.

Derivative-type operators are convolutions of a kernel with f'; integral-type
operators are convolutions with f.  Both go through :mod:`fracver.convquad`.
Orders are restricted to (0, 1) for the derivatives, so the only Taylor term
that ever appears is f(0).

``slopes`` selects how f' is represented on each cell (see
:meth:`FunctionInput.cell_slopes`); ``rule`` selects the quadrature for
integral-type operators (``trapezoid`` or ``rectangle``).
"""

from __future__ import annotations

import enum

import numpy as np

from .convquad import convolve_derivative, convolve_value
from .errors import DomainError
from .functions import FunctionInput, as_input
from .grid import Grid, SampledFunction, T0_LIMIT, T0_UNBOUNDED, T0_VALUE
from .kernels import ABML, CFExp, KernelSpec, PowerLaw, PrabhakarK, rate
from .specfun import gamma, mittag_leffler

__all__ = [
    "OperatorKind",
    "rl_integral",
    "rl_derivative",
    "caputo_derivative",
    "cf_derivative",
    "abc_derivative",
    "cf_integral",
    "ab_integral",
    "generic_dphi",
    "prabhakar_integral",
    "prabhakar_derivative",
    "cf_derivative_byparts",
    "abc_derivative_byparts",
    "apply_operator",
]


class OperatorKind(enum.Enum):
    RLIntegral = "rl-integral"
    RLDerivative = "rl"
    CaputoDerivative = "caputo"
    CFDerivative = "cf"
    ABCDerivative = "abc"
    CFIntegral = "cf-integral"
    ABIntegral = "ab-integral"
    GenericDPhi = "dphi"
    PrabhakarIntegral = "prabhakar-integral"
    PrabhakarDerivative = "prabhakar"


def _open_order(alpha, name="alpha"):
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {alpha}")


def _derivative(k: KernelSpec, f, grid: Grid, slopes: str) -> SampledFunction:
    f = as_input(f)
    fs = f.sample_for_slopes(grid, slopes)
    return convolve_derivative(k, fs, grid, slopes=f.cell_slopes(grid, slopes))


def _integral(k: KernelSpec, f, grid: Grid, rule: str) -> SampledFunction:
    return convolve_value(k, as_input(f).sample(grid), grid, rule=rule)


def rl_integral(alpha: float, f, grid: Grid, rule: str = "trapezoid") -> SampledFunction:
    """Riemann-Liouville integral J^alpha f, 0 < alpha <= 1."""
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    return _integral(PowerLaw(alpha), f, grid, rule)


def caputo_derivative(alpha: float, f, grid: Grid, slopes: str = "difference") -> SampledFunction:
    """Caputo derivative, the convolution of f' with t**(-alpha)/Gamma(1-alpha)."""
    _open_order(alpha)
    return _derivative(PowerLaw(1.0 - alpha), f, grid, slopes)


def rl_derivative(alpha: float, f, grid: Grid, slopes: str = "difference") -> SampledFunction:
    """Riemann-Liouville derivative as Caputo plus f(0) t**(-alpha)/Gamma(1-alpha)."""
    out = caputo_derivative(alpha, f, grid, slopes)
    f0 = float(as_input(f).sample(grid).values[0])
    if f0 == 0.0:
        return out
    t = grid.nodes
    v = out.values.copy()
    v[1:] += f0 * t[1:] ** (-alpha) / gamma(1.0 - alpha)
    v[0] = np.copysign(np.inf, f0)
    return out.with_values(v, t0=T0_UNBOUNDED)


def cf_derivative(alpha: float, f, grid: Grid, M: float = 1.0, slopes: str = "difference") -> SampledFunction:
    """Caputo-type derivative with kernel (M/(1-alpha)) exp(-alpha t/(1-alpha))."""
    return _derivative(CFExp(alpha, M), f, grid, slopes)


def abc_derivative(alpha: float, f, grid: Grid, B: float = 1.0, slopes: str = "difference") -> SampledFunction:
    """Caputo-type derivative with kernel (B/(1-alpha)) E_alpha(-alpha t**alpha/(1-alpha))."""
    return _derivative(ABML(alpha, B), f, grid, slopes)


def _affine_integral(c0: float, c1: float, k: KernelSpec, f, grid: Grid, rule: str) -> SampledFunction:
    fs = as_input(f).sample(grid)
    conv = convolve_value(k, fs, grid, rule=rule)
    return conv.with_values(c0 * fs.values + c1 * conv.values, t0=T0_VALUE)


def cf_integral(alpha: float, f, grid: Grid, M: float = 1.0, rule: str = "trapezoid") -> SampledFunction:
    """((1-alpha)/M) f + (alpha/M) int_0^t f."""
    _open_order(alpha)
    return _affine_integral((1.0 - alpha) / M, alpha / M, PowerLaw(1.0), f, grid, rule)


def ab_integral(alpha: float, f, grid: Grid, B: float = 1.0, rule: str = "trapezoid") -> SampledFunction:
    """((1-alpha)/B) f + (alpha/B) J^alpha f."""
    _open_order(alpha)
    return _affine_integral((1.0 - alpha) / B, alpha / B, PowerLaw(alpha), f, grid, rule)


def generic_dphi(k: KernelSpec, f, grid: Grid, slopes: str = "difference") -> SampledFunction:
    """int_0^t k(t - tau) f'(tau) dtau for any kernel; normalisation lives in k."""
    return _derivative(k, f, grid, slopes)


def prabhakar_integral(alpha: float, beta: float, gamma_p: float, lam: float, f, grid: Grid,
                       rule: str = "trapezoid") -> SampledFunction:
    """Convolution with s**(beta-1) E^gamma_{alpha,beta}(lam s**alpha)."""
    return _integral(PrabhakarK(alpha, beta, gamma_p, lam), f, grid, rule)


def prabhakar_derivative(alpha: float, beta: float, gamma_p: float, lam: float, f, grid: Grid,
                         slopes: str = "difference") -> SampledFunction:
    """Caputo-type derivative with kernel s**(-beta) E^{-gamma}_{alpha,1-beta}(lam s**alpha)."""
    _open_order(beta, "beta")
    return _derivative(PrabhakarK(alpha, 1.0 - beta, -gamma_p, lam), f, grid, slopes)


def cf_derivative_byparts(alpha: float, f, grid: Grid, M: float = 1.0,
                          rule: str = "trapezoid") -> SampledFunction:
    """CF derivative from values of f only, after integrating by parts.

    (M/(1-alpha)) [f(t) - exp(-W t) f(0)] - W int_0^t k(t - tau) f(tau) dtau
    with k the CF kernel.
    """
    k = CFExp(alpha, M)
    fs = as_input(f).sample(grid)
    t = grid.nodes
    conv = convolve_value(k, fs, grid, rule=rule).values
    v = M / (1.0 - alpha) * (fs.values - np.exp(-k.W * t) * fs.values[0]) - k.W * conv
    return SampledFunction(grid, v, t0=T0_LIMIT)


def abc_derivative_byparts(alpha: float, f, grid: Grid, B: float = 1.0,
                           rule: str = "trapezoid") -> SampledFunction:
    """ABC derivative from values of f only, after integrating by parts.

    (B/(1-alpha)) [f(t) - E_alpha(-W t**alpha) f(0)
                   - W int_0^t (t-tau)**(alpha-1) E_{alpha,alpha}(-W (t-tau)**alpha) f(tau) dtau]
    """
    _open_order(alpha)
    W = rate(alpha)
    c = B / (1.0 - alpha)
    fs = as_input(f).sample(grid)
    t = grid.nodes
    conv = convolve_value(PrabhakarK(alpha, alpha, 1.0, -W), fs, grid, rule=rule).values
    decay = mittag_leffler(alpha, 1.0, -W * t**alpha)
    v = c * (fs.values - decay * fs.values[0] - W * conv)
    return SampledFunction(grid, v, t0=T0_LIMIT)


def apply_operator(kind: OperatorKind | str, f: FunctionInput, grid: Grid, alpha: float | None = None,
                   *, kernel: KernelSpec | None = None, M: float = 1.0, B: float = 1.0,
                   beta: float | None = None, gamma_p: float = 0.0, lam: float = 0.0,
                   slopes: str = "difference", rule: str = "trapezoid") -> SampledFunction:
    """Dispatch on :class:`OperatorKind` (or its string value)."""
    kind = OperatorKind(kind) if isinstance(kind, str) else kind
    K = OperatorKind
    if kind is K.GenericDPhi:
        if kernel is None:
            raise DomainError("generic derivative needs a kernel")
        return generic_dphi(kernel, f, grid, slopes)
    if kind in (K.PrabhakarIntegral, K.PrabhakarDerivative):
        if alpha is None or beta is None:
            raise DomainError("Prabhakar operators need alpha and beta")
        if kind is K.PrabhakarIntegral:
            return prabhakar_integral(alpha, beta, gamma_p, lam, f, grid, rule)
        return prabhakar_derivative(alpha, beta, gamma_p, lam, f, grid, slopes)
    if alpha is None:
        raise DomainError(f"{kind.value} needs alpha")
    table = {
        K.RLIntegral: lambda: rl_integral(alpha, f, grid, rule),
        K.RLDerivative: lambda: rl_derivative(alpha, f, grid, slopes),
        K.CaputoDerivative: lambda: caputo_derivative(alpha, f, grid, slopes),
        K.CFDerivative: lambda: cf_derivative(alpha, f, grid, M, slopes),
        K.ABCDerivative: lambda: abc_derivative(alpha, f, grid, B, slopes),
        K.CFIntegral: lambda: cf_integral(alpha, f, grid, M, rule),
        K.ABIntegral: lambda: ab_integral(alpha, f, grid, B, rule),
    }
    return table[kind]()
