"""Convolution kernels with closed-form first and second antiderivatives.

Every kernel exposes

* ``value(s)``: k(s),
* ``integral(s)``: K(s) = int_0^s k,
* ``integral2(s)``: K2(s) = int_0^s K,

vectorised over ``s >= 0``.  The product-integration weights in
:mod:`fracver.convquad` are differences of K and K2, so they are exact for
weakly singular kernels too.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError
from .grid import SampledFunction
from .specfun import gamma, mittag_leffler, prabhakar_ml

__all__ = [
    "KernelSpec",
    "PowerLaw",
    "CFExp",
    "ABML",
    "PrabhakarK",
    "Tabulated",
    "kernel_value",
    "rate",
    "ab_normalization",
]


def rate(alpha: float) -> float:
    """W = alpha / (1 - alpha), the decay rate of the CF and ABC kernels."""
    _check_order(alpha)
    return alpha / (1.0 - alpha)


def ab_normalization(alpha: float) -> float:
    """The alternative normalisation B(alpha) = 1 - alpha + alpha / Gamma(alpha)."""
    return 1.0 - alpha + alpha / gamma(alpha)


def _check_order(alpha, name="alpha"):
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {alpha}")


def _check_positive(x, name):
    if not (np.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be positive, got {x}")


def _as_array(s):
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("kernel argument must be non-negative")
    return s


def _out(s_in, y):
    return float(y) if np.ndim(s_in) == 0 else y


class KernelSpec:
    """Base class; subclasses are frozen dataclasses."""

    is_bounded: bool = True

    def value(self, s):
        raise NotImplementedError

    def integral(self, s):
        raise NotImplementedError

    def integral2(self, s):
        raise NotImplementedError

    def at_zero(self) -> float:
        """k(0); raises for unbounded kernels."""
        if not self.is_bounded:
            raise SingularityError(f"{self!r} is singular at 0")
        return float(self.value(0.0))


@dataclass(frozen=True)
class PowerLaw(KernelSpec):
    """scale * s**(mu-1) / Gamma(mu); the Riemann-Liouville kernel of order mu."""

    mu: float
    scale: float = 1.0

    def __post_init__(self):
        _check_positive(self.mu, "mu")

    @property
    def is_bounded(self) -> bool:
        return self.mu >= 1.0

    def value(self, s):
        s_in = s
        s = _as_array(s)
        if self.mu < 1.0 and np.any(s == 0):
            raise SingularityError(f"power-law kernel with mu={self.mu} is singular at 0")
        with np.errstate(divide="ignore"):
            y = self.scale * s ** (self.mu - 1.0) / gamma(self.mu)
        return _out(s_in, y)

    def integral(self, s):
        s_in = s
        s = _as_array(s)
        return _out(s_in, self.scale * s**self.mu / gamma(self.mu + 1.0))

    def integral2(self, s):
        s_in = s
        s = _as_array(s)
        return _out(s_in, self.scale * s ** (self.mu + 1.0) / gamma(self.mu + 2.0))


@dataclass(frozen=True)
class CFExp(KernelSpec):
    """(M / (1-alpha)) exp(-W s), W = alpha/(1-alpha)."""

    alpha: float
    M: float = 1.0

    def __post_init__(self):
        _check_order(self.alpha)
        _check_positive(self.M, "M")

    @property
    def W(self) -> float:
        return rate(self.alpha)

    def value(self, s):
        s_in = s
        s = _as_array(s)
        return _out(s_in, self.M / (1.0 - self.alpha) * np.exp(-self.W * s))

    def integral(self, s):
        s_in = s
        s = _as_array(s)
        return _out(s_in, -(self.M / self.alpha) * np.expm1(-self.W * s))

    def integral2(self, s):
        s_in = s
        s = _as_array(s)
        W = self.W
        return _out(s_in, (self.M / self.alpha) * (s + np.expm1(-W * s) / W))


@dataclass(frozen=True)
class ABML(KernelSpec):
    """(B / (1-alpha)) E_alpha(-W s**alpha), W = alpha/(1-alpha)."""

    alpha: float
    B: float = 1.0

    def __post_init__(self):
        _check_order(self.alpha)
        _check_positive(self.B, "B")

    @property
    def W(self) -> float:
        return rate(self.alpha)

    @property
    def _c(self) -> float:
        return self.B / (1.0 - self.alpha)

    def value(self, s):
        s_in = s
        s = _as_array(s)
        return _out(s_in, self._c * mittag_leffler(self.alpha, 1.0, -self.W * s**self.alpha))

    def integral(self, s):
        s_in = s
        s = _as_array(s)
        a = self.alpha
        return _out(s_in, self._c * s * mittag_leffler(a, 2.0, -self.W * s**a))

    def integral2(self, s):
        s_in = s
        s = _as_array(s)
        a = self.alpha
        return _out(s_in, self._c * s**2 * mittag_leffler(a, 3.0, -self.W * s**a))


@dataclass(frozen=True)
class PrabhakarK(KernelSpec):
    """scale * s**(beta-1) E^gamma_{alpha,beta}(lam s**alpha)."""

    alpha: float
    beta: float
    gamma_p: float
    lam: float
    scale: float = 1.0

    def __post_init__(self):
        _check_positive(self.alpha, "alpha")
        _check_positive(self.beta, "beta")

    @property
    def is_bounded(self) -> bool:
        return self.beta >= 1.0

    def _ml(self, beta, s):
        return prabhakar_ml(self.alpha, beta, self.gamma_p, self.lam * s**self.alpha)

    def value(self, s):
        s_in = s
        s = _as_array(s)
        if self.beta < 1.0 and np.any(s == 0):
            raise SingularityError(f"Prabhakar kernel with beta={self.beta} is singular at 0")
        with np.errstate(divide="ignore"):
            y = self.scale * s ** (self.beta - 1.0) * self._ml(self.beta, s)
        return _out(s_in, y)

    def integral(self, s):
        s_in = s
        s = _as_array(s)
        return _out(s_in, self.scale * s**self.beta * self._ml(self.beta + 1.0, s))

    def integral2(self, s):
        s_in = s
        s = _as_array(s)
        return _out(s_in, self.scale * s ** (self.beta + 1.0) * self._ml(self.beta + 2.0, s))


@dataclass(frozen=True, eq=False)
class Tabulated(KernelSpec):
    """Piecewise-linear kernel through the given samples.

    Antiderivatives are the exact integrals of the interpolant, so the
    product weights carry no quadrature error of their own.
    """

    samples: SampledFunction

    def __post_init__(self):
        v = self.samples.values
        t = self.samples.t
        h = self.samples.grid.h
        K = np.concatenate([[0.0], np.cumsum(0.5 * h * (v[1:] + v[:-1]))])
        # int over a cell of the linear interpolant's antiderivative
        K2 = np.concatenate([[0.0], np.cumsum(h * K[:-1] + h**2 * (v[:-1] / 3.0 + v[1:] / 6.0))])
        object.__setattr__(self, "_t", t)
        object.__setattr__(self, "_K", K)
        object.__setattr__(self, "_K2", K2)

    @property
    def T(self) -> float:
        return self.samples.grid.T

    def _locate(self, s):
        s = _as_array(s)
        if np.any(s > self.T * (1 + 1e-12)):
            raise DomainError(f"argument beyond tabulated range [0, {self.T}]")
        h = self.samples.grid.h
        j = np.clip(np.floor(s / h).astype(int), 0, self.samples.grid.N - 1)
        r = s - self._t[j]
        return s, j, r, h

    def value(self, s):
        s_in = s
        s, j, r, h = self._locate(s)
        v = self.samples.values
        return _out(s_in, v[j] + (v[j + 1] - v[j]) * r / h)

    def integral(self, s):
        s_in = s
        s, j, r, h = self._locate(s)
        v = self.samples.values
        slope = (v[j + 1] - v[j]) / h
        return _out(s_in, self._K[j] + v[j] * r + 0.5 * slope * r**2)

    def integral2(self, s):
        s_in = s
        s, j, r, h = self._locate(s)
        v = self.samples.values
        slope = (v[j + 1] - v[j]) / h
        return _out(s_in, self._K2[j] + self._K[j] * r + v[j] * r**2 / 2.0 + slope * r**3 / 6.0)


def kernel_value(k: KernelSpec, s: float) -> float:
    """Pointwise kernel value with argument checks.

    Raises :class:`SingularityError` at ``s = 0`` for unbounded kernels and
    :class:`DomainError` for ``s < 0`` or outside a tabulated range.
    """
    s = float(s)
    if s < 0:
        raise DomainError(f"kernel argument must be non-negative, got {s}")
    if s == 0 and not k.is_bounded:
        raise SingularityError(f"{k!r} is singular at 0")
    return float(k.value(s))
