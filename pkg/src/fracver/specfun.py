"""Gamma and Mittag-Leffler functions for real arguments.

The one-, two- and three-parameter Mittag-Leffler functions are evaluated by
a compensated power series near the origin.  On the negative axis, where the
alternating series loses every significant digit to cancellation, they are
computed as a Bromwich integral of their Laplace transform

    t**(beta-1) * E^gamma_{alpha,beta}(-lam t**alpha)  <->  s**(alpha*gamma-beta) / (s**alpha + lam)**gamma

along a parabolic contour (trapezoidal rule, exponentially convergent).  For
very negative arguments with ``alpha < 1`` the algebraic asymptotic expansion
is used instead.  Anything left over falls back to the series in extended
precision via mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "MLPolicy",
    "DEFAULT_POLICY",
    "gamma",
    "rgamma",
    "mittag_leffler",
    "prabhakar_ml",
]


@dataclass(frozen=True)
class MLPolicy:
    """Evaluation control for the Mittag-Leffler family.

    ``contour_nodes`` and ``cancellation_limit`` steer the negative-axis
    route: the series result is rejected whenever the sum of absolute terms
    exceeds ``cancellation_limit`` times ``max(1, |sum|)``.
    """

    series_radius: float = 10.0
    asymptotic_radius: float = 50.0
    series_tol: float = 1e-15
    max_terms: int = 4000
    asymptotic_terms: int = 30
    contour_nodes: int = 20
    cancellation_limit: float = 1e3
    extended_max_terms: int = 8000

    def __post_init__(self):
        if not self.series_radius < self.asymptotic_radius:
            raise DomainError("series_radius must be smaller than asymptotic_radius")
        if not self.series_tol > 0:
            raise DomainError("series_tol must be positive")
        if self.max_terms < 1 or self.asymptotic_terms < 1:
            raise DomainError("term counts must be at least 1")
        if self.contour_nodes < 4:
            raise DomainError("contour_nodes must be at least 4")


DEFAULT_POLICY = MLPolicy()


def gamma(x: float) -> float:
    """Euler Gamma function; raises :class:`PoleError` at 0, -1, -2, ..."""
    x = float(x)
    if x <= 0 and x.is_integer():
        raise PoleError(f"Gamma has a pole at {x:g}")
    return math.gamma(x)


def rgamma(x):
    """1/Gamma(x), zero at the poles. Vectorised."""
    return special.rgamma(x)


# {{{ series

def _log_coefficients(alpha: float, beta: float, gam: float, nterms: int):
    """log|c_k| and sign(c_k) for c_k = (gam)_k / (k! Gamma(alpha k + beta))."""
    k = np.arange(nterms, dtype=float)

    if gam == 1.0:
        logp = np.zeros(nterms)
        sgnp = np.ones(nterms)
    else:
        ratio = (gam + k[1:] - 1.0) / k[1:]
        with np.errstate(divide="ignore"):
            logp = np.concatenate([[0.0], np.cumsum(np.log(np.abs(ratio)))])
        sgnp = np.concatenate([[1.0], np.cumprod(np.sign(ratio))])

    x = alpha * k + beta
    pole = (x <= 0) & (x == np.floor(x))
    with np.errstate(invalid="ignore"):
        lg = special.gammaln(np.where(pole, 1.0, x))
        sg = special.gammasgn(np.where(pole, 1.0, x))

    logc = np.where(pole | (sgnp == 0), -np.inf, logp - lg)
    sgn = np.where(pole, 0.0, sgnp * sg)
    return logc, sgn


def _series(alpha, beta, gam, z, policy):
    """Compensated series; returns (sum, sum of |terms|).

    When ``policy.max_terms`` cannot reach ``policy.series_tol``, or a term
    overflows, the sum is NaN and the sum of magnitudes infinite, so the result is rerouted.
    """
    az = np.abs(z)
    zmax = float(az.max()) if az.size else 0.0
    nmax = policy.max_terms
    logc, sgn = _log_coefficients(alpha, beta, gam, nmax)
    k = np.arange(nmax, dtype=float)

    if zmax == 0.0:
        nterms = 1
    else:
        lt = logc + k * math.log(zmax)
        thresh = math.log(policy.series_tol) + max(0.0, float(np.max(lt)))
        above = np.nonzero(lt >= thresh)[0]
        nterms = int(above[-1]) + 1 if above.size else 1
        if nterms >= nmax or np.max(lt[:nterms]) > 700.0:
            # too slow or overflowing here; the caller reroutes these arguments
            return np.full_like(z, np.nan), np.full_like(z, np.inf)

    logc = logc[:nterms]
    sgn = sgn[:nterms]
    k = k[:nterms]

    with np.errstate(divide="ignore"):
        logz = np.log(az)
    zsign = np.sign(z)

    total = np.zeros_like(z)
    comp = np.zeros_like(z)
    abssum = np.zeros_like(z)
    for j in range(nterms):
        if sgn[j] == 0.0:
            continue
        if j == 0:
            term = np.full_like(z, sgn[0] * math.exp(logc[0]))
        else:
            with np.errstate(invalid="ignore"):
                term = sgn[j] * zsign**j * np.exp(logc[j] + j * logz)
            term = np.where(az == 0.0, 0.0, term)
        # Neumaier summation
        s = total + term
        comp += np.where(np.abs(total) >= np.abs(term), (total - s) + term, (term - s) + total)
        total = s
        abssum += np.abs(term)

    return total + comp, abssum


def _series_extended(alpha, beta, gam, z, policy) -> float:
    """Series in extended precision, sized from the largest term."""
    nmax = policy.extended_max_terms
    if z == 0.0:
        return float(special.rgamma(beta))

    logc, sgn = _log_coefficients(alpha, beta, gam, nmax)
    lt = logc + np.arange(nmax) * math.log(abs(z))
    top = float(np.max(lt))
    if z > 0 and np.all(sgn >= 0) and top > 709.0:
        # all terms positive: the sum exceeds its largest term
        raise ConvergenceError(f"Mittag-Leffler value overflows at z={z:g}")
    if lt[-1] > math.log(1e-20) + max(0.0, top):
        raise ConvergenceError(
            f"extended-precision Mittag-Leffler series needs more than {nmax} terms "
            f"(alpha={alpha}, beta={beta}, z={z:g})"
        )
    digits = max(0.0, top) / math.log(10.0)
    dps = int(digits) + 25

    with mpmath.workdps(dps):
        a, b, g, x = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(gam), mpmath.mpf(z)
        poch = mpmath.mpf(1)
        power = mpmath.mpf(1)
        total = mpmath.mpf(0)
        eps = mpmath.mpf(10) ** (-20)
        for k in range(nmax):
            if k > 0:
                poch *= (g + k - 1) / k
                power *= x
            term = poch * power * mpmath.rgamma(a * k + b)
            total += term
            if k > 0 and lt[k] < lt[k - 1] and abs(term) < eps * max(1, abs(total)):
                val = float(total)
                if not math.isfinite(val):
                    raise ConvergenceError(f"Mittag-Leffler value overflows at z={z:g}")
                return val

    raise ConvergenceError(
        f"extended-precision Mittag-Leffler series not converged within {nmax} terms "
        f"(alpha={alpha}, beta={beta}, z={z:g})"
    )

# }}}


# {{{ negative axis

def _contour(alpha, beta, gam, z, nodes):
    """Bromwich integral on the parabola s = mu (1 + i u)**2, for z < 0, alpha <= 1."""
    mu = math.pi * nodes / 12.0
    h = 3.0 / nodes
    u = h * np.arange(nodes + 1)
    s = mu * (1.0 + 1j * u) ** 2
    ds = 2j * mu * (1.0 + 1j * u)

    F = s ** (alpha * gam - beta) * (s**alpha - z[:, None]) ** (-gam)
    g = np.exp(s) * F * ds / (2j * math.pi)
    # the integrand is conjugate-symmetric in u
    return h * (g[:, 0].real + 2.0 * g[:, 1:].real.sum(axis=1))


def _asymptotic(alpha, beta, z, nterms):
    """-sum_{k>=1} z**-k / Gamma(beta - alpha k), truncated at the smallest term."""
    k = np.arange(1, nterms + 1, dtype=float)
    c = special.rgamma(beta - alpha * k)
    terms = -(z[:, None] ** (-k)) * c
    mag = np.abs(terms)
    # optimal truncation: stop where magnitudes start growing again
    growing = np.zeros_like(mag, dtype=bool)
    growing[:, 1:] = (mag[:, 1:] > mag[:, :-1]) & (mag[:, :-1] > 0)
    cut = np.cumsum(growing, axis=1) > 0
    return np.where(cut, 0.0, terms).sum(axis=1)

# }}}


def _evaluate(alpha, beta, gam, z, policy):
    alpha = float(alpha)
    beta = float(beta)
    gam = float(gam)
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    policy = DEFAULT_POLICY if policy is None else policy

    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if not np.all(np.isfinite(z)):
        raise DomainError("Mittag-Leffler argument must be finite")
    out = np.empty_like(z)

    if gam == 0.0:
        out[:] = special.rgamma(beta)
        return float(out[0]) if scalar else out

    if gam == 1.0 and alpha == 1.0 and beta in (1.0, 2.0):
        # closed forms: E_{1,1} = exp, E_{1,2}(z) = expm1(z)/z
        if beta == 1.0:
            out[:] = np.exp(z)
        else:
            with np.errstate(invalid="ignore", divide="ignore"):
                out[:] = np.where(z == 0.0, 1.0, np.expm1(z) / z)
        return float(out[0]) if scalar else out

    flat = z.ravel()
    res = out.ravel()
    az = np.abs(flat)

    near = az <= policy.series_radius
    far_neg = flat <= -policy.asymptotic_radius
    mid_pos = (flat > policy.series_radius)
    mid_neg = ~near & ~far_neg & ~mid_pos

    contour_ok = alpha <= 1.0
    redo = np.zeros(flat.shape, dtype=bool)

    for mask in (near, mid_pos):
        if np.any(mask):
            vals, abssum = _series(alpha, beta, gam, flat[mask], policy)
            res[mask] = vals
            bad = ~np.isfinite(vals) | (abssum > policy.cancellation_limit * np.maximum(1.0, np.abs(vals)))
            idx = np.nonzero(mask)[0]
            redo[idx[bad]] = True

    redo |= mid_neg
    if np.any(far_neg):
        if gam == 1.0 and alpha < 1.0:
            res[far_neg] = _asymptotic(alpha, beta, flat[far_neg], policy.asymptotic_terms)
        else:
            redo |= far_neg

    if np.any(redo):
        neg = redo & (flat < 0)
        if contour_ok and np.any(neg):
            res[neg] = _contour(alpha, beta, gam, flat[neg], policy.contour_nodes)
            redo &= ~neg
        for i in np.nonzero(redo)[0]:
            res[i] = _series_extended(alpha, beta, gam, float(flat[i]), policy)

    return float(out.ravel()[0]) if scalar else out


def mittag_leffler(alpha, beta, z, policy: MLPolicy | None = None):
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z).

    ``z`` may be a scalar or an array; the result has the same shape.
    E_{alpha,1} is the one-parameter function.

    Raises
    ------
    DomainError
        If ``alpha <= 0``.
    ConvergenceError
        If no route reaches ``policy.series_tol``.
    """
    return _evaluate(alpha, beta, 1.0, z, policy)


def prabhakar_ml(alpha, beta, gamma_p, z, policy: MLPolicy | None = None):
    """Three-parameter (Prabhakar) Mittag-Leffler function E^gamma_{alpha,beta}(z).

    The Pochhammer ratio Gamma(gamma+k)/Gamma(gamma)/k! is built recursively,
    so ``gamma_p = 0`` returns exactly 1/Gamma(beta) and non-positive integer
    ``gamma_p`` gives a polynomial.
    """
    return _evaluate(alpha, beta, gamma_p, z, policy)
