"""Registry of runnable numerical verifications.

Each claim computes one scalar at a fixed resolution and compares it with a
fixed tolerance.  ``direction="max"`` claims pass when the value is at most
the tolerance (defects); ``direction="min"`` claims pass when it is at least
the threshold (persistent effects that refinement must not remove).
Claims that bundle several checks report the largest ratio of a measured
quantity to its own bound, so their tolerance is 1.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import operators as op
from .diagnostics import (
    final_value_check,
    laplace_probe,
    sonine_check,
    theorem_identity_residual,
)
from .errors import UnknownClaimError
from .fde import FDEProblem, reduce_abc_to_caputo, reduce_cf_to_integer, residual_check, solve_pseudo
from .functions import FunctionInput, cos, power
from .glcalc import ExtensionKind, gl_derivative
from .grid import Grid
from .heat1d import HeatProblem, solve_heat
from .kernels import ABML, CFExp, PowerLaw, PrabhakarK, rate
from .operators import OperatorKind
from .specfun import gamma, mittag_leffler

__all__ = ["Claim", "ClaimReport", "REGISTRY", "run_claim", "run_all", "summarize", "reports_to_json"]


@dataclass(frozen=True)
class Claim:
    id: str
    tag: str
    anchor: str
    metric: str
    tolerance: float
    direction: str  # "max" or "min"
    fn: Callable[[], float]


@dataclass(frozen=True)
class ClaimReport:
    id: str
    anchor: str
    metric: str
    value: float
    tolerance: float
    passed: bool
    runtime_ms: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


REGISTRY: dict[str, Claim] = {}


def _claim(id, tag, anchor, metric, tolerance, direction="max"):
    def deco(fn):
        REGISTRY[id] = Claim(id, tag, anchor, metric, tolerance, direction, fn)
        return fn
    return deco


def _cosine_oracle_cf(t, W):
    """int_0^t exp(-W (t - tau)) cos(tau) dtau."""
    return (W * np.cos(t) + np.sin(t) - W * np.exp(-W * t)) / (W**2 + 1.0)


# {{{ fundamental theorem and left/right inverses

@_claim("FT-Caputo", "fundamental", "Caputo derivative inverts J^alpha",
        "max_{0.1<=t<=1} |D_C[J^0.5 cos] - cos| at N=2048", 5e-3)
def _ft_caputo():
    g = Grid(1.0, 2048)
    t = g.nodes
    D = op.caputo_derivative(0.5, op.rl_integral(0.5, cos(), g), g)
    m = t >= 0.1 - 1e-12
    return float(np.max(np.abs(D.values - np.cos(t))[m]))


@_claim("P3.1-CF-left-inverse-defect", "inverse", "D_CF after I_CF leaves an exponential defect",
        "max_{t>0} |D_CF[I_CF cos] - cos + exp(-W t)|, alpha=0.4, M=1, N=2048", 1e-4)
def _p31():
    a = 0.4
    g = Grid(1.0, 2048)
    t = g.nodes
    d = op.cf_derivative(a, op.cf_integral(a, cos(), g), g).values
    return float(np.max(np.abs(d - np.cos(t) + np.exp(-rate(a) * t))[1:]))


@_claim("P3.2-ABC-left-inverse-defect", "inverse", "D_ABC after I_AB leaves a Mittag-Leffler defect",
        "max_{t>0} |D_ABC[I_AB cos] - cos + E_a(-W t^a)|, alpha=0.5, B=1, N=2048", 1e-3)
def _p32():
    a = 0.5
    g = Grid(1.0, 2048)
    t = g.nodes
    d = op.abc_derivative(a, op.ab_integral(a, cos(), g), g).values
    return float(np.max(np.abs(d - np.cos(t) + mittag_leffler(a, 1.0, -rate(a) * t**a))[1:]))


@_claim("RI-CF", "inverse", "right inverse: I_CF after D_CF",
        "max |I_CF[D_CF cos] - (cos - 1)|, alpha=0.5, N=2048", 1e-4)
def _ri_cf():
    g = Grid(1.0, 2048)
    r = op.cf_integral(0.5, op.cf_derivative(0.5, cos(), g), g).values
    return float(np.max(np.abs(r - (np.cos(g.nodes) - 1.0))))


@_claim("RI-AB", "inverse", "right inverse: I_AB after D_ABC",
        "max |I_AB[D_ABC cos] - (cos - 1)|, alpha=0.5, N=2048", 1e-4)
def _ri_ab():
    g = Grid(1.0, 2048)
    r = op.ab_integral(0.5, op.abc_derivative(0.5, cos(), g), g).values
    return float(np.max(np.abs(r - (np.cos(g.nodes) - 1.0))))

# }}}


# {{{ zero at the origin

def _value_at(fn, t_end, N=1024):
    g = Grid(t_end, N)
    return float(fn(g).values[-1])


@_claim("T3.3-zero-zero", "zero-at-origin",
        "bounded kernels vanish at 0+, the Caputo power counterexample does not",
        "max ratio to bound of: |D cos(1e-3)| / 1e-2 and D cos(5e-4)/D cos(1e-3) / 0.55 for CF and ABC (alpha=0.5), "
        "|D_C t^0.5 (1e-3) - Gamma(1.5)| / 1e-2", 1.0)
def _t33():
    ratios = []
    for fn in (lambda g: op.cf_derivative(0.5, cos(), g), lambda g: op.abc_derivative(0.5, cos(), g)):
        v1 = _value_at(fn, 1e-3)
        v2 = _value_at(fn, 5e-4)
        ratios += [abs(v1) / 1e-2, abs(v2 / v1) / 0.55]
    vc = _value_at(lambda g: op.caputo_derivative(0.5, power(0.5), g), 1e-3)
    ratios.append(abs(vc - gamma(1.5)) / 1e-2)
    return float(max(ratios))


@_claim("ABC-power-closed-form", "zero-at-origin", "ABC derivative of a power function",
        "max |D_ABC t^1.5 - (B/(1-a)) Gamma(2.5) t^1.5 E_{a,2.5}(-W t^a)|, alpha=0.5, N=2048", 1e-4)
def _abc_power():
    a, gam = 0.5, 1.5
    g = Grid(1.0, 2048)
    t = g.nodes
    d = op.abc_derivative(a, power(gam), g).values
    ex = gamma(gam + 1) / (1 - a) * t**gam * mittag_leffler(a, gam + 1, -rate(a) * t**a)
    return float(np.max(np.abs(d - ex)))

# }}}


# {{{ Sonine equations and Laplace diagnostics

@_claim("S2-Sonine-power-pair", "fundamental", "Sonine equation for the power-law pair",
        "max over gaps in [1e-3,1] and alpha in {0.3,0.5,0.8} of |int phi psi - 1|", 1e-6)
def _sonine_power():
    gaps = np.geomspace(1e-3, 1.0, 7)
    worst = 0.0
    for a in (0.3, 0.5, 0.8):
        r = sonine_check(PowerLaw(1 - a), PowerLaw(a), gaps)
        worst = max(worst, float(np.max(np.abs(r.integrals - 1.0))))
    return worst


@_claim("S2-Sonine-bounded-defect", "fundamental", "a bounded kernel has no Sonine partner",
        "|fitted decay exponent - alpha| for CF(0.5) against t^{-0.5}/Gamma(0.5), gaps 1e-6..1e-3 "
        "(inf unless the integrals decrease monotonically)", 0.1)
def _sonine_bounded():
    a = 0.5
    r = sonine_check(CFExp(a), PowerLaw(a), np.geomspace(1e-6, 1e-3, 7))
    if r.classification.value != "DefectiveAtZero" or np.any(np.diff(r.integrals) >= 0):
        return math.inf
    return abs(r.decay_exponent - a)


@_claim("S3.3-final-value", "laplace", "final-value limit s phi_hat(s) -> phi(0)",
        "max over CF(0.5), ABC(0.5) of |s phi_hat(s) - phi(0)| at s=1e8", 1e-3)
def _final_value():
    return float(max(abs(final_value_check(k, 1e8) - k.at_zero()) for k in (CFExp(0.5), ABML(0.5))))


@_claim("S3.3-psi-hat-limit", "laplace", "psi_hat(s) tends to 1/phi(0) != 0",
        "max successive ratio of |psi_hat(s) - 1/phi(0)| over s in {1e2,1e3,1e4}, CF(0.5) and ABC(0.5)", 0.99)
def _psi_hat():
    worst = 0.0
    for k in (CFExp(0.5), ABML(0.5)):
        d = np.abs(laplace_probe(k, [1e2, 1e3, 1e4]).psi_hat - 1.0 / k.at_zero())
        worst = max(worst, float(np.max(d[1:] / d[:-1])))
    return worst


@_claim("T3.4-identity", "laplace", "D_phi after the constructed inverse",
        "max over CF(0.4), ABC(0.5) of max_{t>0} |D_phi[J~ cos] - cos + (phi/phi(0)) cos(0) + phi L|, N=2048", 1e-3)
def _t34():
    g = Grid(1.0, 2048)
    return float(max(theorem_identity_residual(k, cos(), g)[0] for k in (CFExp(0.4), ABML(0.5))))

# }}}


# {{{ FDE defects and reductions

def _fde(kind, g, y0=0.0, N=2048, **kw):
    return FDEProblem(kind, 0.5, g, y0, Grid(1.0, N), **kw)


@_claim("FDE-defect-CF", "inverse", "CF pseudo-solution carries an exponential defect",
        "max ratio to bound of: max_{t>0} |res/pred - 1| / 1e-2 at N=2048 (g=1, y0=0), "
        "0.05 / max_{first 5 nodes} |res| for N in {256,1024,2048}", 1.0)
def _fde_cf():
    def g(t, y):
        return 1.0
    ratios = []
    for N in (256, 1024, 2048):
        p = _fde(OperatorKind.CFDerivative, g, N=N)
        r = residual_check(p, solve_pseudo(p))
        ratios.append(0.05 / np.max(np.abs(r.residual.values[1:6])))
        if N == 2048:
            rel = np.max(np.abs(r.residual.values[1:] / r.predicted_defect.values[1:] - 1.0))
            ratios.append(rel / 1e-2)
    return float(max(ratios))


@_claim("FDE-defect-ABC", "inverse", "ABC pseudo-solution carries a Mittag-Leffler defect",
        "max ratio to bound of: max_{t>0} |res/pred - 1| / 1e-2 at N=2048 (g=1, y0=0), "
        "0.05 / max_{first 5 nodes} |res| for N in {256,1024,2048}", 1.0)
def _fde_abc():
    def g(t, y):
        return 1.0
    ratios = []
    for N in (256, 1024, 2048):
        p = _fde(OperatorKind.ABCDerivative, g, N=N)
        r = residual_check(p, solve_pseudo(p))
        ratios.append(0.05 / np.max(np.abs(r.residual.values[1:6])))
        if N == 2048:
            rel = np.max(np.abs(r.residual.values[1:] / r.predicted_defect.values[1:] - 1.0))
            ratios.append(rel / 1e-2)
    return float(max(ratios))


def _sin_y(t, y):
    return math.sin(t) * y


def _sin_y_t(t, y):
    return math.cos(t) * y


def _sin_y_y(t, y):
    return math.sin(t)


@_claim("R5-CF-integer", "reduction", "CF problems reduce to first-order ODEs",
        "max |solve_pseudo - reduce_cf_to_integer|, g=sin(t) y, y0=1, alpha=0.5, N=2048", 1e-4)
def _r5_cf():
    p = _fde(OperatorKind.CFDerivative, _sin_y, 1.0, g_t=_sin_y_t, g_y=_sin_y_y)
    return float(np.max(np.abs(solve_pseudo(p).values - reduce_cf_to_integer(p).values)))


@_claim("R5-ABC-Caputo", "reduction", "ABC problems reduce to Caputo problems",
        "max |solve_pseudo - reduce_abc_to_caputo|, g=sin(t) y, y0=1, alpha=0.5, N=2048", 1e-3)
def _r5_abc():
    p = _fde(OperatorKind.ABCDerivative, _sin_y, 1.0)
    return float(np.max(np.abs(solve_pseudo(p).values - reduce_abc_to_caputo(p).values)))

# }}}


# {{{ heat equation

def _sin_pi(x):
    return np.sin(np.pi * x)


@_claim("T4.1-heat-forced-initial", "heat", "bounded kernels force u_xx(x,0) + f(x,0) = 0",
        "min over N in {256,1024,4096} of first-level residual / initial-slice residual, CF(0.5), v0=sin(pi x)",
        0.5, direction="min")
def _t41():
    ratios = []
    for N in (256, 1024, 4096):
        r = solve_heat(HeatProblem(63, Grid(1.0, N), CFExp(0.5), _sin_pi))
        ratios.append(r.per_level_residuals[0] / r.initial_slice_residual)
    return float(min(ratios))


@_claim("E4.1-trivial-solution", "heat", "only the zero initial profile is admissible",
        "max ratio to bound of: residual(c=0) / 1e-8 and 1 / residual(c) for c in {0.5,1,2}, "
        "v0=c sin(pi x), CF(0.5), N=1024", 1.0)
def _e41():
    ratios = []
    for c in (0.0, 0.5, 1.0, 2.0):
        r = solve_heat(HeatProblem(63, Grid(1.0, 1024), CFExp(0.5), lambda x, c=c: c * _sin_pi(x)))
        res = float(np.max(r.per_level_residuals))
        ratios.append(res / 1e-8 if c == 0.0 else 1.0 / res)
    return float(max(ratios))

# }}}


# {{{ Grünwald-Letnikov

def _cubic():
    return FunctionInput(lambda t: 1.0 + t**3, lambda t: 3.0 * t**2, name="1+t^3")


def _gl_errors(ext, exact, tmin):
    errs = []
    for N in (256, 512, 1024, 2048):
        g = Grid(1.0, N)
        t = g.nodes
        m = t >= tmin - 1e-12
        m[0] = False
        d = gl_derivative(0.5, _cubic(), g, ext).values
        errs.append(float(np.max(np.abs(d[m] - exact(t[m])))))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    return errs, orders


def _gl_value(errs, orders):
    ratios = [errs[2] / 2e-2]
    ratios += [max(0.8 / o, o / 1.2) if o > 0 else math.inf for o in orders]
    return float(max(ratios))


@_claim("A-GL-Caputo", "grunwald", "GL with f(0) removed converges to Caputo",
        "max ratio to bound of: error at N=1024 / 2e-2 and empirical orders over 256..2048 vs [0.8,1.2], f=1+t^3, alpha=0.5",
        1.0)
def _gl_caputo():
    errs, orders = _gl_errors(ExtensionKind.TaylorExtension, lambda t: 6.0 * t**2.5 / gamma(3.5), 0.0)
    return _gl_value(errs, orders)


@_claim("A-GL-RL", "grunwald", "GL with zero extension converges to Riemann-Liouville away from 0",
        "max ratio to bound of: error on t>=0.1 at N=1024 / 2e-2 and orders vs [0.8,1.2], f=1+t^3, alpha=0.5",
        1.0)
def _gl_rl():
    def exact(t):
        with np.errstate(divide="ignore"):
            return t**-0.5 / gamma(0.5) + 6.0 * t**2.5 / gamma(3.5)
    errs, orders = _gl_errors(ExtensionKind.ZeroExtension, exact, 0.1)
    return _gl_value(errs, orders)

# }}}


# {{{ integration by parts

@_claim("B-proof-CF", "byparts", "term identities behind the CF left-inverse defect",
        "max over t of |(A) - closed form|, |(B) - W conv|, |(A)+(B) - (cos - exp(-W t))|, alpha=0.5, N=2048", 1e-6)
def _b_cf():
    a = 0.5
    W = rate(a)
    g = Grid(1.0, 2048)
    t = g.nodes
    conv = _cosine_oracle_cf(t, W)
    A = (1 - a) * op.cf_derivative(a, cos(), g).values
    B = a * op.cf_derivative(a, FunctionInput(np.sin, np.cos), g).values
    devs = [A - (np.cos(t) - np.exp(-W * t) - W * conv), B - W * conv, A + B - (np.cos(t) - np.exp(-W * t))]
    return float(max(np.max(np.abs(d[1:])) for d in devs))


@_claim("B-proof-ABC", "byparts", "term identities behind the ABC left-inverse defect",
        "max over t of |(C) - by-parts form|, |(D) - W ML conv|, |(C)+(D) - (cos - E_a(-W t^a))|, alpha=0.5, N=2048",
        1e-4)
def _b_abc():
    a = 0.5
    W = rate(a)
    g = Grid(1.0, 2048)
    t = g.nodes
    conv = op.prabhakar_integral(a, a, 1.0, -W, cos(), g).values
    decay = mittag_leffler(a, 1.0, -W * t**a)
    C = (1 - a) * op.abc_derivative(a, cos(), g).values
    # J^a cos = t^a E_{2,a+1}(-t^2)
    Jcos = FunctionInput(lambda s: s**a * mittag_leffler(2.0, a + 1.0, -(s**2)), name="J^a cos")
    D = a * op.abc_derivative(a, Jcos, g).values
    devs = [C - (np.cos(t) - decay - W * conv), D - W * conv, C + D - (np.cos(t) - decay)]
    return float(max(np.max(np.abs(d[1:])) for d in devs))


@_claim("S6.1-byparts-CF", "byparts", "CF derivative written without f'",
        "max |cf_derivative_byparts - cf_derivative| for cos, alpha=0.5, N=2048", 1e-6)
def _byparts_cf():
    g = Grid(1.0, 2048)
    return float(np.max(np.abs(op.cf_derivative_byparts(0.5, cos(), g).values - op.cf_derivative(0.5, cos(), g).values)))


@_claim("S6.1-byparts-ABC", "byparts", "ABC derivative written without f'",
        "max |abc_derivative_byparts - abc_derivative| for cos, alpha=0.5, N=2048", 1e-4)
def _byparts_abc():
    g = Grid(1.0, 2048)
    return float(np.max(np.abs(op.abc_derivative_byparts(0.5, cos(), g).values - op.abc_derivative(0.5, cos(), g).values)))

# }}}


@_claim("P5-Prabhakar-degeneration", "prabhakar", "Prabhakar operators with gamma=0 or lambda=0",
        "max pointwise |Prabhakar - RL/Caputo| over gamma=0 and lambda=0, cos, alpha=0.7, beta=0.4, N=1024", 1e-6)
def _prabhakar():
    g = Grid(1.0, 1024)
    a, b = 0.7, 0.4
    ref_i = op.rl_integral(b, cos(), g).values
    ref_d = op.caputo_derivative(b, cos(), g).values
    devs = []
    for gam, lam in ((0.0, -1.3), (1.2, 0.0)):
        devs.append(op.prabhakar_integral(a, b, gam, lam, cos(), g).values - ref_i)
        devs.append(op.prabhakar_derivative(a, b, gam, lam, cos(), g).values - ref_d)
    return float(max(np.max(np.abs(d)) for d in devs))


def run_claim(id: str) -> ClaimReport:
    try:
        c = REGISTRY[id]
    except KeyError:
        raise UnknownClaimError(f"no claim named {id!r}") from None
    t0 = time.perf_counter()
    value = float(c.fn())
    ms = int(round((time.perf_counter() - t0) * 1000))
    ok = value <= c.tolerance if c.direction == "max" else value >= c.tolerance
    return ClaimReport(c.id, c.anchor, c.metric + (" (pass if <= tolerance)" if c.direction == "max"
                                                       else " (pass if >= tolerance)"),
                       value, c.tolerance, bool(ok), ms)


def run_all(tag: str | None = None) -> list[ClaimReport]:
    """Run every claim (or those with the given tag), ordered by id."""
    ids = sorted(i for i, c in REGISTRY.items() if tag is None or c.tag == tag)
    return [run_claim(i) for i in ids]


def summarize(reports) -> dict:
    n_pass = sum(r.passed for r in reports)
    return {"total": len(reports), "passed": n_pass, "failed": len(reports) - n_pass}


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)
