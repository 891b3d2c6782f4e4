import math

import numpy as np
import pytest

from fracver import operators as op
from fracver.errors import DomainError, MissingDerivativeError
from fracver.functions import FunctionInput, const, cos, linear, named_function, power
from fracver.grid import T0_LIMIT, T0_UNBOUNDED, T0_VALUE, Grid, SampledFunction
from fracver.kernels import CFExp, PowerLaw, rate
from fracver.operators import OperatorKind, apply_operator
from fracver.specfun import mittag_leffler

G = Grid(1.0, 1024)
T = G.nodes

CAPUTO_HALF_OF_T_AT_1 = 1.1283791670955126   # 2/sqrt(pi)


def test_caputo_of_linear_frozen():
    d = op.caputo_derivative(0.5, linear(), G)
    assert d.values[-1] == pytest.approx(CAPUTO_HALF_OF_T_AT_1, rel=1e-12)
    assert d.t0 == T0_LIMIT


def test_caputo_of_power_closed_form():
    d = op.caputo_derivative(0.3, power(2.0), G, slopes="midpoint").values
    ex = math.gamma(3.0) / math.gamma(2.7) * T**1.7
    assert np.max(np.abs(d - ex)[1:]) < 1e-5


def test_rl_integral_of_constant():
    j = op.rl_integral(0.5, const(1.0), G).values
    np.testing.assert_allclose(j[1:], T[1:] ** 0.5 / math.gamma(1.5), rtol=1e-12)


def test_rl_derivative_adds_initial_term():
    d = op.rl_derivative(0.5, const(2.0), G)
    np.testing.assert_allclose(d.values[1:], 2.0 * T[1:] ** -0.5 / math.gamma(0.5), rtol=1e-12)
    assert d.t0 == T0_UNBOUNDED and np.isinf(d.values[0])


def test_cf_derivative_of_linear():
    a = 0.5
    d = op.cf_derivative(a, linear(), G, M=2.0).values
    ex = 2.0 / a * (-np.expm1(-rate(a) * T))
    np.testing.assert_allclose(d, ex, atol=1e-13)


def test_cf_normalization_scales_linearly():
    d1 = op.cf_derivative(0.4, cos(), G, M=1.0).values
    d3 = op.cf_derivative(0.4, cos(), G, M=3.0).values
    np.testing.assert_allclose(d3, 3.0 * d1, rtol=1e-14)


def test_abc_power_closed_form():
    a, gam = 0.5, 1.5
    d = op.abc_derivative(a, power(gam), G).values
    ex = math.gamma(gam + 1) / (1 - a) * T**gam * mittag_leffler(a, gam + 1, -rate(a) * T**a)
    assert np.max(np.abs(d - ex)) < 1e-4


def test_cf_integral_value_at_zero():
    i = op.cf_integral(0.4, cos(), G)
    assert i.t0 == T0_VALUE
    assert i.values[0] == pytest.approx(0.6)  # (1 - alpha)/M * f(0)


def test_generic_dphi_matches_named():
    np.testing.assert_allclose(op.generic_dphi(CFExp(0.3), cos(), G).values,
                               op.cf_derivative(0.3, cos(), G).values, rtol=1e-14, atol=1e-15)
    np.testing.assert_allclose(op.generic_dphi(PowerLaw(0.6), cos(), G).values,
                               op.caputo_derivative(0.4, cos(), G).values, rtol=1e-14, atol=1e-15)


def test_byparts_forms_agree():
    for fn_a, fn_b in ((op.cf_derivative, op.cf_derivative_byparts), (op.abc_derivative, op.abc_derivative_byparts)):
        np.testing.assert_allclose(fn_a(0.6, cos(), G).values, fn_b(0.6, cos(), G).values, atol=1e-12)


def test_prabhakar_lambda_zero_is_caputo():
    np.testing.assert_allclose(op.prabhakar_derivative(0.7, 0.4, 1.2, 0.0, cos(), G).values,
                               op.caputo_derivative(0.4, cos(), G).values, atol=1e-12)


def test_prabhakar_derivative_left_inverts_integral():
    g = Grid(1.0, 2048)
    args = (0.6, 0.5, 0.8, -1.0)
    r = op.prabhakar_derivative(*args, op.prabhakar_integral(*args, cos(), g), g).values
    assert np.max(np.abs(r - np.cos(g.nodes))[g.nodes >= 0.1]) < 1e-2


def test_slope_rules():
    with pytest.raises(MissingDerivativeError):
        op.caputo_derivative(0.5, FunctionInput(np.cos), G, slopes="midpoint")
    d = op.caputo_derivative(0.5, FunctionInput(np.cos), G, slopes="derivative")
    assert any("differentiated" in n for n in d.notes)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 1.5])
def test_alpha_range(alpha):
    with pytest.raises(DomainError):
        op.cf_derivative(alpha, cos(), G)


def test_apply_operator_dispatch():
    d = apply_operator("caputo", linear(), G, 0.5)
    assert d.values[-1] == pytest.approx(CAPUTO_HALF_OF_T_AT_1, rel=1e-12)
    d = apply_operator(OperatorKind.GenericDPhi, cos(), G, kernel=CFExp(0.5))
    assert d.values[1] < 0
    with pytest.raises(DomainError):
        apply_operator("caputo", cos(), G)  # alpha missing


def test_sampled_input_matches_named_within_difference_bound():
    named = op.cf_derivative(0.5, cos(), G).values
    fs = SampledFunction(G, np.cos(T))
    sampled = op.cf_derivative(0.5, fs, G).values
    np.testing.assert_allclose(named, sampled, atol=1e-15)


def test_named_functions():
    assert named_function("power:1.5").name == "power:1.5"
    with pytest.raises(DomainError):
        named_function("tanh")
    with pytest.raises(DomainError):
        named_function("power:-1")
