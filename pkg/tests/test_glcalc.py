import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from fracver.errors import DomainError
from fracver.functions import FunctionInput
from fracver.glcalc import ExtensionKind, gl_coefficients, gl_derivative
from fracver.grid import T0_UNBOUNDED, Grid


def test_coefficients_match_binomial():
    w = gl_coefficients(0.5, 10).omega
    j = np.arange(11)
    np.testing.assert_allclose(w, (-1.0) ** j * special.binom(0.5, j), rtol=1e-13)


def test_alpha_one_is_backward_difference():
    np.testing.assert_array_equal(gl_coefficients(1.0, 4).omega, [1, -1, 0, 0, 0])


def test_coefficients_read_only():
    w = gl_coefficients(0.5, 4).omega
    with pytest.raises(ValueError):
        w[0] = 2.0


@settings(max_examples=50, deadline=None)
@given(alpha=st.floats(0.01, 0.99), N=st.integers(1, 500))
def test_signs_and_partial_sums(alpha, N):
    g = gl_coefficients(alpha, N)
    assert g.omega[0] == 1.0 and np.all(g.omega[1:] < 0)
    p = g.partial_sums()
    # partial sums decrease to 0 and equal binom(j - alpha, j)
    assert np.all(np.diff(p) < 0) and p[-1] > 0
    j = N
    assert p[j] == pytest.approx(math.exp(special.gammaln(j + 1 - alpha) - special.gammaln(1 - alpha)
                                          - special.gammaln(j + 1)), rel=1e-9)


@pytest.mark.parametrize("alpha", [0.0, 1.2])
def test_alpha_range(alpha):
    with pytest.raises(DomainError):
        gl_coefficients(alpha, 4)


def test_first_order_convergence_to_caputo():
    f = FunctionInput(lambda t: t**2)
    errs = []
    for N in (200, 400, 800):
        g = Grid(1.0, N)
        d = gl_derivative(0.5, f, g, "taylor").values
        errs.append(np.max(np.abs(d - 2.0 * g.nodes**1.5 / math.gamma(2.5))))
    assert 0.8 < math.log2(errs[0] / errs[1]) < 1.2
    assert 0.8 < math.log2(errs[1] / errs[2]) < 1.2


def test_zero_extension_flags_unbounded_start():
    d = gl_derivative(0.5, FunctionInput(lambda t: 1.0 + t), Grid(1.0, 16), ExtensionKind.ZeroExtension)
    assert d.t0 == T0_UNBOUNDED and np.isinf(d.values[0])
