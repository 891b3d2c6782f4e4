import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from fracver.errors import ConvergenceError, DomainError, PoleError
from fracver.specfun import MLPolicy, gamma, mittag_leffler, prabhakar_ml, rgamma

# frozen reference values
E_HALF_AT_MINUS_ONE = 0.42758357615580705   # erfcx(1)
SQRT_PI = 1.7724538509055159
RGAMMA_2_5 = 0.7522527780636751             # 1/Gamma(2.5) = 4/(3 sqrt(pi))


def test_gamma_frozen_values():
    assert gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-15)
    assert gamma(5.0) == 24.0
    assert rgamma(2.5) == pytest.approx(RGAMMA_2_5, rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)


def test_rgamma_vanishes_at_poles():
    assert rgamma(-2.0) == 0.0


def test_ml_frozen_half():
    assert mittag_leffler(0.5, 1.0, -1.0) == pytest.approx(E_HALF_AT_MINUS_ONE, rel=1e-14)


def test_ml_half_is_erfcx_on_negative_axis():
    x = np.concatenate([np.linspace(0, 10, 41), np.linspace(10, 200, 40)])
    np.testing.assert_allclose(mittag_leffler(0.5, 1.0, -x), special.erfcx(x), rtol=1e-13, atol=1e-16)


def test_ml_alpha_one_closed_forms():
    z = np.linspace(-30, 30, 121)
    np.testing.assert_allclose(mittag_leffler(1.0, 1.0, z), np.exp(z), rtol=1e-15)
    np.testing.assert_allclose(mittag_leffler(1.0, 2.0, z[z != 0]), np.expm1(z[z != 0]) / z[z != 0], rtol=1e-15)


def test_ml_alpha_two_is_cosine():
    x = np.array([0.5, 4.0, 30.0, 60.0])
    np.testing.assert_allclose(mittag_leffler(2.0, 1.0, -x), np.cos(np.sqrt(x)), atol=1e-12)


def test_ml_zero_argument():
    assert mittag_leffler(0.7, 1.3, 0.0) == pytest.approx(1.0 / math.gamma(1.3), rel=1e-15)


def test_ml_scalar_and_shape():
    assert isinstance(mittag_leffler(0.5, 1.0, -1.0), float)
    z = np.linspace(-2, 2, 12).reshape(3, 4)
    assert mittag_leffler(0.5, 1.0, z).shape == (3, 4)


def _mp_ml(a, b, g, z):
    # the largest term is about exp(|z|**(1/a))
    dps = int(abs(z) ** (1.0 / a) / math.log(10.0)) + 40
    with mpmath.workdps(dps):
        a, b, g, z = (mpmath.mpf(v) for v in (a, b, g, z))
        s, k, poch = mpmath.mpf(0), 0, mpmath.mpf(1)
        while True:
            term = poch * z**k / (mpmath.factorial(k) * mpmath.gamma(a * k + b))
            s += term
            if k > 20 and abs(term) < mpmath.mpf(10) ** -30:
                return float(s)
            poch *= g + k
            k += 1


@pytest.mark.parametrize("alpha", [0.4, 0.7, 0.9])
@pytest.mark.parametrize("z", [-12.0, -8.0, -1.5, 0.7, 6.0])
def test_prabhakar_against_mpmath(alpha, z):
    ref = _mp_ml(alpha, 1.2, 0.6, z)
    assert prabhakar_ml(alpha, 1.2, 0.6, z) == pytest.approx(ref, rel=1e-10, abs=1e-13)


def test_prabhakar_gamma_one_is_two_parameter():
    z = np.linspace(-40, 5, 30)
    np.testing.assert_allclose(prabhakar_ml(0.6, 1.4, 1.0, z), mittag_leffler(0.6, 1.4, z), rtol=1e-13, atol=1e-15)


def test_prabhakar_gamma_zero():
    assert prabhakar_ml(0.5, 1.7, 0.0, -3.0) == pytest.approx(1.0 / math.gamma(1.7))


def test_ml_rejects_bad_input():
    with pytest.raises(DomainError):
        mittag_leffler(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        mittag_leffler(0.5, 1.0, np.nan)


def test_ml_overflow_is_reported():
    with pytest.raises(ConvergenceError):
        mittag_leffler(0.3, 1.0, 10.0)


def test_policy_validation():
    with pytest.raises(DomainError):
        MLPolicy(series_radius=60.0, asymptotic_radius=50.0)
    with pytest.raises(DomainError):
        MLPolicy(contour_nodes=2)


@settings(max_examples=60, deadline=None)
@given(alpha=st.floats(0.2, 1.0), beta=st.floats(0.5, 2.5), z=st.floats(-30.0, 3.0))
def test_ml_recurrence(alpha, beta, z):
    # E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z)
    lhs = mittag_leffler(alpha, beta, z)
    rhs = 1.0 / math.gamma(beta) + z * mittag_leffler(alpha, alpha + beta, z)
    assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(0.1, 1.0), x=st.floats(0.0, 100.0), dx=st.floats(0.01, 10.0))
def test_ml_completely_monotone_decreasing(alpha, x, dx):
    a, b = mittag_leffler(alpha, 1.0, -x), mittag_leffler(alpha, 1.0, -(x + dx))
    assert 0.0 < b <= a + 1e-14
