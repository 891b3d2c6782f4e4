import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracver.errors import DomainError, SingularityError
from fracver.grid import T0_LIMIT, Grid, SampledFunction
from fracver.kernels import ABML, CFExp, PowerLaw, PrabhakarK, Tabulated, ab_normalization, kernel_value, rate

CF_HALF_INTEGRAL_AT_0_1 = 0.19032516392808085   # 2 (1 - exp(-0.1))


def test_grid_basics():
    g = Grid(2.0, 4)
    assert g.h == 0.5
    np.testing.assert_array_equal(g.nodes, [0, 0.5, 1, 1.5, 2])
    np.testing.assert_array_equal(g.midpoints, [0.25, 0.75, 1.25, 1.75])
    assert len(g) == 5
    assert g.refine().N == 8


@pytest.mark.parametrize("T,N", [(0.0, 4), (-1.0, 4), (1.0, 0), (math.inf, 4)])
def test_grid_rejects(T, N):
    with pytest.raises(DomainError):
        Grid(T, N)


def test_sampled_function_validates_length():
    with pytest.raises(DomainError):
        SampledFunction(Grid(1.0, 4), np.zeros(4))
    with pytest.raises(DomainError):
        SampledFunction(Grid(1.0, 4), np.zeros(5), t0="bogus")


@settings(max_examples=30, deadline=None)
@given(N=st.integers(2, 40), T=st.floats(0.1, 50.0),
       seed=st.integers(0, 2**31 - 1), with_deriv=st.booleans())
def test_csv_round_trip(N, T, seed, with_deriv):
    rng = np.random.default_rng(seed)
    g = Grid(T, N)
    f = SampledFunction(g, rng.normal(size=N + 1), rng.normal(size=N + 1) if with_deriv else None)
    back = SampledFunction.from_csv(io.StringIO(f.to_csv()))
    np.testing.assert_array_equal(back.values, f.values)
    assert back.grid.N == N
    if with_deriv:
        np.testing.assert_array_equal(back.deriv_values, f.deriv_values)


def test_csv_rejects_nonuniform():
    text = "t,value\n0,1\n0.1,2\n0.3,3\n"
    with pytest.raises(DomainError):
        SampledFunction.from_csv(io.StringIO(text))


def test_with_values_drops_derivative():
    g = Grid(1.0, 2)
    f = SampledFunction(g, [0, 1, 2], [1, 1, 1])
    h = f.with_values(np.ones(3), t0=T0_LIMIT, notes=["x"])
    assert h.deriv_values is None and h.t0 == T0_LIMIT and h.notes == ["x"]


def test_rate_and_normalization():
    assert rate(0.5) == 1.0
    assert ab_normalization(0.5) == pytest.approx(0.5 + 0.5 / math.gamma(0.5))
    with pytest.raises(DomainError):
        rate(1.0)


def test_cf_integral_frozen():
    assert CFExp(0.5).integral(0.1) == pytest.approx(CF_HALF_INTEGRAL_AT_0_1, rel=1e-14)


KERNELS = [PowerLaw(0.4), PowerLaw(1.0), PowerLaw(1.7, scale=2.0), CFExp(0.3), CFExp(0.6, M=1.5),
           ABML(0.5), ABML(0.8, B=0.7), PrabhakarK(0.6, 1.3, 0.5, -1.1), PrabhakarK(0.6, 0.7, 1.0, -1.1)]


@pytest.mark.parametrize("k", KERNELS, ids=repr)
def test_antiderivatives_match_quadrature(k):
    from scipy.integrate import quad
    for s in (0.05, 0.6, 2.0):
        K, _ = quad(lambda u: float(k.value(np.array([u]))[0]), 0, s, limit=200)
        K2, _ = quad(lambda u: float(k.integral(np.array([u]))[0]), 0, s, limit=200)
        assert float(k.integral(np.array([s]))[0]) == pytest.approx(K, rel=1e-7)
        assert float(k.integral2(np.array([s]))[0]) == pytest.approx(K2, rel=1e-7)


def test_boundedness_flags():
    assert not PowerLaw(0.5).is_bounded and PowerLaw(1.0).is_bounded
    assert CFExp(0.5).is_bounded and ABML(0.5).is_bounded
    assert CFExp(0.5).at_zero() == 2.0 and ABML(0.5).at_zero() == 2.0
    assert not PrabhakarK(0.5, 0.5, 1.0, -1.0).is_bounded


def test_kernel_value_errors():
    with pytest.raises(SingularityError):
        kernel_value(PowerLaw(0.5), 0.0)
    with pytest.raises(DomainError):
        kernel_value(CFExp(0.5), -1.0)
    assert kernel_value(CFExp(0.5), 0.0) == 2.0


def test_tabulated_piecewise_linear_is_exact():
    g = Grid(1.0, 4)
    k = Tabulated(SampledFunction(g, 1.0 + g.nodes))
    s = np.array([0.3, 1.0])
    np.testing.assert_allclose(k.integral(s), s + s**2 / 2)
    np.testing.assert_allclose(k.integral2(s), s**2 / 2 + s**3 / 6)
