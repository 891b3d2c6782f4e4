import json

import numpy as np
import pytest

from fracver.errors import DomainError, UnsupportedKernelError
from fracver.grid import Grid
from fracver.heat1d import HeatProblem, discrete_laplacian, initial_slice_residual, solve_heat
from fracver.kernels import CFExp, PowerLaw, PrabhakarK
from fracver.specfun import mittag_leffler


def _sin_pi(x):
    return np.sin(np.pi * x)


def test_initial_slice_residual_examples():
    g = Grid(1.0, 8)
    assert initial_slice_residual(HeatProblem(31, g, CFExp(0.5), lambda x: 2.0 * x + 1.0)) < 1e-12
    compat = HeatProblem(255, g, CFExp(0.5), _sin_pi, lambda x, t: np.pi**2 * _sin_pi(x))
    assert initial_slice_residual(compat) < 1e-3  # O(dx^2)
    assert initial_slice_residual(HeatProblem(255, g, CFExp(0.5), _sin_pi)) == pytest.approx(np.pi**2, rel=1e-4)


def test_caputo_converges_to_separation_oracle():
    errs = []
    for X, N in ((15, 64), (31, 256)):
        r = solve_heat(HeatProblem(X, Grid(1.0, N), PowerLaw(0.5), _sin_pi))
        oracle = np.outer(_sin_pi(r.x), mittag_leffler(0.5, 1.0, -np.pi**2 * r.t**0.5))
        errs.append(np.max(np.abs(r.u - oracle)))
    assert errs[1] <= 0.5 * errs[0]


def test_bounded_kernel_residual_persists():
    firsts = []
    for N in (128, 512, 2048):
        r = solve_heat(HeatProblem(31, Grid(1.0, N), CFExp(0.5), _sin_pi))
        firsts.append(r.per_level_residuals[0])
        assert r.annotations
    assert min(firsts) >= 0.5 * np.pi**2


def test_compatible_data_leave_only_discretization_residual():
    # pi^2 sin(pi x) matches Delta_h v0 only to O(dx^2); the residual stays at that level
    for X in (31, 63):
        r = solve_heat(HeatProblem(X, Grid(1.0, 256), CFExp(0.5), _sin_pi,
                                   lambda x, t: np.pi**2 * _sin_pi(x)))
        assert np.max(r.per_level_residuals) == pytest.approx(r.initial_slice_residual, rel=1e-6)
        assert r.initial_slice_residual < 1.1 * np.pi**4 / 12 / (X + 1) ** 2


def test_jump_start_satisfies_its_own_scheme():
    r = solve_heat(HeatProblem(31, Grid(1.0, 128), CFExp(0.5), _sin_pi), start="jump")
    assert np.max(r.per_level_residuals) < 1e-8
    assert any("jumps" in a for a in r.annotations)


def test_outputs():
    r = solve_heat(HeatProblem(7, Grid(1.0, 4), CFExp(0.5), _sin_pi))
    lines = r.to_csv().splitlines()
    assert len(lines) == 6 and lines[0].startswith("t,x=0")
    s = json.loads(r.summary_json())
    assert set(s) == {"initial_slice_residual", "per_level_residuals", "annotations"}


def test_rejections():
    g = Grid(1.0, 4)
    with pytest.raises(UnsupportedKernelError):
        solve_heat(HeatProblem(7, g, PrabhakarK(0.5, 0.5, 1.0, -1.0), _sin_pi))
    with pytest.raises(DomainError):
        HeatProblem(2, g, CFExp(0.5), _sin_pi)
    with pytest.raises(DomainError):
        solve_heat(HeatProblem(7, g, CFExp(0.5), _sin_pi), start="warm")


def test_discrete_laplacian_of_quadratic():
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(discrete_laplacian(x**2, 0.1), 2.0)
