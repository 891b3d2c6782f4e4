import json
import math

import numpy as np
import pytest

from fracver.errors import ConstraintViolationError, DegeneracyError, DomainError
from fracver.fde import (
    FDEProblem,
    reduce_abc_to_caputo,
    reduce_cf_to_integer,
    residual_check,
    solve_caputo,
    solve_pseudo,
)
from fracver.grid import Grid
from fracver.kernels import rate
from fracver.operators import OperatorKind
from fracver.specfun import mittag_leffler

K = OperatorKind


def test_caputo_relaxation_matches_mittag_leffler():
    g = Grid(1.0, 1024)
    p = FDEProblem(K.CaputoDerivative, 0.6, lambda t, y: -y, 1.0, g)
    y = solve_caputo(p).values
    np.testing.assert_allclose(y, mittag_leffler(0.6, 1.0, -g.nodes**0.6), atol=2e-4)


def test_caputo_residual_is_small_away_from_zero():
    g = Grid(1.0, 2048)
    p = FDEProblem(K.CaputoDerivative, 0.5, lambda t, y: -y, 1.0, g)
    r = residual_check(p, solve_caputo(p))
    assert np.max(np.abs(r.residual.values[g.nodes >= 0.1])) < 5e-3
    assert np.all(r.predicted_defect.values == 0.0)


def test_cf_pseudo_solution_closed_form():
    # g = 1, y0 = 0: y = (1 - a) + a t
    g = Grid(1.0, 64)
    p = FDEProblem(K.CFDerivative, 0.3, lambda t, y: 1.0, 0.0, g)
    np.testing.assert_allclose(solve_pseudo(p).values, 0.7 + 0.3 * g.nodes, atol=1e-13)


def test_cf_defect_is_exponential():
    g = Grid(1.0, 1024)
    p = FDEProblem(K.CFDerivative, 0.5, lambda t, y: 1.0, 0.0, g)
    r = residual_check(p, solve_pseudo(p))
    np.testing.assert_allclose(r.residual.values[1:], -np.exp(-rate(0.5) * g.nodes[1:]), rtol=1e-8)
    assert "max_mismatch" in json.loads(r.to_json())


def test_abc_defect_is_mittag_leffler():
    g = Grid(1.0, 2048)
    p = FDEProblem(K.ABCDerivative, 0.5, lambda t, y: 1.0, 0.0, g)
    r = residual_check(p, solve_pseudo(p))
    assert r.max_mismatch < 1e-3


def _sin_y(t, y):
    return math.sin(t) * y


def test_reductions_agree_with_pseudo_solutions():
    g = Grid(1.0, 1024)
    p = FDEProblem(K.CFDerivative, 0.5, _sin_y, 1.0, g, g_t=lambda t, y: math.cos(t) * y,
                   g_y=lambda t, y: math.sin(t))
    assert np.max(np.abs(solve_pseudo(p).values - reduce_cf_to_integer(p).values)) < 1e-4
    q = FDEProblem(K.ABCDerivative, 0.5, _sin_y, 1.0, g)
    assert np.max(np.abs(solve_pseudo(q).values - reduce_abc_to_caputo(q).values)) < 2e-3


def test_reductions_require_vanishing_initial_rhs():
    g = Grid(1.0, 16)
    p = FDEProblem(K.CFDerivative, 0.5, lambda t, y: 1.0, 0.0, g, g_t=lambda t, y: 0.0, g_y=lambda t, y: 0.0)
    with pytest.raises(ConstraintViolationError):
        reduce_cf_to_integer(p)
    q = FDEProblem(K.ABCDerivative, 0.5, lambda t, y: 1.0, 0.0, g)
    with pytest.raises(ConstraintViolationError):
        reduce_abc_to_caputo(q)


def test_cf_reduction_degeneracy():
    # 1 - (1-a) g_y = 0 when g_y = 1/(1-a)
    g = Grid(1.0, 16)
    p = FDEProblem(K.CFDerivative, 0.5, lambda t, y: 2.0 * y, 0.0, g,
                   g_t=lambda t, y: 0.0, g_y=lambda t, y: 2.0)
    with pytest.raises(DegeneracyError):
        reduce_cf_to_integer(p)


def test_problem_validation():
    g = Grid(1.0, 4)
    with pytest.raises(DomainError):
        FDEProblem(K.RLIntegral, 0.5, _sin_y, 0.0, g)
    with pytest.raises(DomainError):
        FDEProblem(K.CFDerivative, 1.0, _sin_y, 0.0, g)
    with pytest.raises(DomainError):
        FDEProblem(K.GenericDPhi, 0.5, _sin_y, 0.0, g)
