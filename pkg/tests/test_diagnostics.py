import json
import math

import numpy as np
import pytest

from fracver.diagnostics import (
    SonineClass,
    construct_jpsi_star,
    final_value_check,
    laplace_probe,
    laplace_transform_numeric,
    sonine_check,
    sonine_integral,
    theorem_identity_residual,
)
from fracver.errors import DomainError, NotApplicableError, UnsupportedKernelError
from fracver.functions import cos
from fracver.grid import Grid
from fracver.kernels import ABML, CFExp, PowerLaw, PrabhakarK


@pytest.mark.parametrize("a", [0.2, 0.5, 0.9])
def test_power_pair_is_sonine(a):
    r = sonine_check(PowerLaw(1 - a), PowerLaw(a), [1.0, 0.1, 0.01, 0.001])
    assert r.classification is SonineClass.SoninePair
    assert np.max(np.abs(r.integrals - 1.0)) < 1e-6
    assert json.loads(r.to_json())["classification"] == "SoninePair"


def test_bounded_kernel_is_defective():
    r = sonine_check(CFExp(0.5), PowerLaw(0.5), np.geomspace(1e-6, 1e-3, 5))
    assert r.classification is SonineClass.DefectiveAtZero
    assert abs(r.decay_exponent - 0.5) < 0.01
    assert np.all(np.diff(r.integrals) < 0)  # gaps sorted decreasing, integrals shrink with them


def test_sonine_integral_closed_form():
    # CF(0.5) kernel 2 e^{-s} against 1: 2 (1 - e^{-gap})
    assert sonine_integral(CFExp(0.5), PowerLaw(1.0), 0.3) == pytest.approx(2 * (1 - math.exp(-0.3)), rel=1e-9)


def test_sonine_rejects():
    with pytest.raises(DomainError):
        sonine_check(PowerLaw(0.5), PowerLaw(0.5), [0.1], cells=64)
    with pytest.raises(DomainError):
        sonine_integral(PowerLaw(0.5), PowerLaw(0.5), 0.0)


@pytest.mark.parametrize("s", [0.5, 3.0, 40.0])
def test_laplace_of_abml_against_closed_form(s):
    a = 0.6
    k = ABML(a)
    W = a / (1 - a)
    ex = 1.0 / (1 - a) * s ** (a - 1) / (s**a + W)
    assert laplace_transform_numeric(k, s, math.inf) == pytest.approx(ex, rel=1e-8)


def test_laplace_of_prabhakar_against_closed_form():
    k = PrabhakarK(0.5, 0.8, 0.7, -1.0)
    s = 2.0
    ex = s ** (0.5 * 0.7 - 0.8) / (s**0.5 + 1.0) ** 0.7
    assert laplace_transform_numeric(k, s, math.inf) == pytest.approx(ex, rel=1e-7)


def test_final_value_cf_and_abml():
    assert abs(final_value_check(CFExp(0.5), 1e4) - 2.0) == pytest.approx(2.0 / (1e4 + 1), rel=1e-8)
    # ABML approaches phi(0) only like s^-alpha
    assert abs(final_value_check(ABML(0.5), 1e4) - 2.0) == pytest.approx(2.0 / 101.0, rel=1e-6)
    with pytest.raises(NotApplicableError):
        final_value_check(PowerLaw(0.5))


def test_psi_hat_tends_to_reciprocal_of_phi0():
    p = laplace_probe(CFExp(0.5), [1e2, 1e3, 1e4])
    d = np.abs(p.psi_hat - 0.5)
    assert np.all(np.diff(d) < 0)


def test_split_and_identity():
    assert construct_jpsi_star(CFExp(0.5, M=2.0))[0] == 0.25
    with pytest.raises(UnsupportedKernelError):
        construct_jpsi_star(PowerLaw(0.5))
    res, L = theorem_identity_residual(ABML(0.5), cos(), Grid(1.0, 1024))
    assert res < 1e-3 and L == 0.0
