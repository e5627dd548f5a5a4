import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from harmonic_schwarzian import (
    CoefficientTriple,
    ConsistencyError,
    FamilyParams,
    GeneralizedKoebe,
    InvalidParameter,
    R_from_order,
    R_lower_bound,
    SchwarzianNorm,
    extremal_coefficients,
    make_f_r,
    marty_residual,
    order_F,
    order_H,
)
from harmonic_schwarzian.norms import hyperbolic_field, sup_norm


def test_order_H():
    assert order_H(6) == 2
    assert order_H(0) == 1
    assert abs(order_H(9.5) - math.sqrt(23 / 4)) < 1e-15
    with pytest.raises(InvalidParameter):
        order_H(-1)


def test_order_F():
    o = order_F(9.5)
    assert (o.order, o.half_order, o.R_sup, o.source) == (3.0, 2.5, 1.0, "proven")
    assert abs(order_F(1.5).order - 2) < 1e-15
    z = order_F(0)
    assert z.order == 1 and z.source == "proven"
    c = order_F(1.0, 0.9)
    assert c.source == "conditional_on_R" and abs(c.half_order - math.sqrt(1.905)) < 1e-15


def test_order_F_errors():
    with pytest.raises(ConsistencyError):
        order_F(6.0, 0.5)
    with pytest.raises(InvalidParameter):
        order_F(1.0)
    with pytest.raises(InvalidParameter):
        order_F(-0.1, 0.5)
    with pytest.raises(InvalidParameter):
        order_F(1.0, 1.1)


def test_R_from_order():
    assert R_from_order(9.5, 3) == 1.0
    assert R_from_order(1.5, 2) == 1.0
    with pytest.raises(InvalidParameter):
        R_from_order(9.5, 0.5)
    with pytest.raises(InvalidParameter):
        R_from_order(1.0, 5.0)


@given(st.floats(0.01, 1.49), st.floats(0.0, 1.0))
def test_R_from_order_roundtrip(lam, R):
    assert abs(R_from_order(lam, order_F(lam, R).order) - R) < 1e-9


def test_R_lower_bound():
    assert abs(R_lower_bound(2 / 3) - 2 / 3) < 1e-15
    assert abs(R_lower_bound(1.5 - 1e-12) - 1) < 1e-12
    for bad in (0.0, 1.5, 2.0):
        with pytest.raises(InvalidParameter):
            R_lower_bound(bad)


def test_f_r_at_the_bound():
    lam = 1.0
    r = math.sqrt(2 * lam / 3)
    f = make_f_r(r)
    omega_norm = sup_norm(hyperbolic_field(f), n_r=64, n_theta=64).value
    assert abs(omega_norm - r) < 1e-9 and abs(omega_norm - R_lower_bound(lam)) < 1e-9
    assert SchwarzianNorm(n_r=96, n_theta=96).fit(f).norm_ < lam


def test_marty_examples():
    assert marty_residual(CoefficientTriple(0, 0, 0)) == 1
    for lam in (1.5, 6.0, 9.5):
        assert marty_residual(extremal_coefficients(FamilyParams.for_lambda(lam))) < 1e-8
    for a in (0.5, 1.5, 2.0, 3.0):
        s = GeneralizedKoebe(a).series(4).coeffs
        assert abs(s[3] - (2 * a * a + 1) / 3) < 1e-14
        assert marty_residual(CoefficientTriple(s[2], s[3], 0)) < 1e-12


def test_extremal_coefficients():
    c = extremal_coefficients(FamilyParams(9.5, 1.0))
    assert abs(c.a2 - 2.5) < 1e-14 and abs(c.a3 - 14 / 3) < 1e-13 and abs(c.b2 - 0.5) < 1e-15
    c = extremal_coefficients(FamilyParams(1.5, 1.0))
    assert abs(c.a2 - 1.5) < 1e-14 and abs(c.b2 - 0.5) < 1e-15
    c = extremal_coefficients(FamilyParams(1.0, 0.9))
    assert abs(c.b2 - 0.45) < 1e-15
    with pytest.raises(InvalidParameter):
        extremal_coefficients(FamilyParams(0.0, 0.0))


def test_harmonic_order_exceeds_analytic():
    for lam in np.linspace(1.5, 20, 30):
        gap = order_F(lam).order - order_H(lam)
        assert 0 < gap <= 1


def test_order_increasing_in_R():
    for lam in (0.2, 0.7, 1.3):
        vals = [order_F(lam, R).order for R in np.linspace(0, 1, 50)]
        assert np.all(np.diff(vals) > 0)
