import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from harmonic_schwarzian import DivisionByZero, GeneralizedKoebe, Series, series_arith, series_coeffs
from harmonic_schwarzian.catalog import FamilyParams, Identity, make_extremal, make_harmonic_koebe
from harmonic_schwarzian.series import binomial

cplx = st.builds(complex, st.floats(-3, 3), st.floats(-3, 3))
coeff_lists = st.lists(cplx, min_size=6, max_size=6)


@given(coeff_lists, coeff_lists)
def test_mul_is_convolution(a, b):
    x, y = Series(a), Series(b)
    p = series_arith("mul", x, y)
    for k in range(6):
        assert p[k] == sum(a[i] * b[k - i] for i in range(k + 1)) or abs(
            p[k] - sum(a[i] * b[k - i] for i in range(k + 1))
        ) < 1e-12


@given(coeff_lists, coeff_lists)
def test_div_inverts_mul(a, b):
    b = [b[0] + 5] + b[1:]
    x, y = Series(a), Series(b)
    q = series_arith("div", series_arith("mul", x, y), y)
    assert np.allclose(q.coeffs, x.coeffs, atol=1e-9)


def test_division_by_zero_constant():
    with pytest.raises(DivisionByZero):
        Series([1, 2]) / Series([0, 1])


def test_identity_and_phi2():
    assert list(series_coeffs(Identity(), 4).coeffs) == [0, 1, 0, 0, 0]
    assert np.allclose(GeneralizedKoebe(2.0).series(8).coeffs, np.arange(9))


def test_extremal_series_is_harmonic_koebe():
    f = make_extremal(FamilyParams(9.5, 1.0))
    h = f.h.series(5).coeffs
    g = f.g.series(5).coeffs
    assert np.allclose(h, [0, 1, 2.5, 14 / 3, 7.5, 11], atol=1e-12)
    assert np.allclose(g, [0, 0, 0.5, 5 / 3, 3.5, 6], atol=1e-12)
    K = make_harmonic_koebe()
    assert np.allclose(K.h.series(5).coeffs, h, atol=1e-12)


def test_binomial_series():
    s = Series.binomial(-1.0, -2.0, 5)
    assert np.allclose(s.coeffs, np.arange(1, 7))
    assert binomial(0.5, 2) == -0.125


@given(st.floats(-2, 2))
def test_pow_matches_binomial(p):
    s = Series([1, 0.3] + [0] * 15)
    assert np.allclose(s.pow(p).coeffs, Series.binomial(0.3, p).coeffs, atol=1e-12)


def test_derivative_integrate_roundtrip():
    s = Series([0, 1, 2, 3, 4])
    assert np.allclose(s.derivative().integrate().coeffs[:5], s.coeffs)
