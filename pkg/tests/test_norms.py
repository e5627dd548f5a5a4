import math
import warnings

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from harmonic_schwarzian import (
    AnalyticKoebe,
    Automorphism,
    FamilyParams,
    HyperbolicNorm,
    InvalidParameter,
    Lens,
    OutOfDomain,
    RegimeWarning,
    SchwarzianNorm,
    closed_form_scaled,
    curve_samples,
    make_analytic,
    make_extremal,
    make_f_r,
    make_harmonic_koebe,
    psi_monotone_check,
    psi_profile,
    scaled_schwarzian,
    sup_norm,
)
from harmonic_schwarzian.acceptance import random_disk
from harmonic_schwarzian.norms import ClosedFormCoeffs, curve_point, schwarzian_field

SMALL = dict(n_r=96, n_theta=128)


@pytest.fixture(scope="module")
def koebe_estimate():
    return SchwarzianNorm().fit(make_harmonic_koebe())


def test_harmonic_koebe_norm(koebe_estimate):
    assert abs(koebe_estimate.norm_ - 9.5) < 1e-5
    assert koebe_estimate.attained_ and koebe_estimate.argmax_ == 0


def test_never_below_a_sample(koebe_estimate, rng):
    z = random_disk(rng, 1000, 0.99)
    assert koebe_estimate.norm_ >= np.max(koebe_estimate.transform(z))


def test_boundary_supremum_flag():
    est = sup_norm(schwarzian_field(make_f_r(1.0)), **SMALL)
    assert not est.attained and abs(est.argmax) > 0.999
    assert abs(est.value - 1.5) < 1e-6


def test_f_r_strictly_below_bound():
    r = 0.6
    est = sup_norm(schwarzian_field(make_f_r(r)), **SMALL)
    assert est.value < 1.5 * r * r
    # independent 1-d oracle: max over x = |z|^2 of 1.5 r^4 x (1-x)^2 / (1 - r^2 x)^2
    x = np.linspace(0, 1, 2_000_001)
    oracle = np.max(1.5 * r**4 * x * (1 - x) ** 2 / (1 - r * r * x) ** 2)
    assert abs(est.value - oracle) < 1e-9


def test_deterministic():
    f = make_extremal(FamilyParams(6.0, 1.0))
    a = sup_norm(schwarzian_field(f), **SMALL)
    b = sup_norm(schwarzian_field(f), **SMALL)
    assert a == b


def test_sup_norm_validation():
    fld = schwarzian_field(make_harmonic_koebe())
    with pytest.raises(InvalidParameter):
        sup_norm(fld, xtol=0.0)
    with pytest.raises(InvalidParameter):
        sup_norm(fld, xtol=1e-3)
    with pytest.raises(InvalidParameter):
        sup_norm(fld, n_r=1)
    with pytest.raises(InvalidParameter):
        sup_norm(fld, ladder=(3,))


def test_estimator_api():
    est = SchwarzianNorm(n_r=64, n_theta=64)
    params = est.get_params()
    assert params["n_r"] == 64 and params["tie_rtol"] == 1e-7
    est.set_params(n_theta=32)
    assert clone(est).get_params()["n_theta"] == 32
    with pytest.raises(NotFittedError):
        est.transform([0.1])
    est.fit(make_analytic(AnalyticKoebe()))
    assert abs(est.norm_ - 6) < 1e-6
    with pytest.raises(OutOfDomain):
        est.transform([1.0])
    with pytest.raises(TypeError):
        SchwarzianNorm().fit(AnalyticKoebe())
    out = SchwarzianNorm(n_r=32, n_theta=32).fit_transform(make_analytic(AnalyticKoebe()), points=[0.0, 0.5])
    assert out.shape == (2,) and abs(out[0] - 6) < 1e-12


@pytest.mark.parametrize("R", [0.3, 0.8])
def test_hyperbolic_norm_of_lens(R):
    est = HyperbolicNorm(**SMALL).fit(Lens(R))
    assert abs(est.norm_ - R) < 1e-9


def test_hyperbolic_norm_of_automorphism_and_dilatation():
    # |sigma*| = 1 everywhere, so the ladder at 1 - 1e-7 sees only roundoff of 1 - |z|^2
    assert abs(HyperbolicNorm(**SMALL).fit(Automorphism(0.3j)).norm_ - 1) < 1e-8
    assert abs(HyperbolicNorm(**SMALL).fit(make_f_r(0.4)).norm_ - 0.4) < 1e-9


# extremal map: symmetry, curves, closed forms ---------------------------------


def test_conjugation_symmetry(rng):
    f = make_extremal(FamilyParams(1.0, 0.9))
    z = random_disk(rng, 200, 0.95)
    assert np.max(np.abs(scaled_schwarzian(f, z) - scaled_schwarzian(f, np.conj(z)))) < 1e-10


@pytest.mark.parametrize("lam", [1.5, 6.0, 9.5])
def test_norm_equals_imaginary_axis_sup(lam):
    f = make_extremal(FamilyParams(lam, 1.0))
    est = sup_norm(schwarzian_field(f), **SMALL)
    r = 1 - np.geomspace(1, 1e-7, 4000)
    axis = np.max(scaled_schwarzian(f, 1j * r))
    assert abs(est.value - axis) < 1e-5
    assert abs(est.value - lam) < 1e-5


def test_curve_point_invariants():
    p = FamilyParams(1.0, 0.9)
    for gamma, t in [(0.0, 0.5), (0.7, 1.0), (1.2, 3.0)]:
        c = curve_point(p, gamma, t)
        assert abs((1 + c.z) / (1 - c.z) - t * np.exp(1j * gamma)) < 1e-12
        assert abs(c.beta - (1 + 1j * math.tan(p.R * gamma))) < 1e-12
    with pytest.raises(OutOfDomain):
        curve_point(p, math.pi / 2, 1.0)


def test_curves_gamma_zero_give_lambda():
    p = FamilyParams(1.0, 0.9)
    for _, v in curve_samples(p, 0.0, (0.3, 1.0, 3.0, 9.0)):
        assert abs(v - 1.0) < 1e-12


def test_curve_constancy():
    vals = [v for _, v in curve_samples(FamilyParams(1.0, 0.9), 0.7, (0.3, 1.0, 3.0, 9.0))]
    assert (max(vals) - min(vals)) / vals[0] < 1e-8


def test_closed_form(rng):
    p = FamilyParams(1.0, 0.9)
    assert abs(closed_form_scaled(p, 0.0) - 1.0) < 1e-14
    r = np.linspace(-0.99, 0.99, 21)
    assert np.max(np.abs(closed_form_scaled(p, r) - 1.0)) < 1e-12
    z = random_disk(rng, 100, 0.95)
    direct = scaled_schwarzian(make_extremal(p), z)
    assert np.max(np.abs(closed_form_scaled(p, z) - direct) / direct) < 1e-9


@pytest.mark.parametrize("lam,R", [(1.5, 1.0), (6.0, 1.0), (9.5, 1.0), (1.0, 0.9), (0.5, 0.55)])
def test_coefficient_identities(lam, R):
    p = FamilyParams(lam, R)
    c = ClosedFormCoeffs.from_params(p)
    assert abs(c.At - 4 * (1 - p.a**2) * (1 - (p.a + R) ** 2)) < 1e-12
    assert abs(c.At + c.Bt + c.Ct - lam**2) < 1e-9
    if lam < 1.5:
        assert c.K > 0


def test_K_sign_for_R_one():
    # with R = 1, K reduces to 6 - lambda
    for lam in (1.5, 6.0, 9.5, 12.0):
        assert abs(ClosedFormCoeffs.from_params(FamilyParams(lam, 1.0)).K - (6 - lam)) < 1e-12


def test_psi_profile():
    _, psi = psi_profile(FamilyParams(1.0, 0.9), 0.0)
    assert abs(psi - 1.0) < 1e-15
    r = np.linspace(0, 0.999, 300)
    _, psi = psi_profile(FamilyParams(1.5, 1.0), r)
    assert np.max(np.abs(psi - 2.25)) < 1e-12
    phi, trig = psi_profile(FamilyParams(1.0, 0.9), np.arange(1, 10) / 10)
    assert np.max(np.abs(phi**2 - trig) / trig) < 1e-9
    with pytest.raises(OutOfDomain):
        psi_profile(FamilyParams(1.0, 0.9), 1.0)


def test_monotone_check_for_R_one():
    rep = psi_monotone_check(FamilyParams(9.5, 1.0))
    assert rep.passed and abs(rep.psi_max - 90.25) < 1e-9 and rep.in_regime


# The radial profile of the extremal at (1, 0.9) rises above its value at 0.
# Near r = 0, Psi = lam^2 + (K R^2 - 2 lam^2) gamma_r^2 + ..., and K R^2 > 2 lam^2 here.
# These are frozen values of that finding, reproduced by two independent forms.
def test_monotone_check_fails_at_lambda_one_R_point_nine():
    p = FamilyParams(1.0, 0.9)
    rep = psi_monotone_check(p)
    assert not rep.passed
    assert abs(rep.psi_max - 1.176779759588591) < 1e-9
    c = ClosedFormCoeffs.from_params(p)
    assert c.K * p.R**2 - 2 * p.lam**2 > 1.0
    est = sup_norm(schwarzian_field(make_extremal(p)), **SMALL)
    assert abs(est.value - 1.0847948036333) < 1e-9
    assert abs(est.value - math.sqrt(rep.psi_max)) < 1e-6


@pytest.mark.parametrize("lam,R_star", [(0.5, 0.58772), (1.0, 0.82320), (1.4, 0.96758)])
def test_monotone_threshold(lam, R_star):
    # the profile is maximal at 0 exactly while K R^2 <= 2 lam^2
    assert psi_monotone_check(FamilyParams(lam, R_star * 0.999)).passed
    assert not psi_monotone_check(FamilyParams(lam, min(R_star * 1.01, 1.0))).passed
    assert R_star > math.sqrt(2 * lam / 3)


def test_regime_warning():
    with pytest.warns(RegimeWarning):
        psi_monotone_check(FamilyParams(2.0, 0.5))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        psi_monotone_check(FamilyParams(1.5, 1.0))
