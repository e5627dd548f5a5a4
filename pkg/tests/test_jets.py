import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonic_schwarzian import (
    AnalyticKoebe,
    Automorphism,
    BasePointMismatch,
    BranchViolation,
    DivisionByZero,
    GeneralizedKoebe,
    Jet,
    Lens,
    Strip,
    fd_oracle,
    jet_arith,
    jet_compose,
    jet_pow,
)
from harmonic_schwarzian.catalog import Identity, Mobius, Rational, make_harmonic_koebe
from harmonic_schwarzian.jets import jet_exp, jet_log

from harmonic_schwarzian.acceptance import random_disk as disk_points

coords = st.floats(-0.9, 0.9, allow_nan=False)
points = st.builds(complex, coords, coords).filter(lambda z: abs(z) < 0.9)


def close(j, expected, tol=1e-12):
    return all(abs(complex(a) - complex(b)) <= tol for a, b in zip(j.derivs, expected))


def test_product_of_identities():
    z = Jet.identity(0.5)
    assert close(jet_arith("mul", z, z), (0.25, 1.0, 2.0, 0.0))


@given(points)
def test_self_division_is_one(z0):
    x = Jet.identity(z0) * Jet.identity(z0) + 2.0
    assert close(jet_arith("div", x, x), (1, 0, 0, 0))


@given(points)
def test_cancellation(z0):
    sq = Jet.identity(z0) * Jet.identity(z0)
    assert close(jet_arith("add", sq, -sq), (0, 0, 0, 0))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Jet.identity(0.3) / (Jet.identity(0.3) - 0.3)


def test_compose_square_with_identity():
    sq = Jet((0.09, 0.6, 2.0, 0.0), base=0.3)
    assert close(jet_compose(sq, Jet.identity(0.3)), (0.09, 0.6, 2, 0))


@given(points)
def test_compose_identity_left(z0):
    f = AnalyticKoebe().jet(z0)
    outer = Jet.identity(complex(f.f0))
    assert close(jet_compose(outer, f), f.derivs, 1e-9)


@given(points, points)
def test_automorphism_inverse(alpha, z0):
    s = Automorphism(alpha)
    inner = s.jet(z0)
    back = jet_compose(s.inverse().jet(complex(inner.f0)), inner)
    assert close(back, (z0, 1, 0, 0), 1e-9)


def test_compose_base_mismatch():
    with pytest.raises(BasePointMismatch):
        jet_compose(Jet.identity(0.1), Jet.identity(0.2))


def test_pow_of_ell_at_origin():
    ell = (1 + Jet.identity(0.0)) / (1 - Jet.identity(0.0))
    for a in (0.3, 1.7, 2.0):
        j = jet_pow(ell, a)
        assert abs(j.f0 - 1) < 1e-15 and abs(j.f1 - 2 * a) < 1e-14
        fd = fd_oracle(lambda z: ((1 + z) / (1 - z)) ** a, 0.0)
        assert close(j.truncate(2), fd.derivs[:3], 1e-6)


def test_pow_special_exponents():
    x = Jet.identity(0.4) + 1
    assert jet_pow(x, 1) is x
    assert close(jet_pow(x, 0), (1, 0, 0, 0))


def test_pow_branch_guard():
    with pytest.raises(BranchViolation):
        jet_pow(Jet.identity(-0.5), 0.5)
    with pytest.raises(BranchViolation):
        jet_log(Jet.identity(-0.5))


@given(points)
def test_exp_log_roundtrip(z0):
    x = Jet.identity(z0) + 1.5
    assert close(jet_exp(jet_log(x)), x.derivs, 1e-12)


def test_vectorized_matches_scalar(rng):
    z = disk_points(rng, 7)
    vec = GeneralizedKoebe(1.3).jet(z)
    for k, zk in enumerate(z):
        sc = GeneralizedKoebe(1.3).jet(zk)
        assert close(Jet([d[k] for d in vec.derivs]), sc.derivs, 1e-13)


def test_fd_oracle_examples():
    assert abs(fd_oracle(lambda z: z, 0.3 + 0.1j).f1 - 1) < 1e-8
    assert abs(fd_oracle(GeneralizedKoebe(2.0), 0.0).f2 - 4) < 1e-6
    assert abs(fd_oracle(Lens(0.5), 0.0).f1 - 0.5) < 1e-8


CATALOG = [
    Identity(),
    Mobius(1 + 1j, 0.2, 0.3, 2.0),
    Automorphism(0.3 - 0.4j),
    GeneralizedKoebe(0.7),
    GeneralizedKoebe(2.4),
    Lens(0.35),
    AnalyticKoebe(),
    Strip(),
    Rational((0, 1, -0.5, 1 / 6), 3),
]


@pytest.mark.parametrize("f", CATALOG, ids=lambda f: f.kind)
def test_jets_agree_with_finite_differences(f, rng):
    worst = np.zeros(4)
    for z in disk_points(rng, 100, 0.7):
        j = f.jet(z)
        fd = fd_oracle(f, z)
        for k in (1, 2, 3):
            worst[k] = max(worst[k], abs(j.derivs[k] - fd.derivs[k]) / max(1.0, abs(j.derivs[k])))
    assert worst[1] < 1e-6 and worst[2] < 1e-6 and worst[3] < 1e-4


def test_harmonic_koebe_parts_values():
    K = make_harmonic_koebe()
    z = 0.2 + 0.3j
    k = z / (1 - z) ** 2
    assert abs(K.h(z) - K.g(z) - k) < 1e-14
    assert cmath.isclose(K.h.jet(z).f0, K.h(z), rel_tol=1e-14)


def test_jet_is_immutable():
    j = Jet.identity(0.1)
    with pytest.raises(AttributeError):
        j.derivs = (0,)


@settings(max_examples=50)
@given(points, st.floats(0.1, 3.0))
def test_pow_matches_repeated_multiplication(z0, a):
    x = Jet.identity(z0) + 1.2
    assert close(jet_pow(x, 2.0), (x * x).derivs, 1e-10)
