"""Sup-norm estimation over the unit disk and closed forms for the extremal map.

:class:`SchwarzianNorm` and :class:`HyperbolicNorm` follow the scikit-learn
estimator conventions: hyper-parameters in ``__init__``, ``fit`` stores the
estimate in trailing-underscore attributes, ``transform`` evaluates the
fitted field at new points. :func:`sup_norm` is the functional core both
estimators share.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_points, check_real
from .catalog import AnalyticMap, FamilyParams, HarmonicMap, make_extremal
from .exceptions import InvalidParameter, OutOfDomain, RegimeWarning
from .schwarzian import hyperbolic_derivative, scaled_schwarzian

__all__ = [
    "NormEstimate",
    "sup_norm",
    "polar_grid",
    "schwarzian_field",
    "hyperbolic_field",
    "SchwarzianNorm",
    "HyperbolicNorm",
    "CurvePoint",
    "curve_point",
    "curve_samples",
    "ClosedFormCoeffs",
    "closed_form_scaled",
    "psi_profile",
    "MonotoneReport",
    "psi_monotone_check",
]

GAMMA_CAP = math.pi / 2 - 1e-6
BOUNDARY_RADIUS = 0.999
_PENALTY = 1e300


@dataclass(frozen=True)
class NormEstimate:
    value: float
    argmax: complex
    attained: bool
    grid: tuple
    refinement_error: float


def schwarzian_field(f: HarmonicMap) -> Callable:
    return lambda z: scaled_schwarzian(f, z)


def hyperbolic_field(omega) -> Callable:
    return lambda z: np.abs(hyperbolic_derivative(omega, z))


def polar_grid(n_r: int = 256, n_theta: int = 512):
    """Radii ``1 - 2**(-8 j / n_r)`` (clustered toward 1) and equispaced angles."""
    radii = 1.0 - 2.0 ** (-8.0 * np.arange(n_r) / n_r)
    thetas = 2 * np.pi * np.arange(n_theta) / n_theta
    return radii, thetas


def _pick(cands, tie_rtol):
    """Largest value; among near-ties the smallest |z|, then smallest Arg z."""
    best = max(v for v, _ in cands)
    tol = tie_rtol * max(1.0, abs(best))
    ties = [(abs(z), np.angle(z), v, z) for v, z in cands if v >= best - tol]
    ties.sort(key=lambda t: (round(t[0], 12), t[1]))
    return best, ties[0][3]


def sup_norm(
    field: Callable,
    n_r: int = 256,
    n_theta: int = 512,
    n_refine: int = 8,
    xtol: float = 1e-10,
    ladder: tuple = (3, 4, 5, 6, 7),
    tie_rtol: float = 1e-7,
) -> NormEstimate:
    """Estimate ``sup |field|`` over the open unit disk.

    Three stages: a polar grid scan, Nelder-Mead refinement of the best
    ``n_refine`` grid cells (restricted to the grid's outer radius), and a
    boundary ladder at ``r = 1 - 10**-k``. When the ladder increases
    monotonically along some ray and its linear extrapolation beats the
    interior maximum, the limit is reported with ``attained=False``.
    """
    if n_r < 2 or n_theta < 1 or n_refine < 0:
        raise InvalidParameter("grid sizes must be positive")
    if not 0 < xtol <= 1e-4:
        raise InvalidParameter("refinement tolerance must lie in (0, 1e-4]")
    ladder = tuple(sorted(ladder))
    if len(ladder) < 2:
        raise InvalidParameter("boundary ladder needs at least two rungs")

    radii, thetas = polar_grid(n_r, n_theta)
    Z = radii[:, None] * np.exp(1j * thetas)[None, :]
    V = np.asarray(field(Z), dtype=float)
    r_cap = radii[-1]

    cands = [(float(V[0, 0]), 0j)]
    cands += [(float(V[i, j]), complex(Z[i, j])) for i in range(1, n_r) for j in (int(np.argmax(V[i])),)]
    grid_best = float(np.max(V))

    # refinement of the top cells
    order = np.argsort(V, axis=None)[::-1]
    seen = set()
    refined = []
    for flat in order:
        if len(refined) >= n_refine:
            break
        i, j = np.unravel_index(flat, V.shape)
        key = (0, 0) if i == 0 else (int(i), int(j))
        if key in seen:
            continue
        seen.add(key)
        z0 = complex(Z[i, j])
        step = max(radii[min(i + 1, n_r - 1)] - radii[i], radii[i] * 2 * np.pi / n_theta, 1e-6)

        def neg(x):
            z = complex(x[0], x[1])
            if abs(z) > r_cap:
                return _PENALTY
            return -float(field(z))

        simplex = np.array([[z0.real, z0.imag], [z0.real + step, z0.imag], [z0.real, z0.imag + step]])
        res = minimize(
            neg,
            [z0.real, z0.imag],
            method="Nelder-Mead",
            options={"xatol": xtol, "fatol": 1e-15, "maxfev": 800, "initial_simplex": simplex},
        )
        if res.fun < _PENALTY:
            zr = complex(res.x[0], res.x[1])
            refined.append((-float(res.fun), zr))
    cands += refined
    interior_best = max(v for v, _ in cands)

    # boundary ladder
    eps = 10.0 ** -np.array(ladder, dtype=float)
    rungs = 1.0 - eps
    L = np.asarray(field(rungs[:, None] * np.exp(1j * thetas)[None, :]), dtype=float)
    scale = max(1.0, abs(interior_best))
    increasing = np.all(np.diff(L, axis=0) > tie_rtol * scale, axis=0)
    factor = eps[-1] / (eps[-2] - eps[-1])
    limits = L[-1] + (L[-1] - L[-2]) * factor

    boundary = None
    if np.any(increasing):
        masked = np.where(increasing, limits, -np.inf)
        near = np.flatnonzero(masked >= np.max(masked) - tie_rtol * scale)
        j = int(near[np.argmin(np.angle(np.exp(1j * thetas[near])))])
        theta_best, lim_best = float(thetas[j]), float(limits[j])

        def neg_limit(t):
            v = np.asarray(field(rungs[-2:] * np.exp(1j * t)), dtype=float)
            return -(v[1] + (v[1] - v[0]) * factor)

        dth = 2 * np.pi / n_theta
        res = minimize_scalar(neg_limit, bounds=(theta_best - dth, theta_best + dth),
                              method="bounded", options={"xatol": xtol})
        if -res.fun > lim_best + tie_rtol * scale:
            theta_best, lim_best = float(res.x), float(-res.fun)
        if lim_best > interior_best + tie_rtol * scale:
            last = float(field(rungs[-1] * np.exp(1j * theta_best)))
            boundary = (lim_best, complex(rungs[-1] * np.exp(1j * theta_best)), abs(lim_best - last))

    grid = (int(n_r), int(n_theta))
    if boundary is not None:
        value, arg, err = boundary
        arg = complex(np.round(arg.real, 15), np.round(arg.imag, 15))
        return NormEstimate(value=value, argmax=arg, attained=False, grid=grid, refinement_error=err)

    for k in range(len(ladder)):
        j = int(np.argmax(L[k]))
        cands.append((float(L[k, j]), complex(rungs[k] * np.exp(1j * thetas[j]))))
    value, arg = _pick(cands, tie_rtol)
    err = abs(max((v for v, _ in refined), default=grid_best) - grid_best)
    return NormEstimate(value=float(value), argmax=arg, attained=True, grid=grid, refinement_error=err)


class _SupNormEstimator(BaseEstimator):
    def __init__(self, n_r=256, n_theta=512, n_refine=8, xtol=1e-10,
                 ladder=(3, 4, 5, 6, 7), tie_rtol=1e-7):
        self.n_r = n_r
        self.n_theta = n_theta
        self.n_refine = n_refine
        self.xtol = xtol
        self.ladder = ladder
        self.tie_rtol = tie_rtol

    def _field(self, target):
        raise NotImplementedError

    def fit(self, X, y=None):
        """Estimate the sup-norm of the field attached to ``X``."""
        self.field_ = self._field(X)
        self.estimate_ = sup_norm(self.field_, n_r=self.n_r, n_theta=self.n_theta,
                                  n_refine=self.n_refine, xtol=self.xtol,
                                  ladder=tuple(self.ladder), tie_rtol=self.tie_rtol)
        self.norm_ = self.estimate_.value
        self.argmax_ = self.estimate_.argmax
        self.attained_ = self.estimate_.attained
        return self

    def transform(self, X):
        """Evaluate the fitted field at points ``X`` of the disk."""
        check_is_fitted(self, "estimate_")
        return np.asarray(self.field_(check_points(X, "X")), dtype=float)

    def fit_transform(self, X, y=None, points=None):
        self.fit(X)
        return self.transform(points if points is not None else [self.argmax_])


class SchwarzianNorm(_SupNormEstimator):
    """Estimator of ``sup |S_f(z)| (1 - |z|**2)**2`` for a :class:`HarmonicMap` ``f``.

    >>> from harmonic_schwarzian import make_analytic, AnalyticKoebe
    >>> est = SchwarzianNorm(n_r=64, n_theta=64).fit(make_analytic(AnalyticKoebe()))
    >>> round(est.norm_, 6)
    6.0
    """

    def _field(self, target):
        if not isinstance(target, HarmonicMap):
            raise TypeError("SchwarzianNorm.fit expects a HarmonicMap")
        return schwarzian_field(target)


class HyperbolicNorm(_SupNormEstimator):
    """Estimator of the hyperbolic norm ``sup |omega*|`` of a self-map or a dilatation."""

    def _field(self, target):
        if not isinstance(target, (HarmonicMap, AnalyticMap)):
            raise TypeError("HyperbolicNorm.fit expects an AnalyticMap or HarmonicMap")
        return hyperbolic_field(target)


# curves C_gamma and the closed forms ------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    gamma: float
    t: float
    z: complex
    w: complex
    beta: complex


def curve_point(p: FamilyParams, gamma: float, t: float) -> CurvePoint:
    """Point of ``{Arg((1+z)/(1-z)) = gamma}`` with ``(1+z)/(1-z) = t e^{i gamma}``."""
    gamma = check_real(gamma, "gamma", low=0)
    if gamma > GAMMA_CAP:
        raise OutOfDomain("gamma too close to pi/2")
    t = check_real(t, "t", low=0, low_open=True)
    q = t * np.exp(1j * gamma)
    z = complex((q - 1) / (q + 1))
    if not abs(z) < 1:
        raise OutOfDomain("curve point left the disk")
    w = complex(t**p.R * np.exp(1j * p.R * gamma))
    return CurvePoint(gamma=gamma, t=t, z=z, w=w, beta=w / w.real)


def curve_samples(p: FamilyParams, gamma: float, ts) -> list:
    """``(CurvePoint, scaled)`` pairs along ``C_gamma``, scaled via the direct pipeline."""
    f = make_extremal(p)
    pts = [curve_point(p, gamma, t) for t in ts]
    vals = scaled_schwarzian(f, np.array([c.z for c in pts]))
    return [(c, float(v)) for c, v in zip(pts, np.atleast_1d(vals))]


@dataclass(frozen=True)
class ClosedFormCoeffs:
    """Coefficients of the quadratic in ``beta`` and of its squared modulus."""

    A: float
    B: float
    C: float
    At: float
    Bt: float
    Ct: float
    K: float

    @classmethod
    def from_params(cls, p: FamilyParams) -> "ClosedFormCoeffs":
        a, R, lam = p.a, p.R, p.lam
        A = 2 * (1 - a * a)
        B = 2 * R * (R - a)
        C = -1.5 * R * R
        return cls(
            A=A, B=B, C=C,
            At=A * A + 2 * A * B + 4 * A * C,
            Bt=B * B + 2 * B * C - 2 * A * C,
            Ct=C * C,
            K=R**4 + 4 * a * a * R * R + 4 * a * R**3 - 3 * R * R * lam,
        )


def closed_form_scaled(p: FamilyParams, z):
    """``|A + B beta + C beta**2| ((1 - |z|**2) / |1 - z**2|)**2`` with ``beta = w / Re w``."""
    z = check_points(z)
    c = ClosedFormCoeffs.from_params(p)
    w = np.exp(p.R * np.log((1 + z) / (1 - z)))
    beta = w / w.real
    weight = ((1 - np.abs(z) ** 2) / np.abs(1 - z * z)) ** 2
    return np.abs(c.A + c.B * beta + c.C * beta * beta) * weight


def _gamma_r(r):
    r = np.asarray(r, dtype=float)
    return np.arccos((1 - r * r) / (1 + r * r))


def psi_profile(p: FamilyParams, r):
    """Scaled Schwarzian of the extremal map on the imaginary axis, two ways.

    Returns ``(phi_form, trig_form)``: ``phi_form`` is ``|A + B b + C b**2|``
    times ``((1 - r**2)/(1 + r**2))**2`` with ``b = 1 + i tan(R gamma_r)``;
    ``trig_form`` is its square written as a trigonometric polynomial in
    ``gamma_r``.
    """
    r = np.asarray(r, dtype=float)
    if np.any((r < 0) | (r >= 1)):
        raise OutOfDomain("r must lie in [0, 1)")
    c = ClosedFormCoeffs.from_params(p)
    g = _gamma_r(r)
    T = np.tan(p.R * g)
    beta = 1 + 1j * T
    phi_form = np.abs(c.A + c.B * beta + c.C * beta * beta) * ((1 - r * r) / (1 + r * r)) ** 2
    c4 = np.cos(g) ** 4
    trig_form = p.lam**2 * c4 + c.K * T**2 * c4 + 2.25 * p.R**4 * T**4 * c4
    return phi_form, trig_form


@dataclass(frozen=True)
class MonotoneReport:
    passed: bool
    psi0: float
    psi_max: float
    max_violation: float
    max_increase: float
    nonincreasing: bool
    in_regime: bool
    samples: int


def psi_monotone_check(p: FamilyParams, samples: int = 10_000, tol: float = 1e-9) -> MonotoneReport:
    """Check ``Psi(r) <= Psi(0) + tol`` on ``samples`` equispaced radii in ``[0, 1)``."""
    if samples < 2:
        raise InvalidParameter("need at least two samples")
    in_regime = (p.lam <= 1.5 and p.a < 1) or p.R == 1
    if not in_regime:
        warnings.warn(f"(lambda={p.lam}, R={p.R}) is outside the proven regime", RegimeWarning,
                      stacklevel=2)
    r = np.arange(samples) / samples
    _, psi = psi_profile(p, r)
    psi0 = float(psi[0])
    violation = float(np.max(psi - psi0))
    increase = float(max(np.max(np.diff(psi)), 0.0))
    return MonotoneReport(
        passed=violation <= tol,
        psi0=psi0,
        psi_max=float(np.max(psi)),
        max_violation=max(violation, 0.0),
        max_increase=increase,
        nonincreasing=increase <= tol,
        in_regime=in_regime,
        samples=samples,
    )
