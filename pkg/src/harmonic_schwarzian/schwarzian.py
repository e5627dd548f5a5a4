"""Schwarzian derivatives and hyperbolic derivatives.

All functions accept a complex scalar or an array of points and evaluate
elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_points
from .catalog import AnalyticMap, HarmonicMap
from .exceptions import NotLocallyUnivalent, NotSensePreserving, OutOfDomain
from .jets import Jet

__all__ = [
    "SchwarzianSample",
    "schwarzian_analytic",
    "schwarzian_harmonic",
    "scaled_schwarzian",
    "hyperbolic_derivative",
    "SENSE_PRESERVING_TOL",
]

# The harmonic Schwarzian is singular as |omega| -> 1; refuse to evaluate closer than this.
SENSE_PRESERVING_TOL = 1e-14


@dataclass(frozen=True)
class SchwarzianSample:
    z: complex
    value: complex
    scaled: float


def _sh_from_derivative(dh: Jet):
    """Analytic Schwarzian from the jet ``(h', h'', h''')``; returns ``(Sh, h''/h')``."""
    if np.any(dh.f0 == 0):
        raise NotLocallyUnivalent("derivative vanishes")
    p = dh.f1 / dh.f0
    return dh.f2 / dh.f0 - 1.5 * p * p, p


def schwarzian_analytic(j: Jet):
    """``f'''/f' - (3/2)(f''/f')**2`` from a third-order jet."""
    return _sh_from_derivative(j.derivative())[0]


def schwarzian_harmonic(f: HarmonicMap, z) -> SchwarzianSample:
    """Harmonic Schwarzian of a sense-preserving ``f = h + conj(g)``."""
    z = check_points(z)
    dh = f.h.djet(z)
    sh, pre = _sh_from_derivative(dh)
    om = f.g.djet(z) / dh
    w, w1, w2 = om.derivs
    gap = 1 - np.abs(w) ** 2
    if np.any(~(gap >= SENSE_PRESERVING_TOL)):
        raise NotSensePreserving("|omega(z)| >= 1 (or numerically indistinguishable from 1)")
    t = np.conj(w) / gap
    s = sh + t * (pre * w1 - w2) - 1.5 * (w1 * t) ** 2
    scaled = np.abs(s) * (1 - np.abs(z) ** 2) ** 2
    return SchwarzianSample(z=z, value=s, scaled=scaled)


def scaled_schwarzian(f: HarmonicMap, z):
    """``|S_f(z)| (1 - |z|**2)**2``."""
    return schwarzian_harmonic(f, z).scaled


def hyperbolic_derivative(omega, z):
    """``omega'(z) (1 - |z|**2) / (1 - |omega(z)|**2)`` for a self-map of the disk.

    ``omega`` is an :class:`AnalyticMap`, or a :class:`HarmonicMap` whose
    dilatation is used.
    """
    z = check_points(z)
    if isinstance(omega, HarmonicMap):
        j = omega.omega_jet(z)
    elif isinstance(omega, AnalyticMap):
        j = omega.jet(z)
    else:
        raise TypeError(f"expected AnalyticMap or HarmonicMap, got {type(omega).__name__}")
    w = j.f0
    if np.any(~(np.abs(w) < 1)):
        raise OutOfDomain("omega(z) is not inside the unit disk")
    return j.f1 * (1 - np.abs(z) ** 2) / (1 - np.abs(w) ** 2)
