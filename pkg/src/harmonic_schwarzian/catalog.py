"""Analytic and harmonic maps of the unit disk.

Every :class:`AnalyticMap` evaluates closed-form third-order jets (and jets of
its derivative) through :mod:`.jets`; a :class:`HarmonicMap` is a pair
``f = h + conj(g)``. The module also provides the two operations that
generate affine and linear invariant families, :func:`koebe_transform` and
:func:`affine_change`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._validation import as_complex, check_points, check_real
from .exceptions import InvalidParameter, NotLocallyUnivalent, NotSensePreserving, OutOfDomain
from .jets import Jet, jet_compose, jet_log, jet_pow
from .series import DEFAULT_ORDER, Series

__all__ = [
    "AnalyticMap",
    "Identity",
    "Mobius",
    "Automorphism",
    "GeneralizedKoebe",
    "Lens",
    "AnalyticKoebe",
    "Strip",
    "Polynomial",
    "Rational",
    "Composition",
    "LinearCombination",
    "ShearPart",
    "ZERO",
    "HarmonicMap",
    "FamilyParams",
    "make_phi_a",
    "make_lens",
    "make_analytic",
    "make_harmonic_koebe",
    "make_f_r",
    "make_extremal",
    "koebe_transform",
    "affine_change",
]

# Gauss-Legendre rule for the value quadrature of shear parts
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)
_GL_PANEL = 0.25
_NORMALIZATION_TOL = 1e-12


def _ell(z) -> Jet:
    """Jet of the half-plane map (1 + z) / (1 - z)."""
    Z = Jet.identity(z)
    return (1 + Z) / (1 - Z)


class AnalyticMap:
    """Base class: an analytic function on the unit disk with closed-form jets.

    Subclasses implement :meth:`jet`; :meth:`djet` (the order-2 jet of the
    derivative) defaults to differentiating it. Maps whose values are not
    available in closed form override :meth:`djet` and :meth:`__call__`
    separately.
    """

    kind = "abstract"

    def jet(self, z) -> Jet:
        raise NotImplementedError

    def djet(self, z) -> Jet:
        return self.jet(z).derivative()

    def __call__(self, z):
        return self.jet(z).f0

    def series(self, order: int = DEFAULT_ORDER) -> Series:
        raise NotImplementedError(f"no closed-form series for {self.kind} maps")

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class Identity(AnalyticMap):
    kind = "identity"

    def jet(self, z):
        return Jet.identity(z)

    def __call__(self, z):
        return as_complex(z)

    def series(self, order=DEFAULT_ORDER):
        return Series.identity(order)


@dataclass(frozen=True)
class Mobius(AnalyticMap):
    """``T(z) = (a z + b) / (c z + d)`` with ``ad - bc != 0``."""

    a: complex
    b: complex
    c: complex
    d: complex
    kind = "mobius"

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.a * self.d - self.b * self.c == 0:
            raise InvalidParameter("Mobius map needs ad - bc != 0")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def _derivs(self, z, upto):
        z = as_complex(z)
        den = self.c * z + self.d
        if np.any(den == 0):
            raise OutOfDomain("point at the pole of the Mobius map")
        t1 = self.det / den**2
        out = [(self.a * z + self.b) / den, t1, -2 * self.c * t1 / den, 6 * self.c**2 * t1 / den**2]
        return out[: upto + 1], z

    def jet(self, z):
        d, z = self._derivs(z, 3)
        return Jet(d, base=z)

    def djet(self, z):
        d, z = self._derivs(z, 3)
        return Jet(d[1:], base=z)

    def __call__(self, z):
        z = as_complex(z)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def series(self, order=DEFAULT_ORDER):
        num = Series([self.b, self.a] + [0] * (order - 1)) if order >= 1 else Series([self.b])
        den = Series([self.d, self.c] + [0] * (order - 1)) if order >= 1 else Series([self.d])
        return num / den

    def params(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


@dataclass(frozen=True, init=False)
class Automorphism(Mobius):
    """Disk automorphism ``(alpha + z) / (1 + conj(alpha) z)``."""

    kind = "automorphism"

    def __init__(self, alpha):
        alpha = complex(alpha)
        if not abs(alpha) < 1:
            raise InvalidParameter("automorphism parameter must satisfy |alpha| < 1")
        object.__setattr__(self, "a", 1 + 0j)
        object.__setattr__(self, "b", alpha)
        object.__setattr__(self, "c", alpha.conjugate())
        object.__setattr__(self, "d", 1 + 0j)

    @property
    def alpha(self) -> complex:
        return self.b

    def inverse(self) -> "Automorphism":
        return Automorphism(-self.alpha)

    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True)
class GeneralizedKoebe(AnalyticMap):
    """``phi_a(z) = (((1 + z) / (1 - z))**a - 1) / (2a)``."""

    a: float
    kind = "generalized_koebe"

    def __post_init__(self):
        check_real(self.a, "a", low=0, low_open=True)

    def jet(self, z):
        return (jet_pow(_ell(z), self.a) - 1) / (2 * self.a)

    def series(self, order=DEFAULT_ORDER):
        power = Series.binomial(1, self.a, order) * Series.binomial(-1, -self.a, order)
        return (power - 1) / (2 * self.a)

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class Lens(AnalyticMap):
    """Lens map ``(l**R - 1) / (l**R + 1)`` with ``l = (1 + z) / (1 - z)``, 0 < R < 1."""

    R: float
    kind = "lens"

    def __post_init__(self):
        check_real(self.R, "R", low=0, high=1, low_open=True, high_open=True)

    def jet(self, z):
        w = jet_pow(_ell(z), self.R)
        return (w - 1) / (w + 1)

    def series(self, order=DEFAULT_ORDER):
        q = Series.binomial(1, self.R, order) * Series.binomial(-1, -self.R, order)
        return (q - 1) / (q + 1)

    def params(self):
        return {"R": self.R}


@dataclass(frozen=True)
class AnalyticKoebe(AnalyticMap):
    """``k(z) = z / (1 - z)**2``."""

    kind = "analytic_koebe"

    def jet(self, z):
        Z = Jet.identity(z)
        return Z / ((1 - Z) * (1 - Z))

    def series(self, order=DEFAULT_ORDER):
        return Series(np.arange(order + 1))


@dataclass(frozen=True)
class Strip(AnalyticMap):
    """``s(z) = log((1 + z) / (1 - z)) / 2``, onto a horizontal strip."""

    kind = "strip"

    def jet(self, z):
        return 0.5 * jet_log(_ell(z))

    def series(self, order=DEFAULT_ORDER):
        c = np.zeros(order + 1)
        c[1::2] = 1.0 / np.arange(1, order + 1, 2)
        return Series(c)


def _horner_jet(coeffs, Z: Jet) -> Jet:
    out = Jet.constant(coeffs[-1], base=Z.base)
    for c in coeffs[-2::-1]:
        out = out * Z + c
    return out


@dataclass(frozen=True)
class Polynomial(AnalyticMap):
    """Polynomial with coefficients in increasing degree."""

    coeffs: tuple
    kind = "polynomial"

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs) or (0j,)
        object.__setattr__(self, "coeffs", c)

    def jet(self, z):
        return _horner_jet(self.coeffs, Jet.identity(z))

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(as_complex(z), self.coeffs)

    def series(self, order=DEFAULT_ORDER):
        c = np.zeros(order + 1, dtype=complex)
        n = min(len(self.coeffs), order + 1)
        c[:n] = self.coeffs[:n]
        return Series(c)

    def params(self):
        return {"coeffs": list(self.coeffs)}


ZERO = Polynomial((0,))


@dataclass(frozen=True)
class Rational(AnalyticMap):
    """``p(z) / (1 - z)**n`` for a polynomial ``p`` (coefficients in increasing degree).

    The denominator is evaluated in factored form, which keeps full relative
    accuracy next to the pole at 1.
    """

    num: tuple
    pole_order: int
    kind = "rational"

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(complex(x) for x in self.num))
        if int(self.pole_order) < 0:
            raise InvalidParameter("pole order must be non-negative")
        object.__setattr__(self, "pole_order", int(self.pole_order))

    def jet(self, z):
        Z = Jet.identity(z)
        return _horner_jet(self.num, Z) / (1 - Z) ** self.pole_order

    def __call__(self, z):
        z = as_complex(z)
        return np.polynomial.polynomial.polyval(z, self.num) / (1 - z) ** self.pole_order

    def series(self, order=DEFAULT_ORDER):
        return Polynomial(self.num).series(order) * Series.binomial(-1, -self.pole_order, order)


@dataclass(frozen=True)
class Composition(AnalyticMap):
    """``outer(inner(z))``; jets via the chain rule, no numeric differentiation."""

    outer: AnalyticMap
    inner: AnalyticMap
    kind = "composition"

    def jet(self, z):
        ij = self.inner.jet(z)
        return jet_compose(self.outer.jet(ij.f0), ij)

    def djet(self, z):
        ij = self.inner.jet(z)
        od = self.outer.djet(ij.f0)
        return jet_compose(od, ij.truncate(2)) * ij.derivative()

    def __call__(self, z):
        return self.outer(self.inner(z))

    def series(self, order=DEFAULT_ORDER):
        inner = self.inner.series(order)
        if inner[0] != 0:
            raise NotImplementedError("series composition needs inner(0) = 0")
        outer = self.outer.series(order)
        out = Series.constant(outer[order], order)
        for k in range(order - 1, -1, -1):
            out = out * inner + outer[k]
        return out


@dataclass(frozen=True)
class LinearCombination(AnalyticMap):
    """``const + sum(coef * map)``."""

    terms: tuple
    const: complex = 0j
    kind = "linear_combination"

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((complex(c), m) for c, m in self.terms))
        object.__setattr__(self, "const", complex(self.const))

    def jet(self, z):
        out = None
        for c, m in self.terms:
            j = c * m.jet(z)
            out = j if out is None else out + j
        return out + self.const

    def djet(self, z):
        out = None
        for c, m in self.terms:
            j = c * m.djet(z)
            out = j if out is None else out + j
        return out

    def __call__(self, z):
        return sum(c * m(z) for c, m in self.terms) + self.const

    def series(self, order=DEFAULT_ORDER):
        out = Series.constant(self.const, order)
        for c, m in self.terms:
            out = out + c * m.series(order)
        return out


@dataclass(frozen=True)
class ShearPart(AnalyticMap):
    """Analytic or co-analytic part of the shear of ``phi`` with dilatation ``omega``.

    Solves ``h - g = phi``, ``g' = omega h'`` with ``h(0) = g(0) = 0``:
    ``h' = phi' / (1 - omega)`` and ``g' = omega h'``. Derivative jets are
    closed form; values come from Gauss-Legendre quadrature along ``[0, z]``.
    """

    phi: AnalyticMap
    omega: AnalyticMap
    part: str = "h"
    kind = "shear_part"

    def __post_init__(self):
        if self.part not in ("h", "g"):
            raise InvalidParameter("part must be 'h' or 'g'")

    def djet(self, z):
        om = self.omega.jet(z).truncate(2)
        hp = self.phi.djet(z) / (1 - om)
        return hp if self.part == "h" else om * hp

    def jet(self, z):
        d = self.djet(z)
        return Jet((self(z),) + d.derivs, base=d.base)

    def __call__(self, z):
        z = as_complex(z)
        panels = max(1, math.ceil(float(np.max(np.abs(z))) / _GL_PANEL))
        edges = np.arange(panels) / panels
        s = (edges[:, None] + (_GL_NODES[None, :] + 1) / (2 * panels)).ravel()
        w = np.tile(_GL_WEIGHTS / (2 * panels), panels)
        zz = np.multiply.outer(z, s)
        vals = self.djet(zz).f0
        return as_complex(z * np.sum(vals * w, axis=-1))

    def series(self, order=DEFAULT_ORDER):
        dphi = self.phi.series(order + 1).derivative()
        om = self.omega.series(order)
        hp = dphi / (1 - om)
        d = hp if self.part == "h" else om * hp
        return d.integrate().truncate(order)


class HarmonicMap:
    """Sense-preserving harmonic map ``f = h + conj(g)``.

    The dilatation ``omega = g'/h'`` is formed on demand by jet division, so
    every map supplies ``omega``, ``omega'`` and ``omega''``.
    """

    def __init__(self, h: AnalyticMap, g: AnalyticMap = ZERO, label: str = ""):
        self.h = h
        self.g = g
        self.label = label or f"{h.kind}+conj({g.kind})"

    def __repr__(self):
        return f"HarmonicMap({self.label})"

    def __call__(self, z):
        return self.h(z) + np.conj(self.g(z))

    def omega_jet(self, z) -> Jet:
        """Order-2 jet ``(omega, omega', omega'')`` of the dilatation."""
        dh = self.h.djet(z)
        if np.any(dh.f0 == 0):
            raise NotLocallyUnivalent("h' vanishes")
        return self.g.djet(z) / dh

    def dilatation(self, z):
        return self.omega_jet(z).f0

    @cached_property
    def dilatation_at_origin(self) -> complex:
        return complex(self.dilatation(0.0))

    @cached_property
    def normalized(self) -> bool:
        return bool(
            abs(self.h(0.0)) < _NORMALIZATION_TOL
            and abs(self.g(0.0)) < _NORMALIZATION_TOL
            and abs(self.h.djet(0.0).f0 - 1) < _NORMALIZATION_TOL
        )

    def precompose(self, inner: AnalyticMap) -> "HarmonicMap":
        """``f o inner`` for an analytic self-map ``inner`` of the disk."""
        return HarmonicMap(Composition(self.h, inner), Composition(self.g, inner),
                           label=f"({self.label})o{inner.kind}")


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(lambda, R)`` of the extremal construction and the derived ``a``."""

    lam: float
    R: float
    a: float = field(init=False)

    def __post_init__(self):
        lam = check_real(self.lam, "lambda", low=0)
        R = check_real(self.R, "R", low=0, high=1)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "a", math.sqrt(lam / 2 + 1 + R * R / 2) - R / 2)

    @classmethod
    def for_lambda(cls, lam: float, R: float | None = None) -> "FamilyParams":
        """Default ``R = 1`` when ``lambda >= 3/2`` (the only admissible value there)."""
        if R is None:
            if lam < 1.5:
                raise InvalidParameter("R must be given when lambda < 3/2")
            R = 1.0
        return cls(lam, R)


# constructors ----------------------------------------------------------------


def make_phi_a(a: float) -> GeneralizedKoebe:
    return GeneralizedKoebe(check_real(a, "a", low=0, low_open=True))


def make_lens(R: float) -> AnalyticMap:
    R = check_real(R, "R", low=0, high=1, low_open=True)
    return Identity() if R == 1 else Lens(R)


def make_analytic(f: AnalyticMap, label: str = "") -> HarmonicMap:
    return HarmonicMap(f, ZERO, label=label or f.kind)


def make_harmonic_koebe() -> HarmonicMap:
    """Harmonic Koebe function: shear of ``z/(1-z)**2`` with dilatation ``z``."""
    h = Rational((0, 1, -0.5, 1 / 6), 3)
    g = Rational((0, 0, 0.5, 1 / 6), 3)
    return HarmonicMap(h, g, label="harmonic_koebe")


def make_f_r(r: float) -> HarmonicMap:
    """``f_r(z) = z + (r/2) conj(z)**2``."""
    r = check_real(r, "r", low=0, high=1)
    return HarmonicMap(Identity(), Polynomial((0, 0, r / 2)), label=f"f_r(r={r!r})")


def make_extremal(p: FamilyParams) -> HarmonicMap:
    """Extremal map ``h0 + conj(g0)`` with ``h0 - g0 = phi_a`` and dilatation ``l_R``."""
    if not p.lam > 0:
        raise InvalidParameter("the extremal construction needs lambda > 0")
    phi = GeneralizedKoebe(p.a)
    omega = make_lens(p.R) if p.R > 0 else ZERO
    label = f"extremal(lambda={p.lam!r}, R={p.R!r})"
    return HarmonicMap(ShearPart(phi, omega, "h"), ShearPart(phi, omega, "g"), label=label)


# family operations ------------------------------------------------------------


def koebe_transform(f: HarmonicMap, zeta) -> HarmonicMap:
    """Renormalized pre-composition with the automorphism taking 0 to ``zeta``."""
    zeta = complex(check_points(zeta, "zeta"))
    if abs(f.dilatation(zeta)) >= 1:
        raise NotSensePreserving("f is not sense-preserving at zeta")
    sigma = Automorphism(zeta)
    c = (1 - abs(zeta) ** 2) * complex(f.h.djet(zeta).f0)
    h_zeta = complex(f.h(zeta))
    g_zeta = complex(f.g(zeta))
    H = LinearCombination(((1 / c, Composition(f.h, sigma)),), -h_zeta / c)
    cc = c.conjugate()
    G = LinearCombination(((1 / cc, Composition(f.g, sigma)),), -g_zeta / cc)
    return HarmonicMap(H, G, label=f"K[{zeta!r}]({f.label})")


def affine_change(f: HarmonicMap, eps) -> HarmonicMap:
    """``(f - conj(eps f)) / (1 - conj(eps) g'(0))``."""
    eps = complex(check_points(eps, "eps"))
    D = 1 - eps.conjugate() * complex(f.g.djet(0.0).f0)
    if abs(D) < 1e-14:
        raise InvalidParameter("degenerate affine change: conj(eps) g'(0) = 1")
    Dc = D.conjugate()
    H = LinearCombination(((1 / D, f.h), (-eps.conjugate() / D, f.g)))
    G = LinearCombination(((1 / Dc, f.g), (-eps / Dc, f.h)))
    return HarmonicMap(H, G, label=f"A[{eps!r}]({f.label})")
