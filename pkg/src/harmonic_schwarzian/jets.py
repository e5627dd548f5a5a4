"""Third-order complex Taylor jets.

A :class:`Jet` stores the value and the first few complex derivatives of an
analytic function at an (implicit) base point. Every field may be a complex
scalar or a numpy array, in which case all operations act elementwise; this
is what lets the norm estimators evaluate a whole polar grid in one pass.

Jets are built from :meth:`Jet.identity` and combined with ordinary
arithmetic operators::

    >>> z = Jet.identity(0.5)
    >>> [complex(d) for d in (z * z).derivs]
    [(0.25+0j), (1+0j), (2+0j), 0j]
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .exceptions import BasePointMismatch, BranchViolation, DivisionByZero

__all__ = [
    "Jet",
    "jet_arith",
    "jet_compose",
    "jet_pow",
    "jet_log",
    "jet_exp",
    "fd_oracle",
]

MAX_ORDER = 3
_FACT = (1.0, 1.0, 2.0, 6.0)


def _c(x):
    """Coerce to complex scalar or complex array."""
    arr = np.asarray(x, dtype=complex)
    return arr[()] if arr.ndim == 0 else arr


class Jet:
    """Value and derivatives ``(f, f', f'', f''')`` of an analytic function.

    Jets of order below 3 arise from :meth:`derivative` (the jet of ``f'`` only
    knows ``f'''`` as its second derivative). Binary operations truncate to the
    smaller order.
    """

    __slots__ = ("derivs", "base")

    def __init__(self, derivs: Sequence, base=None):
        derivs = tuple(_c(d) for d in derivs)
        if not 1 <= len(derivs) <= MAX_ORDER + 1:
            raise ValueError(f"jet order must be in 0..{MAX_ORDER}, got {len(derivs) - 1}")
        object.__setattr__(self, "derivs", derivs)
        if base is not None and not isinstance(base, (np.ndarray, np.complexfloating)):
            base = _c(base)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @classmethod
    def identity(cls, z0, order: int = MAX_ORDER) -> "Jet":
        z0 = _c(z0)
        one = np.ones_like(z0)
        zero = np.zeros_like(z0)
        return cls((z0, one, zero, zero)[: order + 1], base=z0)

    @classmethod
    def constant(cls, c, order: int = MAX_ORDER, base=None) -> "Jet":
        c = _c(c)
        zero = np.zeros_like(c)
        return cls((c,) + (zero,) * order, base=base)

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    @property
    def f0(self):
        return self.derivs[0]

    @property
    def f1(self):
        return self.derivs[1]

    @property
    def f2(self):
        return self.derivs[2]

    @property
    def f3(self):
        return self.derivs[3]

    def taylor(self) -> tuple:
        """Taylor coefficients ``f^(k) / k!``."""
        return tuple(d / _FACT[k] for k, d in enumerate(self.derivs))

    @classmethod
    def from_taylor(cls, coeffs, base=None) -> "Jet":
        return cls([c * _FACT[k] for k, c in enumerate(coeffs)], base=base)

    def derivative(self) -> "Jet":
        """Jet of ``f'`` (one order lower)."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet(self.derivs[1:], base=self.base)

    def truncate(self, order: int) -> "Jet":
        return Jet(self.derivs[: order + 1], base=self.base)

    def conj_value(self):
        return np.conj(self.f0)

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order, base=self.base)

    def __add__(self, other):
        return jet_arith("add", self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return jet_arith("sub", self, self._coerce(other))

    def __rsub__(self, other):
        return jet_arith("sub", self._coerce(other), self)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            c = _c(other)
            return Jet([c * d for d in self.derivs], base=self.base)
        return jet_arith("mul", self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            c = _c(other)
            if np.any(c == 0):
                raise DivisionByZero("jet divided by zero scalar")
            return Jet([d / c for d in self.derivs], base=self.base)
        return jet_arith("div", self, other)

    def __rtruediv__(self, other):
        return jet_arith("div", self._coerce(other), self)

    def __neg__(self):
        return Jet([-d for d in self.derivs], base=self.base)

    def __pow__(self, a):
        if isinstance(a, int) and a >= 0:
            out = Jet.constant(1.0, self.order, base=self.base)
            for _ in range(a):
                out = out * self
            return out
        return jet_pow(self, a)

    def __repr__(self):
        return f"Jet{self.derivs!r}"


def _merge_base(x: Jet, y: Jet):
    if x.base is y.base:
        return x.base
    if x.base is None:
        return y.base
    if y.base is not None and not np.allclose(x.base, y.base, rtol=1e-12, atol=1e-300):
        raise BasePointMismatch("jets at different base points cannot be combined")
    return x.base


def jet_arith(op: str, x: Jet, y: Jet) -> Jet:
    """Combine two jets at the same base point with ``add/sub/mul/div``."""
    n = min(x.order, y.order)
    base = _merge_base(x, y)
    if op == "add":
        return Jet([x.derivs[k] + y.derivs[k] for k in range(n + 1)], base=base)
    if op == "sub":
        return Jet([x.derivs[k] - y.derivs[k] for k in range(n + 1)], base=base)
    a = x.taylor()[: n + 1]
    b = y.taylor()[: n + 1]
    if op == "mul":
        c = [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)]
        return Jet.from_taylor(c, base=base)
    if op == "div":
        if np.any(b[0] == 0):
            raise DivisionByZero("jet division by a jet with zero value")
        q = []
        for k in range(n + 1):
            s = a[k] - sum(b[j] * q[k - j] for j in range(1, k + 1))
            q.append(s / b[0])
        return Jet.from_taylor(q, base=base)
    raise ValueError(f"unknown jet operation {op!r}")


def _chain(derivs_outer: Sequence, inner: Jet, order: int | None = None) -> Jet:
    """Faa di Bruno to third order: outer derivatives are taken at ``inner.f0``."""
    n = inner.order if order is None else min(order, inner.order)
    n = min(n, len(derivs_outer) - 1)
    F = derivs_outer
    u = inner.derivs
    out = [F[0]]
    if n >= 1:
        out.append(F[1] * u[1])
    if n >= 2:
        out.append(F[2] * u[1] ** 2 + F[1] * u[2])
    if n >= 3:
        out.append(F[3] * u[1] ** 3 + 3 * F[2] * u[1] * u[2] + F[1] * u[3])
    return Jet(out, base=inner.base)


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of ``outer o inner``; ``outer`` must be based at ``inner.f0``."""
    if outer.base is not None and not np.allclose(outer.base, inner.f0, rtol=1e-12, atol=1e-14):
        raise BasePointMismatch("outer jet is not based at the inner jet's value")
    return _chain(outer.derivs, inner, min(outer.order, inner.order))


def _check_right_half_plane(x: Jet, what: str):
    if np.any(~(np.real(x.f0) > 0)):
        raise BranchViolation(f"{what} needs Re(argument) > 0 for the principal branch")


def jet_pow(x: Jet, a: float) -> Jet:
    """``exp(a * Log(x))`` with the principal logarithm; ``Re(x) > 0`` required."""
    _check_right_half_plane(x, "jet_pow")
    a = float(a)
    if a == 0.0:
        return Jet.constant(1.0, x.order, base=x.base)
    if a == 1.0:
        return x
    w = x.f0
    p = np.exp(a * np.log(w))
    F = [p, a * p / w, a * (a - 1) * p / w**2, a * (a - 1) * (a - 2) * p / w**3]
    return _chain(F, x)


def jet_log(x: Jet) -> Jet:
    """Principal logarithm; restricted to the right half-plane like :func:`jet_pow`."""
    _check_right_half_plane(x, "jet_log")
    w = x.f0
    F = [np.log(w), 1 / w, -1 / w**2, 2 / w**3]
    return _chain(F, x)


def jet_exp(x: Jet) -> Jet:
    e = np.exp(x.f0)
    return _chain([e, e, e, e], x)


# Finite differences --------------------------------------------------------

# fourth-order accurate central stencils, offsets -3..3
_STENCILS = {
    1: ({-2: 1 / 12, -1: -8 / 12, 1: 8 / 12, 2: -1 / 12}, 1),
    2: ({-2: -1 / 12, -1: 16 / 12, 0: -30 / 12, 1: 16 / 12, 2: -1 / 12}, 2),
    3: ({-3: 1 / 8, -2: -1, -1: 13 / 8, 1: -13 / 8, 2: 1, 3: -1 / 8}, 3),
}


def fd_oracle(f: Callable, z, step: float = 1e-3) -> Jet:
    """Central-difference estimate of ``(f, f', f'', f''')`` at ``z``.

    ``f`` is any callable returning values of an analytic function; only real
    displacements ``z + k*step`` are used, which is enough for holomorphic
    functions. Independent of the jet machinery, so it serves as a cross-check.
    """
    z = _c(z)
    samples = {k: _c(f(z + k * step)) for k in range(-3, 4)}
    out = [samples[0]]
    for order in (1, 2, 3):
        weights, p = _STENCILS[order]
        out.append(sum(w * samples[k] for k, w in weights.items()) / step**p)
    return Jet(out, base=z)

