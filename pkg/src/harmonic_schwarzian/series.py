"""Truncated power series at the origin.

Used as an independent route to Taylor coefficients (``a_n``, ``b_n``) of the
catalog maps, separate from pointwise jet evaluation.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DivisionByZero

__all__ = ["Series", "series_arith", "series_coeffs", "binomial", "DEFAULT_ORDER"]

DEFAULT_ORDER = 16


def binomial(p: float, k: int) -> float:
    """Generalized binomial coefficient ``C(p, k)`` for real ``p``."""
    out = 1.0
    for j in range(k):
        out *= (p - j) / (j + 1)
    return out


class Series:
    """Power series ``sum c_k z^k`` truncated after ``z^N``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"Series({self.coeffs.tolist()!r})"

    # constructors ----------------------------------------------------------

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "Series":
        out = np.zeros(order + 1, dtype=complex)
        out[0] = c
        return cls(out)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "Series":
        out = np.zeros(order + 1, dtype=complex)
        if order >= 1:
            out[1] = 1.0
        return cls(out)

    @classmethod
    def binomial(cls, c: complex, p: float, order: int = DEFAULT_ORDER) -> "Series":
        """``(1 + c z)^p`` with the principal branch (value 1 at the origin)."""
        return cls([binomial(p, k) * c**k for k in range(order + 1)])

    # helpers -----------------------------------------------------------------

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs[: order + 1])

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.constant(other, self.order)

    def derivative(self) -> "Series":
        k = np.arange(1, self.order + 1)
        if k.size == 0:
            return Series([0.0])
        return Series(self.coeffs[1:] * k)

    def integrate(self) -> "Series":
        """Antiderivative vanishing at 0; order grows by one."""
        k = np.arange(1, self.order + 2)
        return Series(np.concatenate([[0.0], self.coeffs / k]))

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def pow(self, a: float) -> "Series":
        """``self ** a`` for a series with nonzero constant term.

        Uses the J.C.P. Miller recurrence; the constant term is raised with the
        principal branch.
        """
        q = self.coeffs
        if q[0] == 0:
            raise DivisionByZero("real power of a series needs a nonzero constant term")
        n = self.order
        p = np.zeros(n + 1, dtype=complex)
        p[0] = q[0] ** a
        for m in range(1, n + 1):
            k = np.arange(1, m + 1)
            p[m] = np.sum(((a + 1) * k - m) * q[k] * p[m - k]) / (m * q[0])
        return Series(p)

    def __add__(self, other):
        return series_arith("add", self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return series_arith("sub", self, self._coerce(other))

    def __rsub__(self, other):
        return series_arith("sub", self._coerce(other), self)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series(self.coeffs * complex(other))
        return series_arith("mul", self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Series):
            if other == 0:
                raise DivisionByZero("series divided by zero")
            return Series(self.coeffs / complex(other))
        return series_arith("div", self, other)

    def __rtruediv__(self, other):
        return series_arith("div", self._coerce(other), self)

    def __neg__(self):
        return Series(-self.coeffs)


def series_arith(op: str, x: Series, y: Series) -> Series:
    n = min(x.order, y.order)
    a = x.coeffs[: n + 1]
    b = y.coeffs[: n + 1]
    if op == "add":
        return Series(a + b)
    if op == "sub":
        return Series(a - b)
    if op == "mul":
        return Series(np.convolve(a, b)[: n + 1])
    if op == "div":
        if b[0] == 0:
            raise DivisionByZero("series division by a series with zero constant term")
        q = np.zeros(n + 1, dtype=complex)
        for k in range(n + 1):
            q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b[0]
        return Series(q)
    raise ValueError(f"unknown series operation {op!r}")


def series_coeffs(f, order: int = DEFAULT_ORDER) -> Series:
    """First ``order + 1`` Taylor coefficients at 0 of a catalog map."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return f.series(order)
