"""Input validation helpers shared by the public entry points."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import InvalidParameter, OutOfDomain


def as_complex(z):
    """Return ``z`` as a complex scalar or complex ndarray."""
    arr = np.asarray(z, dtype=complex)
    return arr[()] if arr.ndim == 0 else arr


def check_points(z, name: str = "z", radius: float = 1.0):
    """Validate points of the open disk ``|z| < radius``.

    Returns a complex scalar or array. Raises :class:`OutOfDomain` on
    non-finite entries or points on/outside the circle.
    """
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise OutOfDomain(f"{name} contains non-finite values")
    if np.any(np.abs(arr) >= radius):
        raise OutOfDomain(f"{name} must satisfy |{name}| < {radius:g}")
    return arr[()] if arr.ndim == 0 else arr


def check_real(x, name: str, low=None, high=None, low_open=False, high_open=False) -> float:
    if isinstance(x, bool) or not isinstance(x, (numbers.Real, np.floating, np.integer)):
        raise InvalidParameter(f"{name} must be a real number, got {x!r}")
    x = float(x)
    if not np.isfinite(x):
        raise InvalidParameter(f"{name} must be finite")
    if low is not None and (x < low or (low_open and x == low)):
        raise InvalidParameter(f"{name}={x!r} below allowed range")
    if high is not None and (x > high or (high_open and x == high)):
        raise InvalidParameter(f"{name}={x!r} above allowed range")
    return x
