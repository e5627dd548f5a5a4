"""Order formulas for bounded-Schwarzian families and the coefficient relation."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validation import check_real
from .catalog import FamilyParams, make_extremal
from .exceptions import ConsistencyError, InvalidParameter
from .series import DEFAULT_ORDER

__all__ = [
    "OrderEstimate",
    "CoefficientTriple",
    "order_H",
    "order_F",
    "R_from_order",
    "R_lower_bound",
    "marty_residual",
    "extremal_coefficients",
    "LAMBDA_CRITICAL",
]

LAMBDA_CRITICAL = 1.5


@dataclass(frozen=True)
class OrderEstimate:
    lam: float
    order: float
    half_order: float
    R_sup: float
    source: str


@dataclass(frozen=True)
class CoefficientTriple:
    a2: complex
    a3: complex
    b2: complex


def order_H(lam: float) -> float:
    """Order of the analytic family with Schwarzian norm at most ``lam``."""
    lam = check_real(lam, "lambda", low=0)
    return math.sqrt(1 + lam / 2)


def order_F(lam: float, R_sup: float | None = None) -> OrderEstimate:
    """Order of the harmonic family for a given sup of dilatation hyperbolic norms.

    For ``lam >= 3/2`` the sup is known to be 1 and may be omitted. For
    ``lam = 0`` it is 0. In between it is unknown and must be supplied; the
    result is then the conditional value of the order formula.
    """
    lam = check_real(lam, "lambda", low=0)
    if lam >= LAMBDA_CRITICAL:
        if R_sup is not None and check_real(R_sup, "R_sup", low=0, high=1) != 1.0:
            raise ConsistencyError("for lambda >= 3/2 the dilatation sup must be 1")
        R, source = 1.0, "proven"
    elif lam == 0:
        if R_sup is not None and check_real(R_sup, "R_sup", low=0, high=1) != 0.0:
            raise ConsistencyError("for lambda = 0 the dilatation sup must be 0")
        R, source = 0.0, "proven"
    else:
        if R_sup is None:
            raise InvalidParameter("R_sup is unknown for 0 < lambda < 3/2 and must be supplied")
        R, source = check_real(R_sup, "R_sup", low=0, high=1), "conditional_on_R"
    half = math.sqrt(lam / 2 + 1 + R * R / 2)
    return OrderEstimate(lam=lam, order=half + R / 2, half_order=half, R_sup=R, source=source)


def R_from_order(lam: float, alpha: float) -> float:
    """Invert the order formula: ``R = -2 alpha + sqrt(8 alpha**2 - 2 lam - 4)``."""
    lam = check_real(lam, "lambda", low=0)
    alpha = check_real(alpha, "alpha")
    rad = 8 * alpha * alpha - 2 * lam - 4
    if rad < 0:
        raise InvalidParameter("negative radicand: alpha too small for this lambda")
    R = -2 * alpha + math.sqrt(rad)
    if R < -1e-9 or R > 1 + 1e-9:
        raise InvalidParameter(f"recovered R={R!r} lies outside [0, 1]")
    return min(max(R, 0.0), 1.0)


def R_lower_bound(lam: float) -> float:
    """Strict lower bound ``sqrt(2 lam / 3)`` on the dilatation sup for ``0 < lam < 3/2``."""
    lam = check_real(lam, "lambda", low=0, high=LAMBDA_CRITICAL, low_open=True, high_open=True)
    return math.sqrt(2 * lam / 3)


def marty_residual(c: CoefficientTriple) -> float:
    """``|3 a3 - 2 a2**2 - 2 |b2|**2 - 1|``; zero at extremal maps."""
    return abs(3 * c.a3 - 2 * c.a2**2 - 2 * abs(c.b2) ** 2 - 1)


def extremal_coefficients(p: FamilyParams, order: int = DEFAULT_ORDER) -> CoefficientTriple:
    """``(a2, a3, b2)`` of the extremal map, read off its power series."""
    if not p.lam > 0:
        raise InvalidParameter("the extremal construction needs lambda > 0")
    f = make_extremal(p)
    hs = f.h.series(order)
    gs = f.g.series(order)
    c = CoefficientTriple(a2=complex(hs[2]), a3=complex(hs[3]), b2=complex(gs[2]))
    expected = math.sqrt(p.lam / 2 + 1 + p.R * p.R / 2)
    if abs(c.a2 - expected) > 1e-10 or abs(c.b2 - p.R / 2) > 1e-10:
        raise ConsistencyError("series coefficients disagree with the closed-form a2, b2")
    return c
