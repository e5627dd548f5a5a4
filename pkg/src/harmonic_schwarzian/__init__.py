"""Schwarzian derivatives, sup-norms and order formulas for harmonic maps of the disk."""

from .catalog import (
    AnalyticKoebe,
    AnalyticMap,
    Automorphism,
    FamilyParams,
    GeneralizedKoebe,
    HarmonicMap,
    Identity,
    Lens,
    Mobius,
    Strip,
    affine_change,
    koebe_transform,
    make_analytic,
    make_extremal,
    make_f_r,
    make_harmonic_koebe,
    make_lens,
    make_phi_a,
)
from .exceptions import (
    BasePointMismatch,
    BranchViolation,
    ConsistencyError,
    DivisionByZero,
    HarmonicError,
    InvalidParameter,
    NotLocallyUnivalent,
    NotSensePreserving,
    OutOfDomain,
    RegimeWarning,
)
from .families import (
    CoefficientTriple,
    OrderEstimate,
    R_from_order,
    R_lower_bound,
    extremal_coefficients,
    marty_residual,
    order_F,
    order_H,
)
from .jets import Jet, fd_oracle, jet_arith, jet_compose, jet_pow
from .norms import (
    ClosedFormCoeffs,
    CurvePoint,
    HyperbolicNorm,
    NormEstimate,
    SchwarzianNorm,
    closed_form_scaled,
    curve_samples,
    psi_monotone_check,
    psi_profile,
    sup_norm,
)
from .schwarzian import (
    hyperbolic_derivative,
    scaled_schwarzian,
    schwarzian_analytic,
    schwarzian_harmonic,
)
from .series import Series, series_arith, series_coeffs

__version__ = "0.1.0"
