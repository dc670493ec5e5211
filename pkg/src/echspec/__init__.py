"""Exact ellipsoid spectra, their sub-leading asymptotics, and the
associated zeta functions with meromorphic continuation."""

from .spectrum import (
    Ellipsoid,
    Rational,
    ScaledEllipsoid,
    count_leq,
    distinct_values_leq,
    floor_sum,
    nth_capacity,
    spectrum_range,
)
from .asymptotics import (
    DkPoint,
    FitResult,
    WeylSample,
    contact_volume,
    d_sequence,
    exponent_fit,
    weyl_count,
    weyl_fit,
    window_sups,
)
from .zeta import (
    DepthExceeded,
    LaurentExpansion,
    NonConvergent,
    PoleProximity,
    ZetaConvention,
    barnes_zeta,
    bernoulli,
    direct_zeta_sum,
    ech_zeta,
    hurwitz_zeta,
    laurent_at,
    riemann_zeta,
)
from .envelope import (
    EnvelopeConstants,
    EnvelopeResult,
    TooSmallJ,
    F_bounds,
    capacity_envelope,
    r1_bar,
    r2_threshold,
    rho_zero,
)

__all__ = [
    "Ellipsoid",
    "Rational",
    "ScaledEllipsoid",
    "count_leq",
    "distinct_values_leq",
    "floor_sum",
    "nth_capacity",
    "spectrum_range",
    "DkPoint",
    "FitResult",
    "WeylSample",
    "contact_volume",
    "d_sequence",
    "exponent_fit",
    "weyl_count",
    "weyl_fit",
    "window_sups",
    "DepthExceeded",
    "LaurentExpansion",
    "NonConvergent",
    "PoleProximity",
    "ZetaConvention",
    "barnes_zeta",
    "bernoulli",
    "direct_zeta_sum",
    "ech_zeta",
    "hurwitz_zeta",
    "laurent_at",
    "riemann_zeta",
    "EnvelopeConstants",
    "EnvelopeResult",
    "TooSmallJ",
    "F_bounds",
    "capacity_envelope",
    "r1_bar",
    "r2_threshold",
    "rho_zero",
]

__version__ = "0.1.0"
