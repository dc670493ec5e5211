"""Sub-leading asymptotics of the spectrum: the defect sequence
d_j = c_j - sqrt(vol * 2j), Weyl counting samples, and power-law fits.

The square root is taken with 60 fractional bits via integer isqrt, so the
recorded defect carries a certified rounding bound well below the scales
at which the O(1) limits are distinguished.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .spectrum import Ellipsoid, _spectrum_scaled, as_rational, count_leq, distinct_values_leq

_SQRT_BITS = 60


@dataclass(frozen=True)
class DkPoint:
    j: int
    c: Fraction
    d: float
    d_err: float


@dataclass(frozen=True)
class FitResult:
    coefficient: float
    exponent: float
    residual: float
    window: tuple[int, int]


@dataclass(frozen=True)
class WeylSample:
    R: Fraction
    count_classes: int
    count_values: int


def contact_volume(E: Ellipsoid) -> Fraction:
    """Contact volume of the ellipsoid boundary; equals a*b, the value fixed
    by consistency of the zeta residue at s=2 with 1/(a*b)."""
    return E.a * E.b


def _defect_scaled(S, j: int, v: int) -> tuple[float, float]:
    """(d, d_err) for scaled capacity v at index j: d = (v - sqrt(2jAB))/den,
    with the root carried to _SQRT_BITS fractional bits."""
    root = math.isqrt((2 * S.A * S.B * j) << (2 * _SQRT_BITS))
    d = ((v << _SQRT_BITS) - root) / (S.den << _SQRT_BITS)
    d_err = max(1.0, v / S.den) * 2.0**-50
    return d, d_err


def d_sequence(E: Ellipsoid, j0: int, j1: int) -> list[DkPoint]:
    """Defect samples d_j = c_j - sqrt(vol * 2j) for j in [j0, j1].

    c_j is exact; the square root of the scaled integer 2*j*A*B is computed
    with _SQRT_BITS fractional bits, so d_err is dominated by one float
    rounding of the final quotient.
    """
    if j0 > j1:
        raise ValueError("d_sequence requires j0 <= j1")
    S = E.scaled()
    out = []
    for j, v in zip(range(j0, j1 + 1), _spectrum_scaled(S, j0, j1)):
        d, d_err = _defect_scaled(S, j, v)
        out.append(DkPoint(j=j, c=Fraction(v, S.den), d=d, d_err=d_err))
    return out


def weyl_count(E: Ellipsoid, R) -> WeylSample:
    """Counting function sample at radius R: lattice classes and distinct values."""
    R = as_rational(R)
    if R < 0:
        raise ValueError("weyl_count requires R >= 0")
    return WeylSample(
        R=R,
        count_classes=count_leq(E, R),
        count_values=distinct_values_leq(E, R),
    )


def weyl_fit(E: Ellipsoid, R_list) -> FitResult:
    """Least-squares leading coefficient C of N(R) ~ C*R^2 over the samples
    (classes convention), plus the remainder exponent from regressing
    log|N - C*R^2| on log R."""
    R_list = [as_rational(R) for R in R_list]
    if len(R_list) < 3:
        raise ValueError("weyl_fit requires at least 3 samples")
    if any(R_list[i] >= R_list[i + 1] for i in range(len(R_list) - 1)):
        raise ValueError("weyl_fit requires strictly increasing R")
    R = np.array([float(r) for r in R_list])
    N = np.array([float(count_leq(E, r)) for r in R_list])
    R2 = R * R
    C = float(np.dot(N, R2) / np.dot(R2, R2))
    resid = N - C * R2
    mask = np.abs(resid) > 1e-9
    if mask.sum() >= 2:
        slope, _ = np.polyfit(np.log(R[mask]), np.log(np.abs(resid[mask])), 1)
        exponent = float(slope)
    else:
        exponent = 0.0
    return FitResult(
        coefficient=C,
        exponent=exponent,
        residual=float(np.sqrt(np.mean(resid**2))),
        window=(0, len(R_list) - 1),
    )


def window_sups(points: list[DkPoint], window_count: int) -> list[tuple[int, float]]:
    """Per-window sup statistics: (argmax index, max |d|) over geometric
    windows partitioning the index range of the points."""
    if not points:
        raise ValueError("window_sups requires nonempty input")
    if window_count < 1:
        raise ValueError("window_count must be positive")
    pts = [p for p in points if p.j >= 1]
    if not pts:
        raise ValueError("window_sups requires points with j >= 1")
    j_lo, j_hi = pts[0].j, pts[-1].j
    ratio = (float(j_hi + 1) / j_lo) ** (1.0 / window_count)
    edges = [j_lo * ratio**w for w in range(window_count + 1)]
    edges[-1] = float(j_hi + 1)
    sups = []
    w = 0
    best_j, best = None, -1.0
    for p in pts:
        while p.j >= edges[w + 1]:
            if best_j is not None:
                sups.append((best_j, best))
            best_j, best = None, -1.0
            w += 1
        if abs(p.d) > best:
            best_j, best = p.j, abs(p.d)
    if best_j is not None:
        sups.append((best_j, best))
    return sups


def exponent_fit(points: list[DkPoint], window_count: int) -> FitResult:
    """Growth exponent of |d_j|: regress log of per-window sups on log of the
    index attaining them. Flat (O(1)) sequences fit an exponent near zero;
    a planted power law j^p is recovered exactly."""
    if not points:
        raise ValueError("exponent_fit requires nonempty input")
    if any(points[i].j >= points[i + 1].j for i in range(len(points) - 1)):
        raise ValueError("exponent_fit requires strictly increasing j")
    sups = [(j, s) for j, s in window_sups(points, window_count) if s > 1e-15]
    if len(sups) < 2:
        raise ValueError("exponent_fit requires at least two usable windows")
    x = np.log([j for j, _ in sups])
    y = np.log([s for _, s in sups])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    pts = [p for p in points if p.j >= 1]
    return FitResult(
        coefficient=float(np.exp(intercept)),
        exponent=float(slope),
        residual=float(np.sqrt(np.mean(resid**2))),
        window=(pts[0].j, pts[-1].j),
    )
