"""Exact computation of the ellipsoid action spectrum.

The spectrum of E(a, b) is the sorted multiset {m*a + n*b : m, n >= 0}.
After clearing denominators every spectrum value is an integer, so
counting, k-th value extraction, and range enumeration are all done in
exact integer arithmetic: a Euclidean floor-sum kernel gives lattice
counts under a line in O(log) integer steps, and capacities come out of
an integer binary search on the scaled value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce to an exact rational; floats are rejected, never rounded."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class ScaledEllipsoid:
    """Integer form of E(a, b): a = A/den, b = B/den with den = lcm of denominators."""

    A: int
    B: int
    den: int

    def __post_init__(self):
        if self.A <= 0 or self.B <= 0 or self.den <= 0:
            raise ValueError("scaled ellipsoid requires positive integers")


@dataclass(frozen=True)
class Ellipsoid:
    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        a = as_rational(a)
        b = as_rational(b)
        if a <= 0 or b <= 0:
            raise ValueError("ellipsoid axes must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def scaled(self) -> ScaledEllipsoid:
        den = self.a.denominator * self.b.denominator // math.gcd(
            self.a.denominator, self.b.denominator
        )
        return ScaledEllipsoid(
            A=self.a.numerator * (den // self.a.denominator),
            B=self.b.numerator * (den // self.b.denominator),
            den=den,
        )

    def swapped(self) -> "Ellipsoid":
        return Ellipsoid(self.b, self.a)

    def safe_coefficient_bound(self) -> int:
        """Largest lattice coefficient below which a high-denominator rational
        approximant of an irrational axis ratio cannot create spurious ties:
        m*A + n*B collisions with m, n below max(denominator) would force a
        relation the approximant does not satisfy."""
        return max(self.a.denominator, self.b.denominator)


def floor_sum(n: int, p: int, q: int, m: int) -> int:
    """Sum of floor((p*i + q)/m) for i = 0..n-1, by Euclidean swap/modulo
    reduction in O(log max(p, m)) integer steps."""
    if n < 0 or p < 0 or q < 0 or m < 1:
        raise ValueError("floor_sum requires n, p, q >= 0 and m >= 1")
    ans = 0
    while True:
        if p >= m:
            ans += (n - 1) * n // 2 * (p // m)
            p %= m
        if q >= m:
            ans += n * (q // m)
            q %= m
        y_max = p * n + q
        if y_max < m:
            return ans
        n, q, m, p = y_max // m, y_max % m, p, m


def _count_scaled(A: int, B: int, v: int) -> int:
    """#{(m, n) in Z>=0^2 : m*A + n*B <= v} for integer v."""
    if v < 0:
        return 0
    M = v // A
    # sum over m of floor((v - m*A)/B) + 1, reversed so the slope is +A
    return floor_sum(M + 1, A, v - M * A, B) + M + 1


def _scaled_threshold(S: ScaledEllipsoid, t: Fraction) -> int:
    """Largest integer v with v/den <= t; m*A + n*B <= t*den iff m*A + n*B <= v."""
    return (t.numerator * S.den) // t.denominator


def count_leq(E: Ellipsoid, t) -> int:
    """Number of lattice points (m, n) >= 0 with m*a + n*b <= t, exactly."""
    t = as_rational(t)
    S = E.scaled()
    return _count_scaled(S.A, S.B, _scaled_threshold(S, t))


def _nth_scaled(S: ScaledEllipsoid, k: int) -> int:
    """Scaled value of the k-th (0-indexed, with multiplicity) spectrum element."""
    if k < 0:
        raise ValueError("index k must be nonnegative")
    if k == 0:
        return 0
    lo, hi = 0, math.isqrt(2 * S.A * S.B * (k + 1)) + S.A + S.B
    while _count_scaled(S.A, S.B, hi) < k + 1:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if _count_scaled(S.A, S.B, mid) >= k + 1:
            hi = mid
        else:
            lo = mid + 1
    return lo


def nth_capacity(E: Ellipsoid, k: int) -> Fraction:
    """The k-th element (0-indexed, with multiplicity) of the sorted multiset
    {m*a + n*b}. Binary search on the scaled integer value, never on floats."""
    S = E.scaled()
    return Fraction(_nth_scaled(S, k), S.den)


def _spectrum_scaled(S: ScaledEllipsoid, k0: int, k1: int) -> list[int]:
    """Scaled spectrum values for indices k0..k1 inclusive."""
    if k0 < 0:
        raise ValueError("index k0 must be nonnegative")
    if k0 > k1:
        raise ValueError("spectrum_range requires k0 <= k1")
    v0 = _nth_scaled(S, k0)
    v1 = _nth_scaled(S, k1)
    below = _count_scaled(S.A, S.B, v0 - 1)
    vals: list[int] = []
    m = 0
    base = 0
    while base <= v1:
        if v0 > base:
            n_lo = -((base - v0) // S.B)  # ceil((v0 - base)/B)
        else:
            n_lo = 0
        start = base + n_lo * S.B
        if start <= v1:
            vals.extend(range(start, v1 + 1, S.B))
        m += 1
        base = m * S.A
    vals.sort()
    off = k0 - below
    return vals[off : off + (k1 - k0 + 1)]


def spectrum_range(E: Ellipsoid, k0: int, k1: int) -> list[tuple[int, Fraction]]:
    """Spectrum values for the index block [k0, k1], element-wise equal to
    repeated nth_capacity but computed by one binary search per endpoint plus
    ordered enumeration of lattice values in the window."""
    S = E.scaled()
    vals = _spectrum_scaled(S, k0, k1)
    return [(k, Fraction(v, S.den)) for k, v in zip(range(k0, k1 + 1), vals)]


def distinct_values_leq(E: Ellipsoid, t) -> int:
    """Number of distinct values of m*a + n*b in [0, t].

    All values are multiples of g = gcd(A, B); each residue class r mod A/g
    of t/g has a unique minimal representation, which reduces the count to
    one floor-sum."""
    t = as_rational(t)
    S = E.scaled()
    T = _scaled_threshold(S, t)
    if T < 0:
        return 0
    g = math.gcd(S.A, S.B)
    X = T // g
    Ap, Bp = S.A // g, S.B // g
    if Ap > Bp:
        Ap, Bp = Bp, Ap
    M = min(Ap - 1, X // Bp)
    if M < 0:
        return 1 if T >= 0 else 0
    return floor_sum(M + 1, Bp, X - M * Bp, Ap) + M + 1
