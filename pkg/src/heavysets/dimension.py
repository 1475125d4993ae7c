"""Moran-equation bounds for the two-map continued-fraction Cantor set.

The maps f_i(x) = 1/(m + 1/(i + x)), i = 1, 2, send [0, 1] into itself with
|f_i'(x)| = 1/(m(i + x) + 1)^2. Solving r1^s + r2^s = 1 with the smallest
and largest ratios brackets the similarity dimension of the attractor.

This is the only module that leaves exact arithmetic: powers with
non-integer exponents are evaluated in mpmath at PRECISION_BITS bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

PRECISION_BITS = 128


@dataclass(frozen=True)
class IFSSpec:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")

    def apply(self, i: int, x) -> Fraction:
        x = Fraction(x)
        return 1 / (self.m + 1 / (i + x))

    def derivative(self, i: int, x) -> Fraction:
        return Fraction(1, 1) / (self.m * (i + Fraction(x)) + 1) ** 2


@dataclass(frozen=True)
class DimensionBounds:
    m: int
    s_low: Fraction
    s_high: Fraction
    tolerance: Fraction

    def to_dict(self, digits: int = 12) -> dict:
        return {
            "m": self.m,
            "s_low": f"{float(self.s_low):.{digits}f}",
            "s_high": f"{float(self.s_high):.{digits}f}",
            "tol": str(self.tolerance),
        }


def contraction_ratio_bounds(m: int) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """((r1_min, r1_max), (r2_min, r2_max)): |f_i'| at x = 1 and x = 0."""
    ifs = IFSSpec(m)
    return tuple((ifs.derivative(i, 1), ifs.derivative(i, 0)) for i in (1, 2))  # type: ignore[return-value]


def moran_sum(r1, r2, s) -> mpmath.mpf:
    with mpmath.workprec(PRECISION_BITS):
        r1 = mpmath.mpf(Fraction(r1).numerator) / Fraction(r1).denominator
        r2 = mpmath.mpf(Fraction(r2).numerator) / Fraction(r2).denominator
        s = mpmath.mpf(Fraction(s).numerator) / Fraction(s).denominator
        return mpmath.power(r1, s) + mpmath.power(r2, s)


def moran_solve(r1, r2, tol) -> Fraction:
    """Root of r1^s + r2^s = 1 by bisection; returns the bracket midpoint.

    s -> r1^s + r2^s is strictly decreasing from 2 at s = 0, so the root is
    unique and positive.
    """
    r1, r2, tol = Fraction(r1), Fraction(r2), Fraction(tol)
    if not (0 < r1 < 1 and 0 < r2 < 1):
        raise ValueError("ratios must lie in (0, 1)")
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = Fraction(0), Fraction(1)
    while moran_sum(r1, r2, hi) > 1:
        lo, hi = hi, 2 * hi
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        if moran_sum(r1, r2, mid) > 1:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def dimension_bounds(m: int, tol=Fraction(1, 1000)) -> DimensionBounds:
    """Moran roots for the smallest and the largest contraction ratios.

    s_low > 0 certifies positive dimension for the two-map attractor, which
    sits inside R_m; s_high bounds that attractor only, not R_m itself.
    """
    (r1min, r1max), (r2min, r2max) = contraction_ratio_bounds(m)
    tol = Fraction(tol)
    return DimensionBounds(m, moran_solve(r1min, r2min, tol), moran_solve(r1max, r2max, tol), tol)
