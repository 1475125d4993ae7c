"""Finite-prefix heaviness checks for rotations and polynomial orbits mod 1.

Targets are closed arcs [u, v] tested against fractional parts, so a point
exactly on an endpoint counts as a hit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .arith import Number, as_exact, fract


@dataclass(frozen=True)
class ClosedArc:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        u, v = Fraction(self.u), Fraction(self.v)
        if not 0 <= u <= v <= 1:
            raise ValueError(f"arc needs 0 <= u <= v <= 1, got [{u}, {v}]")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def measure(self) -> Fraction:
        return self.v - self.u

    def __contains__(self, y) -> bool:
        t = fract(as_exact(y))
        return self.u <= t <= self.v


@dataclass(frozen=True)
class OrbitReport:
    verdict: str  # "pass-up-to-N" | "fail"
    first_failure: Optional[int]
    min_slack: Fraction
    checked_to: int

    def __post_init__(self):
        if (self.verdict == "fail") != (self.first_failure is not None):
            raise ValueError(f"inconsistent report: {self}")

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "first_failure": self.first_failure,
            "min_slack": {"num": self.min_slack.numerator, "den": self.min_slack.denominator},
            "checked_to": self.checked_to,
        }


def _orbit_report(points: Iterable[Number], arc: ClosedArc, N: int) -> OrbitReport:
    if N < 1:
        raise ValueError("N must be positive")
    mu = arc.measure
    hits = 0
    worst = None
    n = 0
    for n, y in enumerate(points, start=1):
        if y in arc:
            hits += 1
        slack = hits - n * mu
        if worst is None or slack < worst:
            worst = slack
        if slack < 0:
            return OrbitReport("fail", n, worst, n)
        if n == N:
            break
    return OrbitReport(f"pass-up-to-{N}", None, worst, n)


def rotation_orbit(x, alpha, N: int):
    x, alpha = as_exact(x), as_exact(alpha)
    y = x
    for _ in range(N):
        yield y
        y = y + alpha


def rotation_prefix_heavy(x, alpha, arc: ClosedArc, N: int) -> OrbitReport:
    """Check sum_{j<n} [x + j*alpha mod 1 in arc] >= n*|arc| for n <= N."""
    return _orbit_report(rotation_orbit(x, alpha, N), arc, N)


def heavy_point_search(alpha, arc: ClosedArc, N: int, resolution: int) -> Optional[Fraction]:
    """First grid point t/resolution whose rotation orbit passes to N.

    None only means no grid point passed at this resolution and N.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive")
    for t in range(resolution):
        x = Fraction(t, resolution)
        if rotation_prefix_heavy(x, alpha, arc, N).passed:
            return x
    return None


def poly_eval(coeffs: Sequence, n: int) -> Number:
    """Horner evaluation; coeffs run from the leading coefficient down."""
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * n + as_exact(c)
    return acc


def poly_prefix_heavy(coeffs: Sequence, arc: ClosedArc, N: int) -> OrbitReport:
    """Prefix check of P(0), P(1), ..., P(N-1) mod 1 against the arc."""
    if not coeffs:
        raise ValueError("need at least one coefficient")
    return _orbit_report((poly_eval(coeffs, n) for n in range(N)), arc, N)
