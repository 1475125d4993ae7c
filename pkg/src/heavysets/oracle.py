"""Counting oracles for the heavy sets H(c) and the dual sets Hhat_m.

All predicates are exact. Rational inputs run on integer residues (and on
numpy for long periods); surds run on integer square-root comparisons.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

import numpy as np

from .arith import Number, QuadraticSurd, as_exact, floor_strict, fract, sqrt_lt

# Above this period length the rational scans switch to numpy.
_NUMPY_MIN_PERIOD = 256
# int64 safety: k * p with k, p < 2**31
_NUMPY_MAX_PERIOD = 2**31


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""


@dataclass(frozen=True)
class HeavinessReport:
    verdict: str  # "pass" | "fail" | "pass-up-to-N"
    first_failure: Optional[int]
    min_slack: Fraction
    checked_to: int
    min_slack_at: int = 1

    def __post_init__(self):
        failed = self.verdict == "fail"
        if failed != (self.first_failure is not None) or failed != (self.min_slack < 0):
            raise ValueError(f"inconsistent report: {self}")

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "first_failure": self.first_failure,
            "min_slack": {"num": self.min_slack.numerator, "den": self.min_slack.denominator},
            "min_slack_at": self.min_slack_at,
            "checked_to": self.checked_to,
        }


def _check_c(c) -> Fraction:
    # c = 1 is allowed so that H_1 = H(1) (every real) needs no special case
    c = Fraction(c)
    if not 0 < c <= 1:
        raise ValueError(f"c must lie in (0, 1], got {c}")
    return c


# ---------------------------------------------------------------- kernels


def _surd_floors(x: QuadraticSurd, n: int) -> Iterator[int]:
    """floor(k*x) for k = 1..n."""
    p, q, r, d = x.p, x.q, x.r, x.d
    qqd = q * q * d
    for k in range(1, n + 1):
        s = math.isqrt(k * k * qqd)
        fl = s if q > 0 else -s - 1
        yield (k * p + fl) // r


def _hits(alpha: Number, c: Fraction, n: int) -> Iterator[bool]:
    """fract(k*alpha) < c for k = 1..n."""
    a, b = c.numerator, c.denominator
    if isinstance(alpha, QuadraticSurd):
        p, q, r, d = alpha.p, alpha.q, alpha.r, alpha.d
        for k, fl in enumerate(_surd_floors(alpha, n), start=1):
            # k*alpha < fl + a/b  <=>  b*k*q*sqrt(d) < r*(b*fl + a) - b*k*p
            yield sqrt_lt(b * k * q, d, r * (b * fl + a) - b * k * p)
        return
    alpha = Fraction(alpha)
    P, Q = alpha.numerator % alpha.denominator, alpha.denominator
    res = 0
    for _ in range(n):
        res += P
        if res >= Q:
            res -= Q
        yield res * b < a * Q


def _floors(alpha: Number, n: int) -> Iterator[int]:
    if isinstance(alpha, QuadraticSurd):
        yield from _surd_floors(alpha, n)
        return
    alpha = Fraction(alpha)
    P, Q = alpha.numerator, alpha.denominator
    for k in range(1, n + 1):
        yield (k * P) // Q


def _scan(flags: Iterable[bool], a: int, b: int, N: int, stop_on_fail: bool = True):
    """Running slack count*b - a*n over n = 1..N (slack = value / b)."""
    count = 0
    best = None
    best_at = 1
    n = 0
    for n, hit in enumerate(flags, start=1):
        if hit:
            count += 1
        s = count * b - a * n
        if best is None or s < best:
            best, best_at = s, n
        if s < 0 and stop_on_fail:
            return n, best, best_at, n
    return None, best, best_at, n


def _scan_numpy(hits: np.ndarray, a: int, b: int):
    slack = np.cumsum(hits, dtype=np.int64) * b - a * np.arange(1, len(hits) + 1, dtype=np.int64)
    neg = np.flatnonzero(slack < 0)
    if len(neg):
        first = int(neg[0])
        prefix = slack[: first + 1]
        at = int(np.argmin(prefix))
        return first + 1, int(prefix[at]), at + 1, first + 1
    at = int(np.argmin(slack))
    return None, int(slack[at]), at + 1, len(hits)


def _report(result, b: int, decided: bool, N: int) -> HeavinessReport:
    first, best, best_at, checked = result
    verdict = "fail" if first is not None else ("pass" if decided else f"pass-up-to-{N}")
    return HeavinessReport(verdict, first, Fraction(best, b), checked, best_at)


# ---------------------------------------------------------------- H(c)


def count_hits(alpha: Number, c, n: int) -> int:
    """Number of 1 <= k <= n with fract(k*alpha) < c."""
    c = _check_c(c)
    return sum(_hits(as_exact(alpha), c, n))


def heavy_prefix(alpha: Number, c, N: int) -> HeavinessReport:
    """Check count_hits(alpha, c, n) >= c*n for n = 1..N in a single pass."""
    c = _check_c(c)
    if N < 1:
        raise ValueError("N must be positive")
    alpha = as_exact(alpha)
    result = _scan(_hits(alpha, c, N), c.numerator, c.denominator, N)
    return _report(result, c.denominator, decided=False, N=N)


def _rational_hits_numpy(alpha: Fraction, c: Fraction, N: int) -> np.ndarray:
    P, Q = alpha.numerator % alpha.denominator, alpha.denominator
    k = np.arange(1, N + 1, dtype=np.int64)
    res = (k * P) % Q
    # res * b < a * Q, done in Python ints when it could overflow
    a, b = c.numerator, c.denominator
    if max(b, a) * Q < 2**62:
        return res * b < a * Q
    return np.fromiter((int(r) * b < a * Q for r in res), dtype=bool, count=N)


def decide_H(alpha, c) -> tuple[bool, HeavinessReport]:
    """Decide alpha in H(c) for rational alpha.

    With alpha = p/q the values fract(k*alpha) repeat with period q, so the
    slack D(n) = count(n) - c*n obeys D(n + q) = D(n) + D(q). If D(n) >= 0
    for every n <= q then D(q) >= 0 and each later D(tq + s) = t*D(q) + D(s)
    stays nonnegative; any failure already shows up inside one period.
    """
    c = _check_c(c)
    alpha = Fraction(alpha)
    Q = alpha.denominator
    a, b = c.numerator, c.denominator
    if _NUMPY_MIN_PERIOD <= Q < _NUMPY_MAX_PERIOD and b * Q < 2**62:
        result = _scan_numpy(_rational_hits_numpy(alpha, c, Q), a, b)
    else:
        result = _scan(_hits(alpha, c, Q), a, b, Q)
    report = _report(result, b, decided=True, N=Q)
    return report.passed, report


# ---------------------------------------------------------------- S-sets


def s_counts(n: int, alpha: Number, c) -> tuple[int, int]:
    """Sizes of S(n, alpha) and S(n, alpha, c), by enumeration and by formula.

    S(n, alpha) = {k >= 1 : k*alpha < n}; S(n, alpha, c) keeps those k with
    fract(k*alpha) < c. The closed forms use the strict floor.
    """
    c = _check_c(c)
    alpha = as_exact(alpha)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if n < 1:
        raise ValueError("n must be positive")

    size = 0
    size_c = 0
    k = 1
    while k * alpha < n:
        size += 1
        if fract(k * alpha) < c:
            size_c += 1
        k += 1

    inv = 1 / alpha
    formula = floor_strict(n * inv)
    formula_c = floor_strict(c * inv) + sum(
        floor_strict((j + c) * inv) - floor_strict(j * inv) for j in range(1, n)
    )
    if (size, size_c) != (formula, formula_c):
        raise ConsistencyError(
            f"S-count mismatch for n={n}, alpha={alpha}, c={c}: "
            f"enumerated {(size, size_c)}, formula {(formula, formula_c)}"
        )
    return size, size_c


# ---------------------------------------------------------------- Hhat_m


def hhat_count(alpha: Number, m: int, n: int) -> int:
    """Number of 1 <= k <= n with floor(k*alpha) divisible by m."""
    if m < 1:
        raise ValueError("m must be positive")
    return sum(1 for f in _floors(as_exact(alpha), n) if f % m == 0)


def hhat_prefix(alpha: Number, m: int, N: int) -> HeavinessReport:
    if m < 1:
        raise ValueError("m must be positive")
    flags = (f % m == 0 for f in _floors(as_exact(alpha), N))
    return _report(_scan(flags, 1, m, N), m, decided=False, N=N)


def decide_Hhat(alpha, m: int) -> tuple[bool, HeavinessReport]:
    """Decide alpha in Hhat_m for rational alpha = p/q.

    floor((k + q*m)*alpha) = floor(k*alpha) + p*m, so membership of
    floor(k*alpha) in mZ has period q*m and the drift argument of
    :func:`decide_H` applies to the slack count - n/m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    alpha = Fraction(alpha)
    P, Q = alpha.numerator, alpha.denominator
    period = Q * m
    if _NUMPY_MIN_PERIOD <= period < _NUMPY_MAX_PERIOD and abs(P) < _NUMPY_MAX_PERIOD:
        k = np.arange(1, period + 1, dtype=np.int64)
        flags = ((k * P) // Q) % m == 0
        result = _scan_numpy(flags, 1, m)
    else:
        flags = ((k * P) // Q % m == 0 for k in range(1, period + 1))
        result = _scan(flags, 1, m, period)
    report = _report(result, m, decided=True, N=period)
    return report.passed, report


# ---------------------------------------------------------------- interval sets


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of half-open intervals [u, v) inside [0, 1).

    Intervals are kept sorted, disjoint and non-adjacent.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls(((Fraction(0), Fraction(1)),))

    @property
    def measure(self) -> Fraction:
        return sum((v - u for u, v in self.intervals), Fraction(0))

    def __contains__(self, x) -> bool:
        x = as_exact(x)
        i = bisect.bisect_right([u for u, _ in self.intervals], x) - 1
        return i >= 0 and x < self.intervals[i][1]

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        A, B = self.intervals, other.intervals
        while i < len(A) and j < len(B):
            u = max(A[i][0], B[j][0])
            v = min(A[i][1], B[j][1])
            if u < v:
                out.append((u, v))
            if A[i][1] < B[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    def to_list(self) -> list[list[int]]:
        return [[u.numerator, u.denominator, v.numerator, v.denominator] for u, v in self.intervals]

    @classmethod
    def from_json(cls, text: str) -> "IntervalSet":
        return cls(tuple((Fraction(a, b), Fraction(c, d)) for a, b, c, d in json.loads(text)))


def _normalize(intervals) -> tuple[tuple[Fraction, Fraction], ...]:
    cleaned = []
    for u, v in intervals:
        u, v = Fraction(u), Fraction(v)
        if not (0 <= u and v <= 1):
            raise ValueError(f"interval [{u}, {v}) leaves [0, 1)")
        if u < v:
            cleaned.append((u, v))
    cleaned.sort()
    merged: list[tuple[Fraction, Fraction]] = []
    for u, v in cleaned:
        if merged and u <= merged[-1][1]:
            if v > merged[-1][1]:
                merged[-1] = (merged[-1][0], v)
        else:
            merged.append((u, v))
    return tuple(merged)


def interval_set_Hcn(c, n: int) -> IntervalSet:
    """The set of alpha in [0, 1) with count_hits(alpha, c, n) >= c*n.

    As alpha sweeps [0, 1), fract(k*alpha) < c holds exactly on the
    right-open pieces [j/k, (j + c)/k). The count therefore only changes at
    those endpoints; a sweep that adds one at each j/k and removes one at
    each (j + c)/k gives the count on every gap, read at its left end.
    """
    c = _check_c(c)
    if n < 1:
        raise ValueError("n must be positive")
    events: dict[Fraction, int] = {}
    for k in range(1, n + 1):
        for j in range(k):
            start = Fraction(j, k)
            stop = (j + c) / k
            events[start] = events.get(start, 0) + 1
            events[stop] = events.get(stop, 0) - 1
    points = sorted(events)
    need = c * n
    out = []
    count = 0
    for i, x in enumerate(points):
        count += events[x]
        nxt = points[i + 1] if i + 1 < len(points) else Fraction(1)
        if count >= need and x < nxt:
            out.append((x, nxt))
    return IntervalSet(tuple(out))


def intersect(sets: Iterable[IntervalSet]) -> IntervalSet:
    result = IntervalSet.full()
    for s in sets:
        result = result & s
    return result
