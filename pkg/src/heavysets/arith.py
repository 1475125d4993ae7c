"""Exact scalars: reduced rationals and real quadratic surds (p + q*sqrt(d))/r.

Rationals are plain :class:`fractions.Fraction` values. Surds are kept in a
canonical form so that equal values compare and hash equal; nothing in the
value path ever touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union


def rat(p: int, q: int = 1) -> Fraction:
    """Reduced rational p/q with the sign carried by the numerator."""
    if q == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(p, q)


def isqrt(n: int) -> int:
    """Floor of the square root of a non-negative integer."""
    return math.isqrt(n)


def _squarefree_split(d: int) -> tuple[int, int]:
    """Write d = s*s*core with core square-free; returns (s, core).

    Trial division runs while k**3 <= remainder. What is left then has at
    most two prime factors, so it is square-free unless it is a perfect
    square. Past a fixed budget the leftover goes to sympy's factorint.
    """
    s, core, rest = 1, 1, d
    k = 2
    while k * k * k <= rest and k < 200_000:
        if rest % k == 0:
            e = 0
            while rest % k == 0:
                rest //= k
                e += 1
            s *= k ** (e // 2)
            core *= k ** (e % 2)
        k += 1
    if rest > 1 and k * k * k <= rest:
        from sympy import factorint

        for prime, e in factorint(rest).items():
            s *= prime ** (e // 2)
            core *= prime ** (e % 2)
        return s, core
    r = math.isqrt(rest)
    if r * r == rest:
        return s * r, core
    return s, core * rest


def _sign_of(p: int, q: int, d: int) -> int:
    """Sign of p + q*sqrt(d) for square-free d >= 2, using integers only.

    ====== ====== =========================================
    p      q      sign
    ====== ====== =========================================
    >= 0   > 0    +1
    <= 0   < 0    -1
    > 0    < 0    sign(p*p - q*q*d)
    < 0    > 0    sign(q*q*d - p*p)
    any    0      sign(p)
    ====== ====== =========================================

    Equality inside the squared comparisons is impossible because sqrt(d)
    is irrational whenever q != 0.
    """
    if q == 0:
        return (p > 0) - (p < 0)
    if p >= 0 and q > 0:
        return 1
    if p <= 0 and q < 0:
        return -1
    t = p * p - q * q * d
    if p > 0:
        return 1 if t > 0 else -1
    return -1 if t > 0 else 1


def sqrt_lt(coef: int, d: int, rhs: int) -> bool:
    """Decide coef*sqrt(d) < rhs exactly (d square-free, d >= 2)."""
    return _sign_of(-rhs, coef, d) < 0


class MixedRadicandError(ValueError):
    pass


class QuadraticSurd:
    """Exact real number (p + q*sqrt(d))/r with q != 0.

    Construct through :func:`surd`, which demotes q == 0 to a Fraction and
    pulls square factors out of d. The constructor itself assumes canonical
    input only when ``_canonical=True``.
    """

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, p: int, q: int, d: int, r: int = 1, *, _canonical: bool = False):
        if not _canonical:
            if r == 0:
                raise ZeroDivisionError("surd with zero denominator")
            if d < 2:
                raise ValueError(f"radicand must be >= 2, got {d}")
            s, d = _squarefree_split(d)
            q *= s
            if d == 1:
                raise ValueError("radicand is a perfect square")
            if q == 0:
                raise ValueError("q == 0 is a rational; use surd()")
            if r < 0:
                p, q, r = -p, -q, -r
            g = math.gcd(math.gcd(p, q), r)
            p, q, r = p // g, q // g, r // g
        self.p = p
        self.q = q
        self.r = r
        self.d = d

    # construction helpers

    @classmethod
    def _make(cls, p: int, q: int, d: int, r: int) -> Union["QuadraticSurd", Fraction]:
        if q == 0:
            return Fraction(p, r)
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        return cls(p // g, q // g, d, r // g, _canonical=True)

    def _lift(self, other) -> tuple[int, int, int]:
        """Return other as a (p, q, r) triple over this surd's radicand."""
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise MixedRadicandError(f"sqrt({self.d}) mixed with sqrt({other.d})")
            return other.p, other.q, other.r
        if isinstance(other, (int, _RationalABC)):
            f = Fraction(other)
            return f.numerator, 0, f.denominator
        raise TypeError(f"unsupported operand {other!r}")

    # arithmetic

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.q, self.d, self.r, _canonical=True)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        try:
            p2, q2, r2 = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._make(self.p * r2 + p2 * self.r, self.q * r2 + q2 * self.r, self.d, self.r * r2)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            p2, q2, r2 = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._make(self.p * r2 - p2 * self.r, self.q * r2 - q2 * self.r, self.d, self.r * r2)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            p2, q2, r2 = self._lift(other)
        except TypeError:
            return NotImplemented
        p, q, d = self.p, self.q, self.d
        return self._make(p * p2 + q * q2 * d, p * q2 + q * p2, d, self.r * r2)

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticSurd":
        # r/(p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d); the norm is nonzero
        norm = self.p * self.p - self.q * self.q * self.d
        return self._make(self.r * self.p, -self.r * self.q, self.d, norm)

    def __truediv__(self, other):
        if isinstance(other, QuadraticSurd):
            return self * other.reciprocal()
        try:
            f = Fraction(other)
        except TypeError:
            return NotImplemented
        if f == 0:
            raise ZeroDivisionError("surd divided by zero")
        return self._make(self.p * f.denominator, self.q * f.denominator, self.d, self.r * f.numerator)

    def __rtruediv__(self, other):
        try:
            f = Fraction(other)
        except TypeError:
            return NotImplemented
        return self.reciprocal() * f

    # ordering

    def sign(self) -> int:
        return _sign_of(self.p, self.q, self.d)

    def _cmp(self, other) -> int:
        diff = self - other
        return diff.sign() if isinstance(diff, QuadraticSurd) else (diff > 0) - (diff < 0)

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return (self.p, self.q, self.r, self.d) == (other.p, other.q, other.r, other.d)
        return False

    def __hash__(self):
        return hash(("surd", self.p, self.q, self.r, self.d))

    def __floor__(self) -> int:
        # floor(y / r) == floor(floor(y) / r) for integer r > 0
        s = isqrt(self.q * self.q * self.d)
        fl = s if self.q > 0 else -s - 1
        return (self.p + fl) // self.r

    def __float__(self) -> float:
        # display only; never used for decisions
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def __repr__(self):
        return f"QuadraticSurd({self.p}, {self.q}, {self.d}, {self.r})"

    def __str__(self):
        sign = "+" if self.q >= 0 else "-"
        return f"({self.p}{sign}{abs(self.q)}*sqrt({self.d}))/{self.r}"


Number = Union[int, Fraction, QuadraticSurd]


def surd(p: int, q: int, d: int, r: int = 1) -> Number:
    """Build (p + q*sqrt(d))/r, demoting to Fraction when it is rational."""
    if r == 0:
        raise ZeroDivisionError("surd with zero denominator")
    if q == 0:
        return Fraction(p, r)
    if d < 0:
        raise ValueError("negative radicand")
    s, core = _squarefree_split(d) if d > 1 else (1, d)
    if core <= 1:
        root = s if core == 1 else 0
        return Fraction(p + q * root, r)
    return QuadraticSurd(p, q * s, core, r, _canonical=False)


def as_exact(x) -> Number:
    """Coerce ints to Fraction; pass surds and Fractions through."""
    if isinstance(x, QuadraticSurd):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction")
    return Fraction(x)


def floor_value(x: Number) -> int:
    """Greatest integer <= x."""
    return math.floor(x)


def is_integer(x: Number) -> bool:
    if isinstance(x, QuadraticSurd):
        return False
    return Fraction(x).denominator == 1


def floor_strict(x: Number) -> int:
    """Largest integer strictly smaller than x."""
    f = math.floor(x)
    return f - 1 if is_integer(x) else f


def fract(x: Number) -> Number:
    """Fractional part x - floor(x), in [0, 1)."""
    if isinstance(x, QuadraticSurd):
        return x - math.floor(x)
    x = Fraction(x)
    return x - math.floor(x)


def compare(a: Number, b: Number) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if isinstance(a, QuadraticSurd):
        return a._cmp(b)
    if isinstance(b, QuadraticSurd):
        return -b._cmp(a)
    a, b = Fraction(a), Fraction(b)
    return (a > b) - (a < b)


def reciprocal(x: Number) -> Number:
    if isinstance(x, QuadraticSurd):
        return x.reciprocal()
    return 1 / Fraction(x)
