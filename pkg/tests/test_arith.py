import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heavysets.arith import (
    MixedRadicandError,
    QuadraticSurd,
    compare,
    floor_strict,
    floor_value,
    fract,
    rat,
    reciprocal,
    surd,
)

SQRT5_2 = surd(0, 1, 5, 2)


def test_rat_normalizes():
    assert rat(4, 3) == Fraction(4, 3)
    r = rat(6, -8)
    assert (r.numerator, r.denominator) == (-3, 4)
    z = rat(0, 7)
    assert (z.numerator, z.denominator) == (0, 1)
    with pytest.raises(ZeroDivisionError):
        rat(1, 0)


def test_floor_examples():
    assert floor_value(rat(4, 3)) == 1
    assert floor_value(SQRT5_2) == 1
    assert floor_value(rat(-3, 4)) == -1


def test_floor_strict_examples():
    assert floor_strict(rat(5, 2)) == 2
    assert floor_strict(rat(3, 1)) == 2
    assert floor_strict(SQRT5_2) == 1


def test_fract_examples():
    assert fract(rat(4, 3)) == Fraction(1, 3)
    assert fract(rat(7)) == 0
    assert fract(SQRT5_2) == surd(-2, 1, 5, 2)


def test_compare_examples():
    assert compare(rat(1, 2), rat(1, 2)) == 0
    # sqrt(5)/2 vs 9/8: squares 5/4 vs 81/64 -> 320 < 324
    assert 5 * 64 < 81 * 4
    assert compare(SQRT5_2, rat(9, 8)) == -1
    assert compare(surd(0, 1, 2), 1) == 1
    assert compare(rat(9, 8), SQRT5_2) == 1


def test_canonical_form():
    x = surd(2, 4, 5, -6)
    assert (x.p, x.q, x.r, x.d) == (-1, -2, 3, 5)
    assert surd(0, 1, 8) == surd(0, 2, 2)
    assert surd(1, 1, 4) == 3  # demoted
    assert isinstance(surd(3, 0, 5, 2), Fraction)
    assert SQRT5_2 * SQRT5_2 == Fraction(5, 4)


def test_mixed_radicands_rejected():
    with pytest.raises(MixedRadicandError):
        surd(0, 1, 2) + surd(0, 1, 3)


surds = st.builds(
    surd,
    st.integers(-50, 50),
    st.integers(-20, 20).filter(bool),
    st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13]),
    st.integers(1, 30),
)
rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100)
values = st.one_of(surds, rationals)


def _mp(x):
    if isinstance(x, QuadraticSurd):
        return (x.p + x.q * mpmath.sqrt(x.d)) / x.r
    return mpmath.mpf(x.numerator) / x.denominator


@settings(max_examples=300)
@given(values)
def test_floor_brackets(x):
    f = floor_value(x)
    assert f <= x < f + 1
    with mpmath.workdps(60):
        assert f == int(mpmath.floor(_mp(x)))


@settings(max_examples=300)
@given(values)
def test_floor_strict_rule(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        assert floor_strict(x) == x - 1
    else:
        assert floor_strict(x) == floor_value(x)


@given(values)
def test_fract_idempotent_and_in_range(x):
    f = fract(x)
    assert 0 <= f < 1
    assert fract(f) == f


@settings(max_examples=300)
@given(surds, surds)
def test_surd_arithmetic_matches_high_precision(a, b):
    # same radicand required; build b over a's radicand
    b = surd(b.p, b.q, a.d, b.r) if isinstance(b, QuadraticSurd) else b
    with mpmath.workdps(80):
        for got, want in [
            (a + b, _mp(a) + _mp(b)),
            (a - b, _mp(a) - _mp(b)),
            (a * b, _mp(a) * _mp(b)),
            (a / b, _mp(a) / _mp(b)),
        ]:
            assert abs(_mp(got) - want) < mpmath.mpf(10) ** -60
        assert compare(a, b) == (_mp(a) > _mp(b)) - (_mp(a) < _mp(b))


@given(surds)
def test_reciprocal_involution(x):
    assert reciprocal(reciprocal(x)) == x


@given(surds, rationals)
def test_compare_antisymmetric(x, y):
    assert compare(x, y) == -compare(y, x) != 0
    assert (x < y) == (compare(x, y) < 0)
    assert (y < x) == (compare(y, x) < 0)


def test_no_float_in_floor_for_large_values():
    big = surd(0, 10**40 + 7, 2)
    assert floor_value(big) == math.isqrt(2 * (10**40 + 7) ** 2)
