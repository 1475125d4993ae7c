from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heavysets.arith import surd
from heavysets.oracle import count_hits
from heavysets.orbits import (
    ClosedArc,
    heavy_point_search,
    poly_eval,
    poly_prefix_heavy,
    rotation_orbit,
    rotation_prefix_heavy,
)

F = Fraction
MIDDLE = ClosedArc(F(1, 3), F(2, 3))


def test_rotation_examples():
    assert rotation_prefix_heavy(0, 0, ClosedArc(0, F(1, 2)), 10).passed
    r = rotation_prefix_heavy(F(1, 3), F(1, 2), MIDDLE, 100)
    assert r.passed and r.checked_to == 100
    r = rotation_prefix_heavy(F(5, 6), F(1, 2), MIDDLE, 1)
    assert r.verdict == "fail" and r.first_failure == 1


def test_search_examples():
    assert heavy_point_search(F(1, 2), MIDDLE, 100, 12) == F(1, 3)
    assert heavy_point_search(0, ClosedArc(0, 0), 10, 4) == 0
    # regression fixture
    assert heavy_point_search(F(1, 3), ClosedArc(F(2, 5), F(3, 5)), 50, 30) == F(2, 5)


def test_poly_examples():
    assert poly_prefix_heavy([0], ClosedArc(0, F(1, 2)), 10).passed
    r = poly_prefix_heavy([F(1, 2), 0], ClosedArc(F(1, 2), 1), 4)
    assert r.first_failure == 1
    assert poly_prefix_heavy([F(1, 2), F(1, 2)], ClosedArc(F(1, 2), 1), 100).passed
    assert poly_eval([2, -3, 1], 4) == 21


def test_closed_endpoints_count():
    arc = ClosedArc(F(1, 4), F(1, 2))
    assert F(1, 4) in arc and F(1, 2) in arc and F(3, 2) in arc
    assert F(3, 4) not in arc
    # 1 reduces to 0 mod 1, so [1/2, 1] does not contain it
    assert 1 not in ClosedArc(F(1, 2), 1)
    with pytest.raises(ValueError):
        ClosedArc(F(2, 3), F(1, 3))


def test_surd_rotation_against_high_precision():
    # orbit of 0 under the golden-ratio rotation; oracle is 50-digit mpmath
    golden = surd(-1, 1, 5, 2)
    arc = ClosedArc(0, F(1, 2))
    r = rotation_prefix_heavy(0, golden, arc, 200)
    with mpmath.workdps(50):
        g = (mpmath.sqrt(5) - 1) / 2
        hits, expected = 0, None
        for n in range(1, 201):
            hits += mpmath.frac((n - 1) * g) <= mpmath.mpf(1) / 2
            if 2 * hits < n:
                expected = n
                break
    assert r.first_failure == expected


@settings(max_examples=150)
@given(st.builds(F, st.integers(0, 60), st.integers(1, 15)), st.integers(1, 6), st.integers(1, 40))
def test_closed_arc_dominates_half_open_count(alpha, m, n):
    # orbit started at x = alpha visits alpha, 2 alpha, ..., n alpha
    c = F(1, m)
    arc = ClosedArc(0, c)
    closed = sum(1 for y in rotation_orbit(alpha, alpha, n) if y in arc)
    assert closed >= count_hits(alpha, c, n)


@settings(max_examples=100)
@given(st.builds(F, st.integers(0, 30), st.integers(1, 12)), st.integers(0, 11), st.integers(5, 60))
def test_search_monotone_in_N(alpha, t, N):
    x = F(t, 12)
    if rotation_prefix_heavy(x, alpha, MIDDLE, N).passed:
        for M in range(1, N + 1):
            assert rotation_prefix_heavy(x, alpha, MIDDLE, M).passed


@settings(max_examples=100)
@given(st.integers(0, 20), st.integers(1, 10), st.integers(0, 9))
def test_rotation_period_plus_drift(p, q, t):
    # over q*T steps the verdict is decided by one period and the drift sign
    alpha, x = F(p, q), F(t, 10)
    one = rotation_prefix_heavy(x, alpha, MIDDLE, q)
    many = rotation_prefix_heavy(x, alpha, MIDDLE, 4 * q)
    if not one.passed:
        assert not many.passed
    else:
        hits = sum(1 for j in range(q) if (x + j * alpha) in MIDDLE)
        drift = hits - q * MIDDLE.measure
        assert many.passed == (drift >= 0)
