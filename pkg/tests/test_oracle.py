import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heavysets import oracle
from heavysets.arith import surd
from heavysets.oracle import (
    ConsistencyError,
    HeavinessReport,
    IntervalSet,
    count_hits,
    decide_H,
    decide_Hhat,
    heavy_prefix,
    hhat_count,
    hhat_prefix,
    interval_set_Hcn,
    intersect,
    s_counts,
)

F = Fraction


def naive_hits(alpha, c, n):
    # independent: reduce k*p mod q directly
    p, q = alpha.numerator, alpha.denominator
    return sum(1 for k in range(1, n + 1) if F((k * p) % q, q) < c)


def test_count_hits_examples():
    assert count_hits(F(4, 3), F(1, 2), 6) == 4
    assert count_hits(F(7), F(1, 3), 9) == 9
    assert count_hits(F(1, 2), F(1, 2), 1) == 0


def test_s_counts_examples():
    assert s_counts(2, F(2, 3), F(1, 2)) == (2, 1)
    size, size_c = s_counts(3, F(1, 2), F(1, 2))
    assert size == 5
    # k/2 < 3 for k = 1..5; fract(k/2) < 1/2 only for even k
    assert size_c == 2
    assert s_counts(1, F(2), F(1, 2)) == (0, 0)
    assert s_counts(4, surd(0, 1, 5, 2), F(1, 8))[0] == 3


def test_s_counts_rejects_bad_input():
    with pytest.raises(ValueError):
        s_counts(3, F(-1, 2), F(1, 2))
    with pytest.raises(ValueError):
        s_counts(0, F(1, 2), F(1, 2))


def test_s_counts_mismatch_is_hard_failure(monkeypatch):
    monkeypatch.setattr(oracle, "floor_strict", lambda x: -1)
    with pytest.raises(ConsistencyError):
        s_counts(3, F(2, 3), F(1, 2))


def test_heavy_prefix_examples():
    r = heavy_prefix(F(3, 8), F(1, 2), 10)
    assert r.verdict == "fail" and r.first_failure == 5
    r = heavy_prefix(F(4, 11), F(1, 2), 11)
    assert r.verdict == "pass-up-to-11" and r.checked_to == 11
    assert r.min_slack == 0
    # residues 4k mod 11: 4, 8, 1, 5, 9, 2, 6, 10, 3, 7, 0; hits are those <= 5.
    # the slack touches zero at n = 2 as well as at 8 and 10
    zeros = [n for n in range(1, 12) if 2 * naive_hits(F(4, 11), F(1, 2), n) == n]
    assert zeros == [2, 8, 10]
    assert r.min_slack_at == 2
    assert heavy_prefix(surd(0, 1, 5, 2), F(1, 8), 100).verdict == "pass-up-to-100"


def test_decide_H_examples():
    assert decide_H(F(4, 3), F(1, 2))[0] is True
    ok, rep = decide_H(F(4, 3), F(1, 3))
    assert ok is False and rep.verdict == "fail"
    ok, rep = decide_H(F(3, 8), F(1, 2))
    assert ok is False and rep.first_failure == 5
    assert decide_H(F(4, 3), F(1, 2))[1].verdict == "pass"


def test_report_invariant():
    with pytest.raises(ValueError):
        HeavinessReport("fail", None, F(-1), 3)
    with pytest.raises(ValueError):
        HeavinessReport("pass", None, F(-1, 2), 3)
    d = heavy_prefix(F(3, 8), F(1, 2), 10).to_dict()
    assert d["min_slack"] == {"num": -1, "den": 2}
    json.dumps(d)


def test_hhat_examples():
    assert hhat_count(F(8, 3), 2, 3) == 2
    assert hhat_count(F(15), 5, 7) == 7
    assert hhat_count(F(1), 2, 1) == 0
    assert decide_Hhat(F(8, 3), 2)[0] is True
    ok, rep = decide_Hhat(F(1), 2)
    assert ok is False and rep.first_failure == 1
    assert decide_Hhat(F(2), 2)[0] is True


def test_interval_examples():
    assert interval_set_Hcn(F(1, 2), 1).intervals == ((0, F(1, 2)),)
    assert interval_set_Hcn(F(1, 2), 2).intervals == ((0, F(3, 4)),)
    a = IntervalSet(((0, F(1, 2)),))
    b = IntervalSet(((0, F(3, 4)),))
    assert intersect([a, b]) == a
    assert intersect([a, IntervalSet.full()]) == a
    assert len(intersect([IntervalSet(((0, F(1, 4)),)), IntervalSet(((F(1, 2), F(3, 4)),))])) == 0


def test_interval_normalization():
    s = IntervalSet(((F(1, 2), F(3, 4)), (0, F(1, 4)), (F(1, 4), F(1, 3)), (F(1, 5), F(1, 5))))
    assert s.intervals == ((0, F(1, 3)), (F(1, 2), F(3, 4)))
    assert s.measure == F(1, 3) + F(1, 4)
    with pytest.raises(ValueError):
        IntervalSet(((F(1, 2), F(3, 2)),))


def test_interval_json_round_trip():
    s = interval_set_Hcn(F(1, 3), 7)
    assert IntervalSet.from_json(s.to_json()) == s
    assert all(len(q) == 4 for q in json.loads(s.to_json()))


# ---------------------------------------------------------------- properties

rationals = st.builds(F, st.integers(-60, 200), st.integers(1, 40))
cs = st.builds(F, st.integers(1, 6), st.integers(1, 7)).filter(lambda c: 0 < c <= 1)


@settings(max_examples=300)
@given(rationals, cs)
def test_decide_H_matches_three_periods(alpha, c):
    ok, rep = decide_H(alpha, c)
    N = 3 * alpha.denominator
    brute = heavy_prefix(alpha, c, N)
    assert ok == brute.passed
    if not ok:
        assert rep.first_failure == brute.first_failure
    # independent naive count agrees with the kernel
    for n in (1, alpha.denominator, N):
        assert count_hits(alpha, c, n) == naive_hits(alpha, c, n)


@settings(max_examples=200)
@given(st.builds(F, st.integers(1, 10**5), st.integers(256, 3000)), cs)
def test_numpy_and_pure_paths_agree(alpha, c):
    fast = decide_H(alpha, c)
    saved = oracle._NUMPY_MIN_PERIOD
    oracle._NUMPY_MIN_PERIOD = 10**12
    try:
        slow = decide_H(alpha, c)
    finally:
        oracle._NUMPY_MIN_PERIOD = saved
    assert fast[0] == slow[0]
    assert fast[1] == slow[1]


@settings(max_examples=200)
@given(rationals, st.integers(1, 6))
def test_decide_Hhat_matches_three_periods(alpha, m):
    ok, rep = decide_Hhat(alpha, m)
    brute = hhat_prefix(alpha, m, 3 * alpha.denominator * m)
    assert ok == brute.passed
    if not ok:
        assert rep.first_failure == brute.first_failure


@settings(max_examples=200)
@given(st.builds(F, st.integers(1, 120), st.integers(1, 30)), st.integers(1, 6), st.integers(1, 5))
def test_s_count_condition_matches_decision(alpha, m, j):
    c = F(j, m) if j < m else F(1, m)
    p = alpha.numerator
    # S-counts repeat with period p in n; two periods are checked
    s_side = all(sc * c.denominator >= c.numerator * s for s, sc in (s_counts(n, alpha, c) for n in range(1, 2 * p + 1)))
    assert decide_H(alpha, c)[0] == s_side


@settings(max_examples=200)
@given(
    st.builds(F, st.integers(1, 40), st.integers(1, 40)),
    st.integers(1, 5),
    st.integers(1, 5),
    st.integers(1, 4),
)
def test_shifted_reciprocal_count_differences(beta, m, u, j):
    # 1/alpha = 1/beta + t with t = m*u; c = j/m makes c*t an integer
    c = F(j % m or 1, m) if m > 1 else F(1, 2)
    t = m * u if m > 1 else 2 * u
    alpha = 1 / (1 / beta + t)
    for n in range(1, 8):
        sa, sca = s_counts(n, alpha, c)
        sb, scb = s_counts(n, beta, c)
        delta = n * (beta - alpha) / (alpha * beta)
        assert sa - sb == delta
        assert sca - scb == c * delta


surds = st.builds(
    surd,
    st.integers(-20, 20),
    st.integers(-5, 5).filter(bool),
    st.sampled_from([2, 3, 5, 7, 11]),
    st.integers(1, 9),
)


@settings(max_examples=200)
@given(st.one_of(rationals, surds), st.integers(1, 8), st.integers(1, 60))
def test_count_identity_scaled_floor(alpha, m, n):
    assert count_hits(alpha, F(1, m), n) == hhat_count(m * alpha, m, n)


def test_interval_membership_oracle_1000():
    rng = random.Random(2024)
    for _ in range(1000):
        q = rng.randint(1, 60)
        alpha = F(rng.randrange(q), q)
        b = rng.randint(2, 6)
        c = F(rng.randint(1, b - 1), b)
        n = rng.randint(1, 12)
        inside = alpha in interval_set_Hcn(c, n)
        assert inside == (count_hits(alpha, c, n) >= c * n), (alpha, c, n)


@pytest.mark.parametrize("c", [F(1, 2), F(1, 3), F(2, 5)])
def test_running_intersection_shrinks(c):
    running = IntervalSet.full()
    prev = running.measure
    for n in range(1, 31):
        running = running & interval_set_Hcn(c, n)
        assert running.measure <= prev
        prev = running.measure
