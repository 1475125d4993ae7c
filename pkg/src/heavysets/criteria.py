"""Continued-fraction membership criteria and the claim auditor.

The criteria read partial quotients (or convergent numerators/denominators)
only. The auditor pits them against the counting oracles in
:mod:`heavysets.oracle`, so every audited statement is checked by two
disjoint code paths.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .arith import Number, QuadraticSurd, as_exact, surd
from .cf import (
    CF,
    CFExpansion,
    EventuallyPeriodicCF,
    cf_eval,
    convergents,
    odd_form,
    phi_square,
    reciprocal_cf,
    scale_identity,
    surd_cf,
)
from .oracle import count_hits, decide_H, decide_Hhat, heavy_prefix, hhat_count


class ParityError(ValueError):
    pass


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")


def _indices(e: CF, parity: int, depth: Optional[int] = None) -> range:
    """Indices k < min(L, depth) with k % 2 == parity."""
    limit = len(e) if isinstance(e, CFExpansion) else e.span()
    if depth is not None:
        limit = min(limit, depth)
    return range(parity, limit, 2)


def _require_parity(e: CF, want: str) -> None:
    if isinstance(e, CFExpansion) and e.parity != want:
        raise ParityError(f"expected a {want}-length expansion, got length {len(e)}: {e}")


def c2_odd_criterion(e: CF, m: int) -> bool:
    """m divides every odd-indexed partial quotient of the odd expansion."""
    _check_m(m)
    _require_parity(e, "odd")
    return all(e[k] % m == 0 for k in _indices(e, 1))


def c3_denominator_criterion(e: CF, m: int, depth: Optional[int] = None) -> bool:
    """m divides q_k for every odd k < min(L, depth).

    For periodic input the default depth covers the head and one aligned
    cycle; by the recurrence q_{k+2} = a_{k+2} q_{k+1} + q_k with coprime
    neighbours this is as strong as checking every index.
    """
    _check_m(m)
    _require_parity(e, "odd")
    ks = _indices(e, 1, depth)
    if not ks:
        return True
    table = convergents(e, ks[-1] + 1)
    return all(table[k].q % m == 0 for k in ks)


def in_Rm(e: CF, m: int) -> bool:
    """Membership in R_m: same predicate as the odd-entry criterion."""
    return c2_odd_criterion(e, m)


def in_R_first(e: CF, m: int) -> bool:
    """Membership in R(m): integer, or the first odd entry a_1 divisible by m."""
    _check_m(m)
    _require_parity(e, "odd")
    if isinstance(e, CFExpansion) and len(e) == 1:
        return True
    return e[1] % m == 0


def even_criteria_Hhat(e: CF, m: int, depth: Optional[int] = None) -> tuple[bool, bool]:
    """(m | a_k for even k, m | p_k for even k) on an even-length expansion."""
    _check_m(m)
    _require_parity(e, "even")
    entry_ok = all(e[k] % m == 0 for k in _indices(e, 0))
    ks = _indices(e, 0, depth)
    numer_ok = True
    if ks:
        table = convergents(e, ks[-1] + 1)
        numer_ok = all(table[k].p % m == 0 for k in ks)
    return entry_ok, numer_ok


def max_modulus(x) -> int:
    """gcd of the odd-indexed entries of the odd expansion; 0 means every m."""
    e = odd_form(x)
    g = 0
    for k in _indices(e, 1):
        g = math.gcd(g, e[k])
    return g


def lcm_intersection_check(x, m: int, n: int) -> bool:
    e = odd_form(x)
    both = c2_odd_criterion(e, m) and c2_odd_criterion(e, n)
    return both == c2_odd_criterion(e, math.lcm(m, n))


def reciprocal_of_scaled(e: CF, m: int) -> CF:
    """Expansion of 1/(m*x) built from the odd expansion of x > 0.

    Needs every odd-indexed entry divisible by m: scale by m with the
    alternating-entry identity, then take the reciprocal.
    """
    return reciprocal_cf(scale_identity(e, m, "multiply"))


@dataclass(frozen=True)
class MembershipEvidence:
    subject: Number
    m: int
    via_C1: Optional[bool]
    via_C2: bool
    via_C3: bool
    odd_form: CF
    prefix: Optional[object] = None  # HeavinessReport for irrational subjects

    def __post_init__(self):
        if self.via_C2 != self.via_C3:
            raise AssertionError(f"C2 and C3 disagree for {self.subject}, m={self.m}")

    @property
    def member(self) -> bool:
        return self.via_C1 if self.via_C1 is not None else self.via_C2


def membership(x, m: int, prefix_n: int = 10_000) -> MembershipEvidence:
    """Evidence for x in H_m from the oracle (rationals) and both CF criteria."""
    _check_m(m)
    if isinstance(x, (CFExpansion, EventuallyPeriodicCF)):
        e = odd_form(x)
        x = cf_eval(e) if isinstance(e, CFExpansion) else e.value()
    else:
        x = as_exact(x)
        e = odd_form(x)
    c2 = c2_odd_criterion(e, m)
    c3 = c3_denominator_criterion(e, m)
    if isinstance(x, QuadraticSurd):
        return MembershipEvidence(x, m, None, c2, c3, e, heavy_prefix(x, Fraction(1, m), prefix_n))
    return MembershipEvidence(x, m, decide_H(x, Fraction(1, m))[0], c2, c3, e)


# ---------------------------------------------------------------- sampling


def _sample_odd_cf(rng: random.Random, length: int, entry_bound: int, m: int, odd_positions: str) -> CFExpansion:
    if length < 1 or length % 2 == 0:
        raise ValueError(f"length must be odd, got {length}")
    if entry_bound < m:
        raise ValueError("entry_bound must be >= m")
    entries = [rng.randint(0, entry_bound)]
    for k in range(1, length):
        constrained = k % 2 == 1 and (odd_positions == "all" or k == 1)
        if constrained:
            entries.append(m * rng.randint(1, entry_bound // m))
        else:
            entries.append(rng.randint(1, entry_bound))
    return CFExpansion.from_entries(entries)


def sample_Rm(m: int, length: int, entry_bound: int, seed) -> CFExpansion:
    """Random odd expansion whose odd-indexed entries are multiples of m.

    ``seed`` may be an int or a ``random.Random`` to draw from.
    """
    _check_m(m)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return _sample_odd_cf(rng, length, entry_bound, m, "all")


def sample_R_first(m: int, length: int, entry_bound: int, seed) -> CFExpansion:
    """Random odd expansion in R(m): only a_1 is forced to a multiple of m."""
    _check_m(m)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return _sample_odd_cf(rng, length, entry_bound, m, "first")


def random_odd_cf(rng: random.Random, max_length: int, entry_bound: int) -> CFExpansion:
    length = rng.randrange(1, max_length + 1, 2)
    return _sample_odd_cf(rng, length, entry_bound, 1, "all")


def random_surd(rng: random.Random) -> QuadraticSurd:
    while True:
        d = rng.randint(2, 40)
        if math.isqrt(d) ** 2 == d:
            continue
        q = rng.choice([-3, -2, -1, 1, 2, 3])
        x = surd(rng.randint(-12, 12), q, d, rng.randint(1, 7))
        if isinstance(x, QuadraticSurd):
            return x


# ---------------------------------------------------------------- auditor


@dataclass(frozen=True)
class CorpusSpec:
    """What an audit runs over; every field is recorded in the report."""

    qmax: int = 0  # enumerated rationals p/q, 1 <= q <= qmax, 0 <= p <= pfactor*q
    pfactor: int = 4
    m_values: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    random_cfs: int = 0
    cf_max_length: int = 9
    cf_entry_bound: int = 50
    surds: int = 0
    surd_prefix: int = 200
    rm_samples: int = 0  # per m
    rm_max_length: int = 5
    rm_entry_factor: int = 2  # entry bound = factor * m (at least 3)

    def describe(self) -> dict:
        return asdict(self)


@dataclass
class AuditReport:
    claim: str
    corpus: dict
    seed: int
    cases_checked: int = 0
    agreements: int = 0
    counterexamples: list = field(default_factory=list)

    def record(self, label: str, lhs, rhs, agree: Optional[bool] = None) -> None:
        self.cases_checked += 1
        if agree is None:
            agree = lhs == rhs
        if agree:
            self.agreements += 1
        else:
            self.counterexamples.append({"input": label, "lhs": lhs, "rhs": rhs})

    def merge(self, other: "AuditReport") -> "AuditReport":
        if other.claim != self.claim:
            raise ValueError("cannot merge reports for different claims")
        return AuditReport(
            self.claim,
            self.corpus,
            self.seed,
            self.cases_checked + other.cases_checked,
            self.agreements + other.agreements,
            self.counterexamples + other.counterexamples,
        )

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "corpus": self.corpus,
            "seed": self.seed,
            "cases_checked": self.cases_checked,
            "agreements": self.agreements,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def enumerate_rationals(qmax: int, pfactor: int = 4) -> Iterator[Fraction]:
    """Reduced p/q with 1 <= q <= qmax and 0 <= p <= pfactor*q, by q then p."""
    for q in range(1, qmax + 1):
        for p in range(0, pfactor * q + 1):
            if math.gcd(p, q) == 1:
                yield Fraction(p, q)


def _fmt(x) -> str:
    return str(x)


class _Corpus:
    """Materialized corpus, generated once per audit from the seed."""

    def __init__(self, spec: CorpusSpec, seed: int):
        self.spec = spec
        rng = random.Random(seed)
        self.rationals = list(enumerate_rationals(spec.qmax, spec.pfactor))
        self.cfs = [random_odd_cf(rng, spec.cf_max_length, spec.cf_entry_bound) for _ in range(spec.random_cfs)]
        self.surds = [random_surd(rng) for _ in range(spec.surds)]
        self.rm: dict[int, list[Fraction]] = {}
        self.r_first: dict[int, list[Fraction]] = {}
        for m in spec.m_values:
            bound = max(3, spec.rm_entry_factor * m)
            self.rm[m] = [
                cf_eval(sample_Rm(m, rng.randrange(1, spec.rm_max_length + 1, 2), bound, rng))
                for _ in range(spec.rm_samples)
            ]
            self.r_first[m] = [
                cf_eval(sample_R_first(m, rng.randrange(1, spec.rm_max_length + 1, 2), bound, rng))
                for _ in range(spec.rm_samples)
            ]
        self._odd: dict = {}

    def odd(self, x):
        e = self._odd.get(x)
        if e is None:
            e = self._odd[x] = odd_form(x)
        return e


def _h(alpha, m: int) -> bool:
    return decide_H(alpha, Fraction(1, m))[0]


def _audit_T1a(cor: _Corpus, rep: AuditReport) -> None:
    for a in cor.rationals:
        for m in cor.spec.m_values:
            rep.record(f"alpha={a}, m={m}", _h(a, m), c2_odd_criterion(cor.odd(a), m))


def _audit_T1b(cor: _Corpus, rep: AuditReport) -> None:
    subjects = [(str(e), e) for e in cor.cfs]
    subjects += [(f"odd({a})", cor.odd(a)) for a in cor.rationals]
    subjects += [(f"cf({s})", surd_cf(s)) for s in cor.surds]
    for label, e in subjects:
        for m in cor.spec.m_values:
            rep.record(f"{label}, m={m}", c2_odd_criterion(e, m), c3_denominator_criterion(e, m))


def _audit_T2(cor: _Corpus, rep: AuditReport) -> None:
    for a in cor.rationals:
        for m in cor.spec.m_values:
            rep.record(f"alpha={a}, m={m}", _h(a, m), decide_Hhat(m * a, m)[0])
    n = cor.spec.surd_prefix
    for s in cor.surds:
        for m in cor.spec.m_values:
            rep.record(f"alpha={s}, m={m}, n={n}", count_hits(s, Fraction(1, m), n), hhat_count(m * s, m, n))


def _audit_T3(cor: _Corpus, rep: AuditReport) -> None:
    from .cf import even_form

    for a in cor.rationals:
        e = even_form(a)
        for m in cor.spec.m_values:
            rep.record(f"alpha={a}, even={e}, m={m}", decide_Hhat(a, m)[0], even_criteria_Hhat(e, m)[0])


def _audit_T4(cor: _Corpus, rep: AuditReport) -> None:
    for a in cor.rationals:
        if a <= 0:
            continue
        for m in cor.spec.m_values:
            rep.record(f"alpha={a}, m={m}", _h(a, m), decide_Hhat(1 / a, m)[0])


def _audit_C1(cor: _Corpus, rep: AuditReport) -> None:
    ms = cor.spec.m_values
    for a in cor.rationals:
        for i, m in enumerate(ms):
            for n in ms[i:]:
                rep.record(f"alpha={a}, m={m}, n={n}", _h(a, m) and _h(a, n), _h(a, math.lcm(m, n)))


def _audit_C2r(cor: _Corpus, rep: AuditReport) -> None:
    for a in cor.rationals:
        if a <= 0:
            continue
        for m in cor.spec.m_values:
            rep.record(f"alpha={a}, m={m}", _h(a, m), _h(1 / (m * a), m))
    # irrationals cannot be decided by counting; compare the CF criterion on
    # independently expanded values x and 1/(m x)
    for s in cor.surds:
        if s < 0:
            s = -s
        for m in cor.spec.m_values:
            rep.record(
                f"alpha={s}, m={m} (cf)",
                c2_odd_criterion(surd_cf(s), m),
                c2_odd_criterion(surd_cf(1 / (m * s)), m),
            )


def _audit_T5(cor: _Corpus, rep: AuditReport) -> None:
    for m in cor.spec.m_values:
        members = list(cor.rm[m]) + [a for a in cor.rationals if in_Rm(cor.odd(a), m)]
        for a in members:
            for j in range(1, m):
                rep.record(f"alpha={a}, m={m}, c={j}/{m}", True, decide_H(a, Fraction(j, m))[0])


def _audit_T6(cor: _Corpus, rep: AuditReport) -> None:
    for m in cor.spec.m_values:
        for a in list(cor.rationals) + cor.rm[m]:
            rep.record(f"alpha={a}, m={m}", _h(a, m), in_Rm(cor.odd(a), m))


def _audit_L4(cor: _Corpus, rep: AuditReport) -> None:
    for m in cor.spec.m_values:
        subjects = cor.r_first[m] + [a for a in cor.rationals if in_R_first(cor.odd(a), m)]
        for a in subjects:
            b = phi_square(a)
            for j in range(1, m + 1):
                c = Fraction(j, m)
                rep.record(f"alpha={a}, phi2={b}, c={c}", decide_H(a, c)[0], decide_H(b, c)[0])


def _audit_L6(cor: _Corpus, rep: AuditReport) -> None:
    for a in cor.rationals:
        for m in cor.spec.m_values:
            lhs = _h(a, m)
            rhs = in_R_first(cor.odd(a), m)
            rep.record(f"alpha={a}, m={m}", lhs, rhs, agree=(not lhs) or rhs)


CLAIMS: dict[str, tuple[Callable[[_Corpus, AuditReport], None], str]] = {
    "T1a": (_audit_T1a, "decide_H(a, 1/m) == odd-entry criterion"),
    "T1b": (_audit_T1b, "odd-entry criterion == convergent-denominator criterion"),
    "T2": (_audit_T2, "a in H_m == m*a in Hhat_m (counts for surds)"),
    "T3": (_audit_T3, "decide_Hhat(a, m) == even-entry criterion on the even expansion"),
    "T4": (_audit_T4, "a in H_m == 1/a in Hhat_m"),
    "C1": (_audit_C1, "a in H_m and H_n == a in H_lcm(m,n)"),
    "C2r": (_audit_C2r, "a in H_m == 1/(m*a) in H_m"),
    "T5": (_audit_T5, "R_m samples lie in H(j/m)"),
    "T6": (_audit_T6, "decide_H(a, 1/m) == a in R_m"),
    "L4": (_audit_L4, "for a in R(m): decide_H(a, c) == decide_H(phi^2(a), c)"),
    "L6": (_audit_L6, "a in H_m implies a in R(m)"),
}


def audit(claim: str, corpus: CorpusSpec, seed: int = 0) -> AuditReport:
    """Evaluate both sides of ``claim`` over ``corpus``; deterministic in ``seed``."""
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")
    for m in corpus.m_values:
        _check_m(m)
    runner, statement = CLAIMS[claim]
    desc = corpus.describe()
    desc["statement"] = statement
    report = AuditReport(claim, desc, seed)
    runner(_Corpus(corpus, seed), report)
    return report
