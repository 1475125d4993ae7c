"""Continued fractions: finite and eventually periodic expansions.

Finite expansions are stored as ``a0`` plus a tail of positive entries and
are not required to be canonical, so that both parity forms of a rational
can be represented. Quadratic surds expand to an :class:`EventuallyPeriodicCF`
whose head always holds ``a0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator, Sequence, Union

from .arith import Number, QuadraticSurd, as_exact, fract, is_integer


class DivisibilityError(ValueError):
    """Raised when a scaling precondition fails; ``index`` names the entry."""

    def __init__(self, index: int, entry: int, m: int):
        super().__init__(f"entry a_{index} = {entry} is not divisible by {m}")
        self.index = index
        self.entry = entry
        self.m = m


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    tail: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(int(a) for a in self.tail))
        for i, a in enumerate(self.tail, start=1):
            if a < 1:
                raise ValueError(f"partial quotient a_{i} = {a} must be >= 1")

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "CFExpansion":
        if not entries:
            raise ValueError("empty expansion")
        return cls(int(entries[0]), tuple(entries[1:]))

    @property
    def entries(self) -> tuple[int, ...]:
        return (self.a0,) + self.tail

    def __len__(self) -> int:
        return 1 + len(self.tail)

    def __getitem__(self, k: int) -> int:
        return self.entries[k]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    @property
    def is_canonical(self) -> bool:
        return not self.tail or self.tail[-1] >= 2

    @property
    def parity(self) -> str:
        return "odd" if len(self) % 2 else "even"

    def value(self) -> Fraction:
        return cf_eval(self)

    def __str__(self):
        if not self.tail:
            return f"[{self.a0}]"
        return f"[{self.a0}; {', '.join(map(str, self.tail))}]"


@dataclass(frozen=True)
class EventuallyPeriodicCF:
    """Infinite expansion ``head`` followed by ``cycle`` repeated forever."""

    head: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        head = tuple(int(a) for a in self.head)
        cycle = tuple(int(a) for a in self.cycle)
        if not head:
            raise ValueError("head must contain a0")
        if not cycle:
            raise ValueError("cycle must be nonempty")
        if any(a < 1 for a in head[1:] + cycle):
            raise ValueError("partial quotients after a0 must be >= 1")
        head, cycle = _normalize_periodic(head, cycle)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "cycle", cycle)

    def __getitem__(self, k: int) -> int:
        h = len(self.head)
        if k < h:
            return self.head[k]
        return self.cycle[(k - h) % len(self.cycle)]

    def __iter__(self) -> Iterator[int]:
        yield from self.head
        while True:
            yield from self.cycle

    def take(self, n: int) -> tuple[int, ...]:
        return tuple(islice(iter(self), n))

    def aligned_cycle(self) -> tuple[int, ...]:
        """The cycle, doubled when its length is odd so index parity repeats."""
        return self.cycle * 2 if len(self.cycle) % 2 else self.cycle

    def span(self) -> int:
        """Indices 0..span-1 cover the head and one parity-aligned cycle."""
        return len(self.head) + len(self.aligned_cycle())

    def value(self, radicand: int | None = None) -> QuadraticSurd:
        return periodic_value(self, radicand)

    def __str__(self):
        parts = [str(a) for a in self.head[1:]]
        parts.append("{" + ", ".join(map(str, self.cycle)) + "}")
        return f"[{self.head[0]}; {', '.join(parts)}]"


def _minimal_period(cycle: tuple[int, ...]) -> tuple[int, ...]:
    n = len(cycle)
    for k in range(1, n):
        if n % k == 0 and cycle[:k] * (n // k) == cycle:
            return cycle[:k]
    return cycle


def _normalize_periodic(head, cycle):
    cycle = _minimal_period(cycle)
    # absorb head entries that are just the cycle rolled back
    while len(head) > 1 and head[-1] == cycle[-1]:
        head = head[:-1]
        cycle = (cycle[-1],) + cycle[:-1]
    return head, cycle


@dataclass(frozen=True)
class Convergent:
    k: int
    a: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class ConvergentTable:
    rows: tuple[Convergent, ...]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, k):
        return self.rows[k]

    def pairs(self) -> list[tuple[int, int]]:
        return [(r.p, r.q) for r in self.rows]


CF = Union[CFExpansion, EventuallyPeriodicCF]


def cf_expand(x) -> CFExpansion:
    """Canonical expansion of a rational by the Euclidean algorithm."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    entries = []
    while True:
        a, rem = divmod(num, den)
        entries.append(a)
        if rem == 0:
            break
        num, den = den, rem
    return CFExpansion.from_entries(entries)


def to_parity(e: CFExpansion, parity: str) -> CFExpansion:
    """Same value, with length of the requested parity ('odd' or 'even')."""
    if parity not in ("odd", "even"):
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    if e.parity == parity:
        return e
    entries = list(e.entries)
    if len(entries) >= 2 and entries[-1] == 1:
        entries.pop()
        entries[-1] += 1
    else:
        # <..., a> == <..., a - 1, 1>; for length 1 this gives [t - 1; 1]
        entries[-1] -= 1
        entries.append(1)
    return CFExpansion.from_entries(entries)


def cf_eval(e: CFExpansion | Sequence[int]) -> Fraction:
    entries = e.entries if isinstance(e, CFExpansion) else tuple(e)
    value = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        value = a + 1 / value
    return value


def convergents(e: CF, count: int) -> ConvergentTable:
    """First ``count`` convergents p_k/q_k via the three-term recurrence."""
    if count < 1:
        raise ValueError("count must be positive")
    if isinstance(e, CFExpansion) and count > len(e):
        raise ValueError(f"expansion has only {len(e)} entries, asked for {count}")
    p_prev, q_prev = 1, 0
    p, q = None, None
    rows = []
    for k, a in enumerate(islice(iter(e), count)):
        if k == 0:
            p, q = a, 1
        else:
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
        rows.append(Convergent(k, a, p, q))
    return ConvergentTable(tuple(rows))


def surd_cf(x: QuadraticSurd) -> EventuallyPeriodicCF:
    """Gauss iteration on exact surd states until a state repeats."""
    if not isinstance(x, QuadraticSurd):
        raise TypeError("surd_cf expects an irrational QuadraticSurd")
    entries = []
    seen: dict[QuadraticSurd, int] = {}
    state = x
    k = 0
    while True:
        if k >= 1:
            if state in seen:
                start = seen[state]
                return EventuallyPeriodicCF(tuple(entries[:start]), tuple(entries[start:]))
            seen[state] = k
        a = math.floor(state)
        entries.append(a)
        state = (state - a).reciprocal()
        k += 1


def periodic_value(e: EventuallyPeriodicCF, radicand: int | None = None) -> Number:
    """Exact value of an eventually periodic expansion.

    The purely periodic part y = [c0; c1, ..., c_{n-1}, y] solves
    y = (P y + P') / (Q y + Q'), a quadratic with one positive root.
    Passing the known square-free ``radicand`` skips factoring the
    discriminant, which matters for long cycles.
    """
    from .arith import isqrt, surd

    P, P1, Q, Q1 = 1, 0, 0, 1  # matrix product of [[c, 1], [1, 0]]
    for c in e.cycle:
        P, P1, Q, Q1 = P * c + P1, P, Q * c + Q1, Q
    # Q y^2 + (Q1 - P) y - P1 = 0
    A, B, C = Q, Q1 - P, -P1
    disc = B * B - 4 * A * C
    s = isqrt(disc)
    if s * s == disc:
        raise ValueError("periodic part is rational; not a valid periodic expansion")
    if radicand is not None:
        k2, rem = divmod(disc, radicand)
        k = isqrt(k2)
        if rem or k * k != k2:
            raise ValueError(f"discriminant {disc} is not a square multiple of {radicand}")
        y = surd(-B, k, radicand, 2 * A)
    else:
        y = surd(-B, 1, disc, 2 * A)
    value = y
    for a in reversed(e.head):
        value = a + 1 / value
    return value


def phi(x: Number) -> Number:
    """Gauss shift: 1/fract(x) for non-integers, 0 for integers."""
    x = as_exact(x)
    if is_integer(x):
        return Fraction(0)
    f = fract(x)
    return f.reciprocal() if isinstance(f, QuadraticSurd) else 1 / f


def phi_square(x: Number) -> Number:
    return phi(phi(x))


def drop_two(e: CFExpansion) -> CFExpansion:
    """Sequence utility: the expansion with its first two entries removed."""
    if len(e) < 3:
        raise ValueError("need at least three entries to drop two")
    return CFExpansion.from_entries(e.entries[2:])


def _scale_entries(entries: Sequence[int], m: int, direction: str, offset: int = 0) -> list[int]:
    if direction == "multiply":
        shrink = 1  # odd positions are divided by m, even ones multiplied
    elif direction == "divide":
        shrink = 0
    else:
        raise ValueError(f"direction must be 'multiply' or 'divide', got {direction!r}")
    out = []
    for i, a in enumerate(entries, start=offset):
        if i % 2 == shrink:
            if a % m:
                raise DivisibilityError(i, a, m)
            out.append(a // m)
        else:
            out.append(a * m)
    return out


def scale_identity(e: CF, m: int, direction: str) -> CF:
    """Rescale an expansion by m using the alternating-entry identity.

    ``multiply`` maps <x0, m x1, x2, m x3, ...> to <m x0, x1, m x2, x3, ...>,
    whose value is m times larger; ``divide`` is the inverse map.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if isinstance(e, EventuallyPeriodicCF):
        cyc = e.aligned_cycle()
        head = _scale_entries(e.head, m, direction)
        cycle = _scale_entries(cyc, m, direction, offset=len(e.head))
        return EventuallyPeriodicCF(tuple(head), tuple(cycle))
    return CFExpansion.from_entries(_scale_entries(e.entries, m, direction))


def reciprocal_cf(e: CF) -> CF:
    """Expansion of 1/x for x > 0 given the expansion of x."""
    if isinstance(e, EventuallyPeriodicCF):
        if e.head[0] < 0:
            raise ValueError("reciprocal_cf needs a positive value")
        if e.head[0] == 0:
            if len(e.head) > 1:
                return EventuallyPeriodicCF(e.head[1:], e.cycle)
            # head is just [0]; the cycle rotates into the head
            return EventuallyPeriodicCF((e.cycle[0],), e.cycle[1:] + e.cycle[:1])
        return EventuallyPeriodicCF((0,) + e.head, e.cycle)
    if e.a0 < 0 or (e.a0 == 0 and not e.tail):
        raise ValueError("reciprocal_cf needs a positive value")
    if e.a0 == 0:
        return CFExpansion.from_entries(e.tail)
    return CFExpansion.from_entries((0,) + e.entries)


def expand(x: Number) -> CF:
    """Canonical expansion of any exact scalar."""
    x = as_exact(x)
    if isinstance(x, QuadraticSurd):
        return surd_cf(x)
    return cf_expand(x)


def odd_form(x) -> CF:
    """Odd-length expansion of a value or expansion (infinite ones pass through)."""
    if isinstance(x, EventuallyPeriodicCF):
        return x
    if isinstance(x, CFExpansion):
        return to_parity(x, "odd")
    e = expand(x)
    return e if isinstance(e, EventuallyPeriodicCF) else to_parity(e, "odd")


def even_form(x) -> CF:
    if isinstance(x, EventuallyPeriodicCF):
        return x
    if isinstance(x, CFExpansion):
        return to_parity(x, "even")
    e = expand(x)
    return e if isinstance(e, EventuallyPeriodicCF) else to_parity(e, "even")


def cf_value(e: CF) -> Number:
    return periodic_value(e) if isinstance(e, EventuallyPeriodicCF) else cf_eval(e)
