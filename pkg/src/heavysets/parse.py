"""Text grammar for exact values and continued-fraction literals.

    integer   := [+-]? digits
    rational  := integer "/" integer
    surd      := "(" (integer)? [+-]? digits? "*"? "sqrt(" digits ")" ")" ("/" integer)?
    cf        := "[" integer (";" entries)? "]"
    entries   := entry ("," entry)*  with an optional trailing "{" entries "}" cycle

Whitespace is ignored everywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .arith import QuadraticSurd, surd
from .cf import CFExpansion, EventuallyPeriodicCF


class ParseError(ValueError):
    def __init__(self, production: str, text: str, detail: str = ""):
        msg = f"could not parse {text!r} as {production}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.production = production


_INT = re.compile(r"[+-]?\d+")
_RAT = re.compile(r"([+-]?\d+)/([+-]?\d+)")
_SURD = re.compile(
    r"\((?:([+-]?\d+)(?=[+-]))?([+-])?(\d+)?\*?sqrt\((\d+)\)\)(?:/([+-]?\d+))?"
)


def parse_number(s: str):
    """Parse an integer, rational or surd into an exact value."""
    t = re.sub(r"\s+", "", s)
    if not t:
        raise ParseError("value", s, "empty input")
    if _INT.fullmatch(t):
        return Fraction(int(t))
    m = _RAT.fullmatch(t)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ParseError("rational", s, "zero denominator")
        return Fraction(int(m.group(1)), den)
    if "sqrt" in t:
        m = _SURD.fullmatch(t)
        if not m:
            raise ParseError("surd", s, "expected (p+q*sqrt(d))/r")
        p = int(m.group(1) or 0)
        sign = -1 if m.group(2) == "-" else 1
        q = sign * int(m.group(3) or 1)
        r = int(m.group(5) or 1)
        if r == 0:
            raise ParseError("surd", s, "zero denominator")
        d = int(m.group(4))
        if d < 2:
            raise ParseError("surd", s, "radicand must be >= 2")
        return surd(p, q, d, r)
    raise ParseError("value", s, "expected n, p/q or (p+q*sqrt(d))/r")


def _entries(chunk: str, s: str) -> list[int]:
    out = []
    for item in chunk.split(","):
        if not _INT.fullmatch(item):
            raise ParseError("cf-entry", s, f"bad entry {item!r}")
        out.append(int(item))
    return out


def parse_cf(s: str):
    """Parse ``[a0; a1, a2]`` or ``[a0; a1, {a2, a3}]``."""
    t = re.sub(r"\s+", "", s)
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError("cf-literal", s, "expected [a0; a1, ...]")
    body = t[1:-1]
    a0_text, _, rest = body.partition(";")
    if not _INT.fullmatch(a0_text):
        raise ParseError("cf-literal", s, f"bad a0 {a0_text!r}")
    a0 = int(a0_text)
    cycle = None
    if "{" in rest:
        m = re.fullmatch(r"(.*?),?\{([^{}]+)\}", rest)
        if not m:
            raise ParseError("cf-cycle", s, "cycle must be the final {...} group")
        rest, cycle_text = m.group(1), m.group(2)
        cycle = _entries(cycle_text, s)
    tail = _entries(rest, s) if rest else []
    try:
        if cycle is not None:
            return EventuallyPeriodicCF(tuple([a0] + tail), tuple(cycle))
        return CFExpansion(a0, tuple(tail))
    except ValueError as exc:
        raise ParseError("cf-literal", s, str(exc)) from None


def parse_value(s: str):
    """Number or CF literal, dispatching on the leading bracket."""
    if s.strip().startswith("["):
        return parse_cf(s)
    return parse_number(s)


def format_value(x) -> str:
    """Canonical printer; parse_value(format_value(x)) == x."""
    if isinstance(x, (CFExpansion, EventuallyPeriodicCF, QuadraticSurd)):
        return str(x)
    return str(Fraction(x))
