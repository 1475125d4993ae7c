"""Command line entry point.

Exit codes: 0 when a verdict was computed (a "false" membership or an audit
with counterexamples is still a result), 1 on usage errors, 2 when two
independent computations inside the tool disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import criteria, dimension, oracle, orbits
from .arith import QuadraticSurd
from .cf import CFExpansion, EventuallyPeriodicCF, cf_value, convergents, expand, to_parity
from .parse import ParseError, format_value, parse_number, parse_value


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _int_list(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _value_and_cf(text: str):
    v = parse_value(text)
    if isinstance(v, (CFExpansion, EventuallyPeriodicCF)):
        return cf_value(v), v
    return v, expand(v)


# ---------------------------------------------------------------- verbs


def cmd_cf(args) -> dict:
    value, e = _value_and_cf(args.value)
    out = {"value": format_value(value), "expansion": format_value(e)}
    if isinstance(e, CFExpansion):
        out["odd"] = format_value(to_parity(e, "odd"))
        out["even"] = format_value(to_parity(e, "even"))
        if args.parity:
            e = to_parity(e, args.parity)
    if args.parity:
        out["parity_form"] = format_value(e)
    if args.convergents:
        table = convergents(e, args.convergents)
        out["convergents"] = [{"k": r.k, "a": r.a, "p": r.p, "q": r.q} for r in table]
    return out


def cmd_member(args) -> dict:
    value, _ = _value_and_cf(args.value)
    ev = criteria.membership(value, args.m, prefix_n=args.prefix)
    out = {
        "value": format_value(value),
        "m": args.m,
        "member": ev.member,
        "odd_form": format_value(ev.odd_form),
        "max_modulus": criteria.max_modulus(ev.odd_form),
        "via": {"C2": ev.via_C2, "C3": ev.via_C3},
    }
    if ev.via_C1 is not None:
        out["via"]["C1"] = ev.via_C1
        if ev.via_C1 != ev.via_C2:
            out["finding"] = "counting oracle and odd-entry criterion disagree"
    else:
        out["C1"] = f"prefix-checked to {args.prefix}"
        out["prefix"] = ev.prefix.to_dict()
    if args.s_counts:
        if not value > 0:
            raise UsageError("--s-counts needs a positive value")
        c = Fraction(1, args.m)
        rows = []
        for n in range(1, args.s_counts + 1):
            size, size_c = oracle.s_counts(n, value, c)
            rows.append({"n": n, "S": size, "S_c": size_c, "heavy": size_c >= c * size})
        out["s_counts"] = rows
    return out


def cmd_hhat(args) -> dict:
    value, e = _value_and_cf(args.value)
    out = {"value": format_value(value), "m": args.m}
    ef = e if isinstance(e, EventuallyPeriodicCF) else to_parity(e, "even")
    entry_ok, numer_ok = criteria.even_criteria_Hhat(ef, args.m)
    out["even_form"] = format_value(ef)
    out["via"] = {"C2": entry_ok, "C3": numer_ok}
    if isinstance(value, QuadraticSurd):
        rep = oracle.hhat_prefix(value, args.m, args.prefix)
        out["member"] = entry_ok
        out["C1"] = f"prefix-checked to {args.prefix}"
        out["prefix"] = rep.to_dict()
    else:
        member, rep = oracle.decide_Hhat(value, args.m)
        out["member"] = member
        out["via"]["C1"] = member
        out["report"] = rep.to_dict()
        if member != entry_ok:
            out["finding"] = "counting oracle and even-entry criterion disagree"
    return out


def cmd_intervals(args) -> dict:
    c = parse_number(args.c)
    if isinstance(c, QuadraticSurd) or not 0 < c < 1:
        raise UsageError("--c must be a rational in (0, 1)")
    running = oracle.IntervalSet.full()
    measures = []
    last = None
    for n in range(1, args.N + 1):
        last = oracle.interval_set_Hcn(c, n)
        running = running & last
        measures.append(running.measure)
    out = {
        "c": format_value(c),
        "N": args.N,
        "H_c_N": last.to_list(),
        "intersection": running.to_list(),
    }
    if args.measure:
        out["measure_H_c_N"] = _frac(last.measure)
        out["intersection_measures"] = [_frac(m) for m in measures]
    return out


def cmd_audit(args) -> dict:
    spec = criteria.CorpusSpec(
        qmax=args.rationals_qmax,
        pfactor=args.pfactor,
        m_values=args.m,
        random_cfs=args.random_cfs,
        cf_max_length=args.cf_max_length,
        cf_entry_bound=args.cf_entry_bound,
        surds=args.surds,
        surd_prefix=args.surd_prefix,
        rm_samples=args.rm_samples,
    )
    try:
        report = criteria.audit(args.claim, spec, args.seed)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    return report.to_dict()


def cmd_dimension(args) -> dict:
    tol = parse_number(args.tol)
    if isinstance(tol, QuadraticSurd) or tol <= 0:
        raise UsageError("--tol must be a positive rational")
    rows = [dimension.dimension_bounds(m, tol).to_dict() for m in args.m]
    return {"rows": rows}


def _arc(text: str) -> orbits.ClosedArc:
    try:
        u, v = (parse_number(t) for t in text.split(","))
        return orbits.ClosedArc(u, v)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--arc expects u,v with 0 <= u <= v <= 1 ({exc})") from None


def cmd_orbit(args) -> dict:
    arc = _arc(args.arc)
    if args.poly:
        coeffs = [parse_number(t) for t in args.poly.split(",")]
        rep = orbits.poly_prefix_heavy(coeffs, arc, args.N)
        kind = {"poly": [format_value(c) for c in coeffs]}
    else:
        if args.alpha is None:
            raise UsageError("orbit needs --alpha or --poly")
        alpha = parse_number(args.alpha)
        x = parse_number(args.x)
        rep = orbits.rotation_prefix_heavy(x, alpha, arc, args.N)
        kind = {"alpha": format_value(alpha), "x": format_value(x)}
    return {**kind, "arc": [format_value(arc.u), format_value(arc.v)], "report": rep.to_dict()}


def cmd_search(args) -> dict:
    arc = _arc(args.arc)
    alpha = parse_number(args.alpha)
    hit = orbits.heavy_point_search(alpha, arc, args.N, args.resolution)
    return {
        "alpha": format_value(alpha),
        "arc": [format_value(arc.u), format_value(arc.v)],
        "N": args.N,
        "resolution": args.resolution,
        "point": None if hit is None else format_value(hit),
    }


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="json")

    parser = _Parser(prog="heavysets", description="Exact tools for heavy orbit sets H(c) and Hhat_m.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("cf", parents=[fmt], help="continued fraction expansion and convergents")
    p.add_argument("value")
    p.add_argument("--parity", choices=("odd", "even"))
    p.add_argument("--convergents", type=int, metavar="K")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("member", parents=[fmt], help="membership in H_m")
    p.add_argument("value")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prefix", type=int, default=10_000, metavar="N", help="prefix length for irrationals")
    p.add_argument("--s-counts", type=int, default=0, metavar="N", help="also tabulate |S(n,a)|, |S(n,a,1/m)| for n <= N")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("hhat", parents=[fmt], help="membership in Hhat_m")
    p.add_argument("value")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prefix", type=int, default=10_000, metavar="N")
    p.set_defaults(func=cmd_hhat)

    p = sub.add_parser("intervals", parents=[fmt], help="interval structure of H(c, n)")
    p.add_argument("--c", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--measure", action="store_true")
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("audit", parents=[fmt], help="cross-check a claim on a seeded corpus")
    p.add_argument("claim", help=", ".join(criteria.CLAIMS))
    p.add_argument("--rationals-qmax", type=int, default=20)
    p.add_argument("--pfactor", type=int, default=4)
    p.add_argument("--m", type=_int_list, default=(1, 2, 3, 4, 5, 6), help="e.g. 2 or 1-6 or 2,3,5")
    p.add_argument("--random-cfs", type=int, default=0)
    p.add_argument("--cf-max-length", type=int, default=9)
    p.add_argument("--cf-entry-bound", type=int, default=50)
    p.add_argument("--surds", type=int, default=0)
    p.add_argument("--surd-prefix", type=int, default=200)
    p.add_argument("--rm-samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("dimension", parents=[fmt], help="Moran bounds for the two-map IFS")
    p.add_argument("--m", type=_int_list, required=True)
    p.add_argument("--tol", default="1/1000")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("orbit", parents=[fmt], help="prefix heaviness of a rotation or polynomial orbit")
    p.add_argument("--alpha")
    p.add_argument("--x", default="0")
    p.add_argument("--poly", help="coefficients, leading first: c_k,...,c_0")
    p.add_argument("--arc", required=True, metavar="u,v")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("search", parents=[fmt], help="grid search for a heavy starting point")
    p.add_argument("--alpha", required=True)
    p.add_argument("--arc", required=True, metavar="u,v")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--resolution", type=int, required=True)
    p.set_defaults(func=cmd_search)
    return parser


def _text(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{prefix}{k}:")
                lines.extend(_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {v}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.append(f"{prefix}-")
                lines.extend(_text(item, prefix + "  "))
            else:
                lines.append(f"{prefix}- {item}")
    else:
        lines.append(f"{prefix}{obj}")
    return lines


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        result = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (oracle.ConsistencyError, AssertionError) as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return 2
    if args.format == "text":
        print("\n".join(_text(result)), file=stdout)
    else:
        print(json.dumps(result, sort_keys=True, indent=2), file=stdout)
    return 0


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
