"""Exact decision and audit tools for heavy orbit sets H(c) and Hhat_m."""

from .arith import QuadraticSurd, compare, floor_strict, floor_value, fract, rat, surd
from .cf import (
    CFExpansion,
    EventuallyPeriodicCF,
    cf_eval,
    cf_expand,
    convergents,
    phi,
    phi_square,
    scale_identity,
    surd_cf,
    to_parity,
)
from .criteria import (
    AuditReport,
    CorpusSpec,
    audit,
    c2_odd_criterion,
    c3_denominator_criterion,
    even_criteria_Hhat,
    in_Rm,
    max_modulus,
    membership,
)
from .oracle import (
    HeavinessReport,
    IntervalSet,
    count_hits,
    decide_H,
    decide_Hhat,
    heavy_prefix,
    hhat_count,
    interval_set_Hcn,
    intersect,
    s_counts,
)

__version__ = "0.1.0"

__all__ = [
    "QuadraticSurd",
    "compare",
    "floor_strict",
    "floor_value",
    "fract",
    "rat",
    "surd",
    "CFExpansion",
    "EventuallyPeriodicCF",
    "cf_eval",
    "cf_expand",
    "convergents",
    "phi",
    "phi_square",
    "scale_identity",
    "surd_cf",
    "to_parity",
    "AuditReport",
    "CorpusSpec",
    "audit",
    "c2_odd_criterion",
    "c3_denominator_criterion",
    "even_criteria_Hhat",
    "in_Rm",
    "max_modulus",
    "membership",
    "HeavinessReport",
    "IntervalSet",
    "count_hits",
    "decide_H",
    "decide_Hhat",
    "heavy_prefix",
    "hhat_count",
    "interval_set_Hcn",
    "intersect",
    "s_counts",
]
