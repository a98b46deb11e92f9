"""Exact rationals, validated intervals, algebraic numbers and heights."""

from .algebraic import (
    AlgebraicNumber,
    IsolationError,
    algebraic_height,
    isolate_roots,
    log_mahler_measure,
    refine_isolator,
    roots_of,
)
from .heights import (
    LiouvilleBound,
    UncertifiedError,
    height_of_binomial_root,
    height_rational,
    liouville_lower_bound,
)
from .interval import (
    DEFAULT_PRECISION,
    ComplexBox,
    DomainError,
    Interval,
    complex_nth_root,
    exp,
    log,
    nth_root,
    sqrt,
    working_precision,
)
from .logexpr import LOG2, LogExpr
from .rational import Rational, format_rational, parse_rational

__all__ = [
    "AlgebraicNumber",
    "ComplexBox",
    "DEFAULT_PRECISION",
    "DomainError",
    "Interval",
    "IsolationError",
    "LOG2",
    "LiouvilleBound",
    "LogExpr",
    "Rational",
    "UncertifiedError",
    "algebraic_height",
    "complex_nth_root",
    "exp",
    "format_rational",
    "height_of_binomial_root",
    "height_rational",
    "isolate_roots",
    "liouville_lower_bound",
    "log",
    "log_mahler_measure",
    "nth_root",
    "parse_rational",
    "refine_isolator",
    "roots_of",
    "sqrt",
    "working_precision",
]
