"""Absolute logarithmic heights and Liouville's inequality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..polyring import BinomialVerdict
from .interval import Interval, exp as interval_exp
from .logexpr import LOG2, LogExpr
from .rational import format_rational


class UncertifiedError(ValueError):
    """An operation that needs a certified hypothesis received none."""


def height_rational(r: Fraction | int) -> LogExpr:
    """``log max(|p|, q)`` for ``r = p/q`` in lowest terms."""
    r = Fraction(r)
    return LogExpr.of(max(abs(r.numerator), r.denominator))


def height_of_binomial_root(m: int, a: Fraction | int, certificate: BinomialVerdict | None) -> LogExpr:
    """Height of any root of ``X^m - a``, which is ``h(a) / m`` exactly.

    ``certificate`` must be the irreducibility verdict for this very binomial;
    without it the root could have smaller degree and the formula would be wrong.
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("a must be non-zero")
    if certificate is None or not certificate.irreducible:
        raise UncertifiedError(f"X^{m} - {format_rational(a)} is not certified irreducible")
    if certificate.m != m or certificate.a != a:
        raise UncertifiedError("irreducibility certificate belongs to a different binomial")
    return height_rational(a) / m


def _as_logexpr(h: LogExpr | Fraction | int) -> LogExpr:
    if isinstance(h, LogExpr):
        return h
    h = Fraction(h)
    if h != 0:
        raise TypeError("non-zero heights must be given as LogExpr")
    return LogExpr.zero()


@dataclass(frozen=True)
class LiouvilleBound:
    """``exp(exponent)``; ``value_lower`` is a rational lower bound of it."""

    exponent: LogExpr
    value_lower: Fraction

    def to_json(self) -> dict:
        return {"exponent": self.exponent.to_json(), "value_lower": format_rational(self.value_lower)}


def liouville_exponent(d: int, d2: int, h: LogExpr | Fraction | int, h2: LogExpr | Fraction | int) -> LogExpr:
    if d < 1 or d2 < 1:
        raise ValueError("degrees must be positive")
    return -(d * d2) * (_as_logexpr(h) + _as_logexpr(h2) + LOG2)


def liouville_lower_bound(
    d: int, d2: int, h: LogExpr | Fraction | int, h2: LogExpr | Fraction | int, bits: int = 128
) -> LiouvilleBound:
    """``exp(-d d2 (h + h2 + log 2))``: lower bound for ``|beta - beta2|``, beta != beta2."""
    exponent = liouville_exponent(d, d2, h, h2)
    if all(c.denominator == 1 for _, c in exponent.terms) and sum(
        abs(c) * b.bit_length() for b, c in exponent.terms
    ) <= 1 << 16:
        # integer coefficients: exp(sum c log n) = prod n**c is an exact rational
        value = Fraction(1)
        for base, coeff in exponent.terms:
            value *= Fraction(base) ** int(coeff)
    else:
        value = interval_exp(exponent.enclosure(bits), bits).lo
    return LiouvilleBound(exponent, value)


def liouville_lower_bound_interval(d: int, d2: int, h: Interval, h2: Interval, bits: int = 128) -> Fraction:
    """Same bound when the heights are only known through enclosures (uses the upper ends)."""
    upper = (h.hi + h2.hi) * (d * d2)
    log2_hi = LOG2.enclosure(bits).hi * (d * d2)
    return interval_exp(Interval.point(-(upper + log2_hi)), bits).lo
