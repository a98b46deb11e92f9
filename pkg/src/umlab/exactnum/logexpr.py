"""Exact linear combinations of logarithms of positive integers.

Heights produced by the constructions are of the form ``c * log(n)`` (or short
sums of such terms); keeping them symbolic lets certificates compare heights
without any rounding argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import gmpy2

from .interval import Interval, log as interval_log
from .rational import format_rational, int_from_decimal, int_to_decimal, iroot, parse_rational

# exact comparisons are attempted while the compared integers stay below this
EXACT_COMPARE_BITS = 1 << 23


def _perfect_power(n: int) -> tuple[int, int]:
    """Write ``n = r**k`` with ``k`` maximal."""
    if n < 4:
        return n, 1
    if n & (n - 1) == 0:
        return 2, n.bit_length() - 1
    if not gmpy2.is_power(n):
        return n, 1
    k = 2
    while k <= n.bit_length():
        root, exact = iroot(n, k)
        if exact:
            base, inner = _perfect_power(root)
            return base, inner * k
        k = int(gmpy2.next_prime(k))
    return n, 1


def _collect(pairs: Iterable[tuple[int, Fraction]]) -> tuple[tuple[int, Fraction], ...]:
    acc: dict[int, Fraction] = {}
    for base, coeff in pairs:
        if coeff == 0 or base == 1:
            continue
        if base < 1:
            raise ValueError(f"log of non-positive integer {base}")
        root, k = _perfect_power(base)
        acc[root] = acc.get(root, Fraction(0)) + coeff * k
    return tuple(sorted((b, c) for b, c in acc.items() if c != 0))


@dataclass(frozen=True, slots=True)
class LogExpr:
    """``sum(coeff * log(base))`` with integer bases >= 2 and rational coefficients."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, value: int | Fraction, coeff: Fraction | int = 1) -> "LogExpr":
        """``coeff * log(value)`` for a positive rational ``value``."""
        value = Fraction(value)
        if value <= 0:
            raise ValueError(f"log of non-positive value {value}")
        coeff = Fraction(coeff)
        return cls(_collect([(value.numerator, coeff), (value.denominator, -coeff)]))

    @classmethod
    def zero(cls) -> "LogExpr":
        return cls(())

    def is_zero(self) -> bool:
        return not self.terms

    def single(self) -> tuple[Fraction, int] | None:
        """``(coeff, base)`` when the expression is one term (zero counts as 0*log 1)."""
        if not self.terms:
            return Fraction(0), 1
        if len(self.terms) == 1:
            base, coeff = self.terms[0]
            return coeff, base
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "LogExpr") -> "LogExpr":
        return LogExpr(_collect(self.terms + other.terms))

    def __neg__(self) -> "LogExpr":
        return LogExpr(tuple((b, -c) for b, c in self.terms))

    def __sub__(self, other: "LogExpr") -> "LogExpr":
        return self + (-other)

    def __mul__(self, k: Fraction | int) -> "LogExpr":
        k = Fraction(k)
        if k == 0:
            return LogExpr.zero()
        return LogExpr(tuple((b, c * k) for b, c in self.terms))

    __rmul__ = __mul__

    def __truediv__(self, k: Fraction | int) -> "LogExpr":
        return self * (1 / Fraction(k))

    # -- evaluation ------------------------------------------------------
    def enclosure(self, bits: int = 128) -> Interval:
        total = Interval.point(0)
        for base, coeff in self.terms:
            total = total + interval_log(Interval.point(base), bits) * coeff
        return total

    def __float__(self) -> float:
        return float(self.enclosure(80).mid)

    def sign(self) -> int:
        if not self.terms:
            return 0
        scale = math.lcm(*(c.denominator for _, c in self.terms))
        cost = sum(abs(c * scale) * b.bit_length() for b, c in self.terms)
        if cost <= EXACT_COMPARE_BITS:
            pos, neg = 1, 1
            for base, coeff in self.terms:
                e = int(coeff * scale)
                if e > 0:
                    pos *= base**e
                else:
                    neg *= base ** (-e)
            return (pos > neg) - (pos < neg)
        bits = 128
        while bits <= 1 << 16:
            box = self.enclosure(bits)
            if box.lo > 0:
                return 1
            if box.hi < 0:
                return -1
            bits *= 4
        raise ArithmeticError(f"cannot decide the sign of {self!r} within the precision budget")

    def __lt__(self, other: "LogExpr") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "LogExpr") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "LogExpr") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "LogExpr") -> bool:
        return (self - other).sign() >= 0

    def ratio(self, other: "LogExpr") -> Fraction | None:
        """Exact ``self / other`` when both are rational multiples of one log."""
        a, b = self.single(), other.single()
        if a is None or b is None or b[0] == 0:
            return None
        if a[0] == 0:
            return Fraction(0)
        if a[1] != b[1]:
            return None
        return a[0] / b[0]

    # -- text forms ------------------------------------------------------
    def __repr__(self) -> str:
        if not self.terms:
            return "LogExpr(0)"
        body = " + ".join(f"{format_rational(c)}*log({b})" for b, c in self.terms)
        return f"LogExpr({body})"

    def nearest_float(self) -> float:
        """The correctly rounded double of the exact value."""
        bits = 96
        while True:
            box = self.enclosure(bits)
            lo, hi = float(box.lo), float(box.hi)
            if lo == hi:
                return lo
            if bits > 1 << 14:
                raise ArithmeticError(f"cannot round {self!r} to a double")
            bits *= 2

    def render_float(self) -> str:
        return repr(self.nearest_float())

    def to_json(self) -> dict:
        """``{"coeff", "log_of", "float"}`` for one term, ``{"terms", "float"}`` otherwise."""
        single = self.single()
        if single is not None:
            coeff, base = single
            return {"coeff": format_rational(coeff), "log_of": int_to_decimal(base), "float": self.render_float()}
        return {
            "terms": [{"coeff": format_rational(c), "log_of": int_to_decimal(b)} for b, c in self.terms],
            "float": self.render_float(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "LogExpr":
        if "terms" in data:
            pairs = [(int_from_decimal(t["log_of"]), parse_rational(t["coeff"])) for t in data["terms"]]
        else:
            pairs = [(int_from_decimal(data["log_of"]), parse_rational(data["coeff"]))]
        return cls(_collect(pairs))


LOG2 = LogExpr.of(2)
