"""Rational helpers: text form, integer roots and dyadic outward rounding.

Rationals are plain :class:`fractions.Fraction` values; this module only adds
the parsing/printing conventions and the few integer primitives the rest of
the package needs.
"""

from __future__ import annotations

import re
from fractions import Fraction

import gmpy2

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def _normalize_minus(text: str) -> str:
    return text.replace("−", "-").replace("–", "-")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"-p/q"`` or an integer literal into a reduced Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    match = _RATIONAL_RE.match(_normalize_minus(text))
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = match.groups()
    den_value = int_from_decimal(den) if den is not None else 1
    if den_value == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    value = Fraction(int_from_decimal(num), den_value)
    return -value if sign == "-" else value


def int_to_decimal(n: int) -> str:
    # gmpy2 is subquadratic and ignores the interpreter's int-to-str digit cap
    return gmpy2.mpz(n).digits(10)


def int_from_decimal(text: str) -> int:
    return int(gmpy2.mpz(text, 10))


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return int_to_decimal(value.numerator)
    return f"{int_to_decimal(value.numerator)}/{int_to_decimal(value.denominator)}"


def iroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root of ``n >= 0``: ``(floor(n**(1/k)), exact)``."""
    if n < 0:
        raise ValueError("iroot of a negative integer")
    root, exact = gmpy2.iroot(n, k)
    return int(root), bool(exact)


def exact_root(value: Fraction, k: int) -> Fraction | None:
    """Return the rational k-th root of ``value`` if it exists (real branch)."""
    if value < 0:
        if k % 2 == 0:
            return None
        root = exact_root(-value, k)
        return None if root is None else -root
    num, num_exact = iroot(value.numerator, k)
    if not num_exact:
        return None
    den, den_exact = iroot(value.denominator, k)
    if not den_exact:
        return None
    return Fraction(num, den)


def _bits(x: Fraction) -> int:
    return max(x.numerator.bit_length(), x.denominator.bit_length())


def round_down(x: Fraction, bits: int) -> Fraction:
    """Largest dyadic with ``bits`` significant bits that is <= x.

    Values already representable within the budget are returned unchanged.
    """
    if x == 0 or _bits(x) <= bits:
        return x
    num, den = x.numerator, x.denominator
    # exact binary exponent: 2^e <= |x| < 2^(e+1)
    e = abs(num).bit_length() - den.bit_length()
    if (abs(num) < den << e) if e >= 0 else (abs(num) << -e < den):
        e -= 1
    shift = bits - 1 - e
    if shift >= 0:
        return Fraction((num << shift) // den, 1 << shift)
    return Fraction((num // (den << -shift)) << -shift)


def round_up(x: Fraction, bits: int) -> Fraction:
    return -round_down(-x, bits)


def floor_to_grid(x: Fraction, denominator: int) -> Fraction:
    return Fraction((x.numerator * denominator) // x.denominator, denominator)


def ceil_to_grid(x: Fraction, denominator: int) -> Fraction:
    return -floor_to_grid(-x, denominator)
