"""Directed-rounding transcendental functions on rationals.

Thin layer over ``mpmath.libmp``, whose ``mpf_*`` routines honour explicit
floor/ceiling rounding modes. Results come back as exact dyadic Fractions.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import libmp

from .rational import round_down, round_up


def _to_mpf(x: Fraction, prec: int, rnd: str):
    return libmp.from_rational(x.numerator, x.denominator, prec, rnd)


def _to_fraction(v) -> Fraction:
    if v in (libmp.finf, libmp.fninf, libmp.fnan):
        raise OverflowError("non-finite value in directed rounding")
    sign, man, exp, _ = v
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def log_bounds(lo: Fraction, hi: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure ``[a, b]`` of ``log([lo, hi])`` for ``lo > 0``."""
    if lo <= 0:
        raise ValueError(f"log of non-positive interval [{lo}, {hi}]")
    a = libmp.mpf_log(_to_mpf(round_down(lo, prec), prec + 8, "f"), prec, "f")
    b = libmp.mpf_log(_to_mpf(round_up(hi, prec), prec + 8, "c"), prec, "c")
    return _to_fraction(a), _to_fraction(b)


def exp_bounds(lo: Fraction, hi: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    a = libmp.mpf_exp(_to_mpf(lo, prec + 8, "f"), prec, "f")
    b = libmp.mpf_exp(_to_mpf(hi, prec + 8, "c"), prec, "c")
    return _to_fraction(a), _to_fraction(b)


def log_int_bounds(n: int, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of ``log(n)`` for a positive integer ``n`` of any size."""
    return log_bounds(Fraction(n), Fraction(n), prec)
