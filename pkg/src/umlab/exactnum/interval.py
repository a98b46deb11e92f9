"""Validated interval and complex-box arithmetic with rational endpoints.

Every operation returns an enclosure of the exact image. Endpoints are exact
Fractions; once an endpoint needs more than the working bit budget it is
rounded outward to a dyadic rational with that many significant bits.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from . import directed
from .rational import format_rational, iroot, round_down, round_up

DEFAULT_PRECISION = 4096

_precision: contextvars.ContextVar[int] = contextvars.ContextVar(
    "umlab_precision", default=DEFAULT_PRECISION
)


class DomainError(ValueError):
    """An interval operation was applied outside its domain."""

    def __init__(self, message: str, operand: object):
        super().__init__(f"{message}: {operand}")
        self.operand = operand


def get_precision() -> int:
    return _precision.get()


@contextlib.contextmanager
def working_precision(bits: int) -> Iterator[int]:
    """Temporarily change the endpoint bit budget for the current context."""
    if bits < 16:
        raise ValueError("precision must be at least 16 bits")
    token = _precision.set(bits)
    try:
        yield bits
    finally:
        _precision.reset(token)


Number = Union[int, Fraction]


def _lift(x: "Interval | Number") -> "Interval":
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


@dataclass(frozen=True, slots=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.lo, Fraction):
            object.__setattr__(self, "lo", Fraction(self.lo))
        if not isinstance(self.hi, Fraction):
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def hull(cls, *values: Number) -> "Interval":
        return cls(min(values), max(values))

    def rounded(self, bits: int | None = None) -> "Interval":
        bits = get_precision() if bits is None else bits
        lo, hi = round_down(self.lo, bits), round_up(self.hi, bits)
        if lo is self.lo and hi is self.hi:
            return self
        return Interval(lo, hi)

    # -- queries ---------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x: object) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi  # type: ignore[operator]

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Fraction:
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    # -- arithmetic ------------------------------------------------------
    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: "Interval | Number") -> "Interval":
        other = _lift(other)
        return Interval(self.lo + other.lo, self.hi + other.hi).rounded()

    __radd__ = __add__

    def __sub__(self, other: "Interval | Number") -> "Interval":
        other = _lift(other)
        return Interval(self.lo - other.hi, self.hi - other.lo).rounded()

    def __rsub__(self, other: Number) -> "Interval":
        return _lift(other) - self

    def __mul__(self, other: "Interval | Number") -> "Interval":
        other = _lift(other)
        if self.is_point() and other.is_point():
            p = self.lo * other.lo
            return Interval(p, p).rounded()
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products)).rounded()

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.contains_zero():
            raise DomainError("division by an interval containing 0", self)
        return Interval(1 / self.hi, 1 / self.lo).rounded()

    def __truediv__(self, other: "Interval | Number") -> "Interval":
        other = _lift(other)
        if other.contains_zero():
            raise DomainError("division by an interval containing 0", other)
        if other.is_point():
            return Interval(self.lo / other.lo, self.hi / other.lo).rounded() if other.lo > 0 else Interval(
                self.hi / other.lo, self.lo / other.lo
            ).rounded()
        return self * other.reciprocal()

    def __rtruediv__(self, other: Number) -> "Interval":
        return _lift(other) / self

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, int) or k < 0:
            raise DomainError("only non-negative integer powers are supported", k)
        if k == 0:
            return Interval.point(1)
        a, b = self.lo**k, self.hi**k
        if k % 2 == 1:
            return Interval(a, b).rounded()
        if self.contains_zero():
            return Interval(Fraction(0), max(a, b)).rounded()
        return Interval(min(a, b), max(a, b)).rounded()

    def __abs__(self) -> "Interval":
        return Interval(self.mig(), self.mag())

    def sqr(self) -> "Interval":
        return self**2


def nth_root(x: Interval | Number, n: int, bits: int | None = None) -> Interval:
    """Enclosure of the real n-th root of ``x`` with about ``bits`` bits.

    Even roots need ``lo >= 0``; odd roots accept negative intervals. An
    interval straddling zero is rejected rather than split.
    """
    x = _lift(x)
    if n < 1:
        raise DomainError("root index must be positive", n)
    if n == 1:
        return x
    bits = get_precision() if bits is None else bits
    if x.contains_zero() and not x.is_point():
        if not (x.lo == 0 and n % 2 == 0):
            raise DomainError("nth_root of an interval straddling 0", x)
    if x.lo < 0 and n % 2 == 0:
        raise DomainError("even root of a negative interval", x)
    if x.hi < 0:
        return -nth_root(-x, n, bits)
    return Interval(_root_down(x.lo, n, bits), _root_up(x.hi, n, bits))


def _scale_exponent(x: Fraction, n: int, bits: int) -> int:
    # choose k with x * 2**(n*k) carrying about n*bits bits of integer part
    approx_log2 = x.numerator.bit_length() - x.denominator.bit_length()
    return max(0, bits - approx_log2 // n + 2)


def _root_down(x: Fraction, n: int, bits: int) -> Fraction:
    if x <= 0:
        return Fraction(0)
    k = _scale_exponent(x, n, bits)
    scaled = (x.numerator << (n * k)) // x.denominator
    root, _ = iroot(scaled, n)
    return Fraction(root, 1 << k)


def _root_up(x: Fraction, n: int, bits: int) -> Fraction:
    if x <= 0:
        return Fraction(0)
    k = _scale_exponent(x, n, bits)
    num = x.numerator << (n * k)
    scaled = -((-num) // x.denominator)
    root, exact = iroot(scaled, n)
    return Fraction(root if exact else root + 1, 1 << k)


def sqrt(x: Interval | Number, bits: int | None = None) -> Interval:
    return nth_root(x, 2, bits)


def log(x: Interval | Number, bits: int | None = None) -> Interval:
    x = _lift(x)
    if x.lo <= 0:
        raise DomainError("log of an interval not contained in (0, inf)", x)
    bits = get_precision() if bits is None else bits
    return Interval(*directed.log_bounds(x.lo, x.hi, bits))


def exp(x: Interval | Number, bits: int | None = None) -> Interval:
    x = _lift(x)
    bits = get_precision() if bits is None else bits
    return Interval(*directed.exp_bounds(x.lo, x.hi, bits))


@dataclass(frozen=True, slots=True)
class ComplexBox:
    re: Interval
    im: Interval

    @classmethod
    def point(cls, re: Number, im: Number = 0) -> "ComplexBox":
        return cls(Interval.point(re), Interval.point(im))

    @classmethod
    def real(cls, x: Interval) -> "ComplexBox":
        return cls(x, Interval.point(0))

    @classmethod
    def from_bounds(cls, re_lo: Number, re_hi: Number, im_lo: Number, im_hi: Number) -> "ComplexBox":
        return cls(Interval(Fraction(re_lo), Fraction(re_hi)), Interval(Fraction(im_lo), Fraction(im_hi)))

    def is_real(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return self.re.mid, self.im.mid

    def __contains__(self, other: object) -> bool:
        if isinstance(other, ComplexBox):
            return other.re in self.re and other.im in self.im
        if isinstance(other, tuple):
            return other[0] in self.re and other[1] in self.im
        return other in self.re and 0 in self.im

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def intersects(self, other: "ComplexBox") -> bool:
        return self.re.intersect(other.re) is not None and self.im.intersect(other.im) is not None

    def rounded(self, bits: int | None = None) -> "ComplexBox":
        return ComplexBox(self.re.rounded(bits), self.im.rounded(bits))

    def to_json(self) -> dict[str, list[str]]:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    def __repr__(self) -> str:
        return f"ComplexBox({self.re!r}, {self.im!r})"

    def _lift(self, other: "ComplexBox | Interval | Number") -> "ComplexBox":
        if isinstance(other, ComplexBox):
            return other
        if isinstance(other, Interval):
            return ComplexBox.real(other)
        return ComplexBox.point(other)

    def __neg__(self) -> "ComplexBox":
        return ComplexBox(-self.re, -self.im)

    def __add__(self, other: "ComplexBox | Interval | Number") -> "ComplexBox":
        other = self._lift(other)
        return ComplexBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "ComplexBox | Interval | Number") -> "ComplexBox":
        other = self._lift(other)
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: "Interval | Number") -> "ComplexBox":
        return self._lift(other) - self

    def __mul__(self, other: "ComplexBox | Interval | Number") -> "ComplexBox":
        other = self._lift(other)
        if other.is_real():
            return ComplexBox(self.re * other.re, self.im * other.re)
        return ComplexBox(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def abs_sq(self) -> Interval:
        return self.re.sqr() + self.im.sqr()

    def __abs__(self) -> Interval:
        sq = self.abs_sq()
        if sq.lo == 0:
            return Interval(Fraction(0), sqrt(Interval.point(sq.hi)).hi)
        return sqrt(sq)

    def reciprocal(self) -> "ComplexBox":
        sq = self.abs_sq()
        if sq.contains_zero():
            raise DomainError("division by a box containing 0", self)
        return ComplexBox(self.re / sq, -self.im / sq)

    def __truediv__(self, other: "ComplexBox | Interval | Number") -> "ComplexBox":
        other = self._lift(other)
        if other.is_real():
            return ComplexBox(self.re / other.re, self.im / other.re)
        return self * other.reciprocal()

    def __pow__(self, k: int) -> "ComplexBox":
        if not isinstance(k, int) or k < 0:
            raise DomainError("only non-negative integer powers are supported", k)
        result = ComplexBox.point(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def complex_nth_root(w: ComplexBox, n: int, branch: ComplexBox, bits: int | None = None) -> ComplexBox:
    """Enclose the unique n-th root of ``w`` lying in ``branch``.

    Uses a Krawczyk test for ``z**n - w`` on successively tighter boxes; the
    first box is the declared branch itself, so the returned root is the one
    the caller pinned. Raises :class:`DomainError` when the branch box does not
    provably contain exactly one root.
    """
    import mpmath

    bits = get_precision() if bits is None else bits
    if w.contains_zero():
        raise DomainError("complex nth_root of a box containing 0", w)
    if w.is_real() and w.re.lo > 0 and branch.im.contains_zero() and branch.re.lo > 0:
        return ComplexBox.real(nth_root(w.re, n, bits))

    def krawczyk(box: ComplexBox, z0: ComplexBox) -> ComplexBox:
        fz0 = z0**n - w
        dbox = n * box ** (n - 1)
        dz0 = n * z0 ** (n - 1)
        # preconditioner: rational approximation of 1 / f'(z0)
        c = complex(float(dz0.re.mid), float(dz0.im.mid))
        y = ComplexBox.point(*_complex_to_fractions(1 / c, 60))
        return z0 - y * fz0 + (ComplexBox.point(1) - y * dbox) * (box - z0)

    def strictly_inside(inner: ComplexBox, outer: ComplexBox) -> bool:
        return (
            outer.re.lo < inner.re.lo
            and inner.re.hi < outer.re.hi
            and outer.im.lo < inner.im.lo
            and inner.im.hi < outer.im.hi
        )

    mp_ctx = mpmath.mp.clone()
    mp_ctx.prec = bits + 32
    target = mp_ctx.mpc(_frac_to_mp(mp_ctx, w.re.mid), _frac_to_mp(mp_ctx, w.im.mid))
    c_re, c_im = branch.center
    guess = mp_ctx.mpc(_frac_to_mp(mp_ctx, c_re), _frac_to_mp(mp_ctx, c_im))
    for _ in range(200):
        step = (guess**n - target) / (n * guess ** (n - 1))
        guess -= step
        if abs(step) < mp_ctx.mpf(2) ** (-bits - 8):
            break
    z0 = ComplexBox.point(*_complex_to_fractions(guess, bits + 16, mp_ctx))
    if z0 not in branch:
        raise DomainError("declared branch box contains no root approximation", branch)
    radius = max(Fraction(1, 1 << bits), w.width * 2 / max(abs(n * z0 ** (n - 1)).lo, Fraction(1, 1 << 64)))
    for _ in range(64):
        box = ComplexBox(
            Interval(z0.re.lo - radius, z0.re.hi + radius),
            Interval(z0.im.lo - radius, z0.im.hi + radius),
        )
        if box in branch:
            image = krawczyk(box, z0)
            if strictly_inside(image, box):
                if not _unique_in_branch(branch, image, n):
                    raise DomainError("branch box may contain several roots", branch)
                return image
        radius *= 2
    raise DomainError("could not certify a root in the declared branch", branch)


def _unique_in_branch(branch: ComplexBox, root_box: ComplexBox, n: int) -> bool:
    # the other n-th roots are r * zeta**k, at distance >= 2|r| sin(pi/n) >= 4|r|/n
    min_sep = 4 * abs(root_box).lo / n
    diam_sq = branch.re.width**2 + branch.im.width**2
    return diam_sq < min_sep**2


def _frac_to_mp(ctx, x: Fraction):
    return ctx.mpf(x.numerator) / x.denominator


def _complex_to_fractions(z, bits: int, ctx=None) -> tuple[Fraction, Fraction]:
    import mpmath

    ctx = ctx or mpmath.mp

    def conv(v) -> Fraction:
        v = ctx.mpf(v)
        if not v:
            return Fraction(0)
        sign, man, exp, _ = v._mpf_
        value = Fraction(-int(man) if sign else int(man)) * (Fraction(2) ** exp)
        return round_down(value, bits)

    return conv(z.real), conv(z.imag)
