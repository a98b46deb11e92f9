"""Algebraic numbers as (primitive minimal polynomial, isolating box) pairs.

Root isolation: approximate all roots with ``mpmath.polyroots``, then certify
them with Smith's inclusion theorem. The disks ``|z - z_j| <= d |W_j|`` with
``W_j = f(z_j) / (lc * prod_{k != j}(z_j - z_k))`` cover every root, and a
connected component made of ``k`` disks holds exactly ``k`` roots. All of the
certification is done in exact rational complex arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from ..polyring import IntPoly, is_squarefree
from .interval import ComplexBox, Interval, log as interval_log, nth_root
from .rational import round_down, round_up


class IsolationError(ArithmeticError):
    """Root isolation or refinement could not be certified."""


CRational = tuple[Fraction, Fraction]


def _cmul(a: CRational, b: CRational) -> CRational:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _csub(a: CRational, b: CRational) -> CRational:
    return a[0] - b[0], a[1] - b[1]


def _cabs2(a: CRational) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def _ceval(f: IntPoly, z: CRational) -> CRational:
    acc: CRational = (Fraction(f.lc), Fraction(0))
    for c in reversed(f.coeffs[:-1]):
        acc = _cmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def _mp_to_fraction(v, bits: int) -> Fraction:
    if not v:
        return Fraction(0)
    sign, man, exp, _ = v._mpf_  # re-wrapping in mpmath.mpf would round to the global 53 bits
    value = Fraction(-int(man) if sign else int(man)) * Fraction(2) ** exp
    return round_down(value, bits) if value > 0 else round_up(value, bits)


def _default_digits(f: IntPoly) -> int:
    size = max(abs(c).bit_length() * 30103 // 100000 + 1 for c in f.coeffs)
    return max(50, 2 * size + 10 * f.degree + 20)


def _approximate_roots(f: IntPoly, digits: int) -> list[CRational]:
    ctx = mpmath.mp.clone()
    ctx.dps = digits
    roots = ctx.polyroots(list(reversed(f.coeffs)), maxsteps=400 + 20 * f.degree, extraprec=4 * digits)
    bits = int(digits * 3.33) + 16
    tol = ctx.mpf(10) ** (-(digits // 2))
    approx: list[CRational] = []
    pending: list = []
    for r in roots:
        r = ctx.mpc(r)
        if abs(r.imag) <= tol * max(1, abs(r)):
            approx.append((_mp_to_fraction(r.real, bits), Fraction(0)))
        elif r.imag > 0:
            pending.append(r)
    for r in pending:
        re, im = _mp_to_fraction(r.real, bits), _mp_to_fraction(r.imag, bits)
        # conjugate pairs are made exactly symmetric so the disks are too
        approx.append((re, im))
        approx.append((re, -im))
    if len(approx) != f.degree:
        raise IsolationError("root approximations are not closed under conjugation")
    return approx


def _smith_radii_sq(f: IntPoly, zs: Sequence[CRational]) -> list[Fraction]:
    d = f.degree
    lc2 = Fraction(f.lc) ** 2
    radii = []
    for j, zj in enumerate(zs):
        num = _cabs2(_ceval(f, zj))
        den = lc2
        for k, zk in enumerate(zs):
            if k != j:
                den *= _cabs2(_csub(zj, zk))
        if den == 0:
            raise IsolationError("coincident root approximations")
        radii.append(d * d * num / den)
    return radii


def _sqrt_up(x: Fraction) -> Fraction:
    if x == 0:
        return Fraction(0)
    return nth_root(Interval.point(x), 2, 64).hi


def isolate_roots(f: IntPoly, digits: int | None = None, max_digits: int = 4000) -> list[ComplexBox]:
    """Pairwise disjoint boxes, each holding exactly one root of squarefree ``f``.

    Boxes of real roots are degenerate in the imaginary direction (``im = [0, 0]``).
    Order: real roots ascending, then complex roots by (re, im).
    """
    if f.degree < 1:
        raise ValueError("cannot isolate roots of a constant")
    if not is_squarefree(f):
        raise ValueError("root isolation needs a squarefree polynomial")
    if f.degree == 1:
        root = Fraction(-f.coeffs[0], f.coeffs[1])
        return [ComplexBox.point(root)]
    digits = digits or _default_digits(f)
    while digits <= max_digits:
        try:
            zs = _approximate_roots(f, digits)
            boxes = _certify_disks(f, zs)
        except IsolationError:
            digits *= 2
            continue
        if boxes is not None:
            return _order(boxes)
        digits *= 2
    raise IsolationError(f"could not isolate the roots of {f} within {max_digits} digits")


def _certify_disks(f: IntPoly, zs: list[CRational]) -> list[ComplexBox] | None:
    radii = [_sqrt_up(r2) for r2 in _smith_radii_sq(f, zs)]
    n = len(zs)
    for j in range(n):
        for k in range(j + 1, n):
            # sqrt(2)-inflated disks disjoint => circumscribed squares disjoint
            if _cabs2(_csub(zs[j], zs[k])) <= 2 * (radii[j] + radii[k]) ** 2:
                return None
    boxes = []
    for (x, y), r in zip(zs, radii):
        if y == 0:
            boxes.append(ComplexBox(Interval(x - r, x + r), Interval.point(0)))
        else:
            boxes.append(ComplexBox(Interval(x - r, x + r), Interval(y - r, y + r)))
    return boxes


def _order(boxes: list[ComplexBox]) -> list[ComplexBox]:
    real = sorted((b for b in boxes if b.is_real()), key=lambda b: b.re.lo)
    cplx = sorted((b for b in boxes if not b.is_real()), key=lambda b: (b.re.lo, b.im.lo))
    return real + cplx


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sturm_count(f: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``f`` in ``(lo, hi]``."""
    seq: list[list[Fraction]] = [[Fraction(c) for c in f.coeffs], [Fraction(c) for c in f.derivative().coeffs]]
    while len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        r = list(a)
        while len(r) >= len(b):
            coef = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, bc in enumerate(b):
                r[shift + i] -= coef * bc
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        if not r:
            break
        seq.append([-c for c in r])

    def changes(x: Fraction) -> int:
        signs = []
        for p in seq:
            v = Fraction(0)
            for c in reversed(p):
                v = v * x + c
            s = _sign(v)
            if s:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return changes(lo) - changes(hi)


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of a primitive squarefree integer polynomial, pinned by a box.

    ``irreducible`` records whether irreducibility of ``minpoly`` was
    certified; it is never inferred.
    """

    minpoly: IntPoly
    isolator: ComplexBox
    irreducible: bool = False

    def __post_init__(self) -> None:
        if self.minpoly.degree < 1:
            raise ValueError("minimal polynomial must be non-constant")
        if not self.minpoly.is_primitive():
            raise ValueError(f"minimal polynomial must be primitive with positive leading coefficient: {self.minpoly}")

    @classmethod
    def from_rational(cls, a: Fraction | int) -> "AlgebraicNumber":
        a = Fraction(a)
        return cls(IntPoly((-a.numerator, a.denominator)), ComplexBox.point(a), True)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_real(self) -> bool:
        return self.isolator.is_real()

    def is_nonreal(self) -> bool:
        """Certified non-real: the imaginary part of the isolator excludes 0."""
        return not self.isolator.im.contains_zero()

    def conjugate_boxes(self) -> list[ComplexBox]:
        return isolate_roots(self.minpoly)

    def log_mahler(self) -> Interval:
        return log_mahler_measure(self.minpoly, self.conjugate_boxes())

    def height(self) -> Interval:
        """Enclosure of the absolute logarithmic height (needs certified irreducibility)."""
        if not self.irreducible:
            raise ValueError("height of an algebraic number needs a certified minimal polynomial")
        return self.log_mahler() / self.degree

    def refine(self, target_width: Fraction) -> "AlgebraicNumber":
        return refine_isolator(self, target_width)

    def to_json(self) -> dict:
        return {"minpoly": self.minpoly.to_json(), "isolator": self.isolator.to_json(), "irreducible": self.irreducible}


def roots_of(f: IntPoly, irreducible: bool = False) -> list[AlgebraicNumber]:
    f = f.primitive()
    return [AlgebraicNumber(f, box, irreducible) for box in isolate_roots(f)]


def refine_isolator(x: AlgebraicNumber, target_width: Fraction) -> AlgebraicNumber:
    """Shrink the isolator to width <= ``target_width`` around the same root."""
    target_width = Fraction(target_width)
    if target_width <= 0:
        raise ValueError("target width must be positive")
    f, box = x.minpoly, x.isolator
    if f.degree == 1:
        root = Fraction(-f.coeffs[0], f.coeffs[1])
        if root not in box:
            raise IsolationError("isolator does not contain the rational root")
        return AlgebraicNumber(f, ComplexBox.point(root), x.irreducible)
    if box.is_real():
        return AlgebraicNumber(f, ComplexBox.real(_refine_real(f, box.re, target_width)), x.irreducible)
    return AlgebraicNumber(f, _refine_complex(f, box, target_width), x.irreducible)


def _refine_real(f: IntPoly, interval: Interval, target: Fraction) -> Interval:
    lo, hi = interval.lo, interval.hi
    if lo == hi:
        if f.eval_fraction(lo) != 0:
            raise IsolationError("degenerate isolator is not a root")
        return interval
    count = sturm_count(f, lo, hi) + (1 if f.eval_fraction(lo) == 0 else 0)
    if count != 1:
        raise IsolationError(f"isolator holds {count} real roots, expected exactly 1")
    for end in (lo, hi):
        if f.eval_fraction(end) == 0:
            return Interval.point(end)
    s_lo = _sign(f.eval_fraction(lo))
    df = f.derivative()
    while hi - lo > target:
        mid = (lo + hi) / 2
        fm = f.eval_fraction(mid)
        if fm == 0:
            return Interval.point(mid)
        dm = df.eval_fraction(mid)
        moved = False
        if dm != 0:
            # Newton guess, then try to bracket the root tightly around it
            guess = mid - fm / dm
            bits = 2 * max(8, -(hi - lo).numerator.bit_length() + (hi - lo).denominator.bit_length()) + 16
            guess = round_down(guess, bits)
            delta = max(target / 4, (hi - lo) / (1 << 40))
            a, b = max(lo, guess - delta), min(hi, guess + delta)
            if lo < a < b < hi:
                sa, sb = _sign(f.eval_fraction(a)), _sign(f.eval_fraction(b))
                if sa == 0:
                    return Interval.point(a)
                if sb == 0:
                    return Interval.point(b)
                if sa != sb:
                    lo, hi = a, b
                    s_lo = sa
                    moved = True
        if not moved:
            if _sign(fm) == s_lo:
                lo = mid
            else:
                hi = mid
    return Interval(lo, hi)


def _refine_complex(f: IntPoly, box: ComplexBox, target: Fraction) -> ComplexBox:
    digits = _default_digits(f)
    while digits <= 20000:
        try:
            zs = _approximate_roots(f, digits)
            boxes = _certify_disks(f, zs)
        except IsolationError:
            boxes = None
        if boxes is not None:
            inside = [b for b in boxes if b in box]
            touching = [b for b in boxes if b.intersects(box)]
            if len(inside) > 1:
                raise IsolationError(f"isolator holds {len(inside)} roots, expected exactly 1")
            if not touching:
                raise IsolationError("isolator holds no root")
            if len(inside) == 1 and len(touching) == 1 and inside[0].width <= target:
                return inside[0]
        digits *= 2
    raise IsolationError("could not refine the complex isolator to the requested width")


def log_max1(box: ComplexBox) -> Interval:
    """Enclosure of ``log max(1, |z|)`` over a box."""
    mod = abs(box)
    lo = max(Fraction(1), mod.lo)
    hi = max(Fraction(1), mod.hi)
    if hi == 1:
        return Interval.point(0)
    return interval_log(Interval(lo, hi), 128)


def log_mahler_measure(f: IntPoly, root_boxes: Sequence[ComplexBox]) -> Interval:
    """``log |lc| + sum log max(1, |root|)`` from certified root boxes."""
    if len(root_boxes) != f.degree:
        raise ValueError("need one box per root")
    total = interval_log(Interval.point(abs(f.lc)), 128) if abs(f.lc) != 1 else Interval.point(0)
    for box in root_boxes:
        total = total + log_max1(box)
    return total


def algebraic_height(f: IntPoly, root_boxes: Sequence[ComplexBox] | None = None) -> Interval:
    """Height of any root of the irreducible primitive polynomial ``f``."""
    boxes = list(root_boxes) if root_boxes is not None else isolate_roots(f)
    return log_mahler_measure(f, boxes) / f.degree
