"""Exact univariate polynomials with integer coefficients.

Coefficient lists are low-to-high. Everything is exact: gcds and resultants run
over the subresultant / primitive PRS, and the only irreducibility decisions
made here are for binomials ``X^m - a``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import gmpy2

from .exactnum.rational import exact_root, format_rational, int_from_decimal, int_to_decimal


class ParseError(ValueError):
    """Polynomial text could not be parsed; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position}: {text!r}")
        self.text = text
        self.position = position


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True, slots=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        stripped = _strip(self.coeffs)
        if stripped != self.coeffs:
            object.__setattr__(self, "coeffs", stripped)

    # -- construction ----------------------------------------------------
    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        return reduce(lambda acc, r: acc * cls((-r, 1)), roots, cls((1,)))

    @classmethod
    def from_rational_coeffs(cls, coeffs: Sequence[Fraction]) -> tuple["IntPoly", Fraction]:
        """Clear denominators: returns ``(P, s)`` with ``sum(coeffs X^i) = s * P``."""
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        ints = [int(c * den) for c in coeffs]
        return cls(tuple(ints)), Fraction(1, den)

    @classmethod
    def binomial(cls, m: int, a: Fraction) -> "IntPoly":
        """Primitive integer form ``q X^m - p`` of ``X^m - p/q``."""
        a = Fraction(a)
        return cls((-a.numerator,) + (0,) * (m - 1) + (a.denominator,))

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree <= 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def is_primitive(self) -> bool:
        return self.content() == 1 and self.lc > 0

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    __radd__ = __add__

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        return self + (-other)

    def __rsub__(self, other: int) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        result = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions, Intervals and boxes."""
        if not self.coeffs:
            return 0 * x
        acc = self.coeffs[-1] + 0 * x
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Exact value at a rational point, using one common denominator."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        d = self.degree
        if d < 0:
            return Fraction(0)
        total = 0
        q_pow = 1
        p_pows = [1]
        for _ in range(d):
            p_pows.append(p_pows[-1] * p)
        for i in range(d, -1, -1):
            total += self.coeffs[i] * p_pows[i] * q_pow
            q_pow *= q
        return Fraction(total, q**d)

    def taylor_shift(self, a: int) -> "IntPoly":
        """``f(X + a)`` for an integer ``a``."""
        coeffs = list(self.coeffs)
        n = len(coeffs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                coeffs[j] += a * coeffs[j + 1]
        return IntPoly(tuple(coeffs))

    def shift_rational(self, a: Fraction) -> "IntPoly":
        """Primitive integer polynomial whose roots are ``root + a`` for roots of self.

        That is the primitive part of ``q^d f(X - p/q)`` for ``a = p/q``.
        """
        a = Fraction(a)
        p, q = a.numerator, a.denominator
        d = self.degree
        # q^d f((q X - p)/q) = sum c_i (qX - p)^i q^(d-i)
        result = IntPoly()
        lin = IntPoly((-p, q))
        power = IntPoly((1,))
        for i, c in enumerate(self.coeffs):
            if c:
                result = result + power * (c * q ** (d - i))
            power = power * lin
        return result.primitive()

    def scale_root(self, s: int) -> "IntPoly":
        """``f(s X)``."""
        return IntPoly(tuple(c * s**i for i, c in enumerate(self.coeffs)))

    def reverse_sign_var(self) -> "IntPoly":
        """``f(-X)``."""
        return self.scale_root(-1)

    def pseudo_divmod(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """``lc(g)^(deg f - deg g + 1) f = q g + r``."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-division by the zero polynomial")
        r = list(self.coeffs)
        dg = other.degree
        if self.degree < dg:
            return IntPoly(), self
        lc = other.lc
        steps = self.degree - dg + 1
        q = [0] * steps
        for k in range(self.degree - dg, -1, -1):
            coef = r[k + dg] if k + dg < len(r) else 0
            q = [c * lc for c in q]
            q[k] += coef
            r = [c * lc for c in r]
            if coef:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= coef * b
        return IntPoly(tuple(q)), IntPoly(tuple(r[:dg]))

    def prem(self, other: "IntPoly") -> "IntPoly":
        return self.pseudo_divmod(other)[1]

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Quotient over Q, returned as a primitive integer polynomial.

        The division must be exact up to a rational constant.
        """
        q, r = self.pseudo_divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q.primitive()

    def divide_by_x_power(self, k: int) -> "IntPoly":
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"polynomial is not divisible by X^{k}")
        return IntPoly(self.coeffs[k:])

    # -- text forms ------------------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = int_to_decimal(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{int_to_decimal(mag)}*{mono}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def to_json(self) -> dict:
        return {"coeffs": [int_to_decimal(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "IntPoly":
        return cls(tuple(int_from_decimal(str(c)) for c in data["coeffs"]))


def as_poly(f: "IntPoly | str | Sequence[int]") -> IntPoly:
    if isinstance(f, IntPoly):
        return f
    if isinstance(f, str):
        return parse_poly(f)
    return IntPoly(tuple(int(c) for c in f))


# -- parsing --------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z])|(\*\*|[-+*^()]))")


def _tokenize(src: str, original: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            col = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[col]!r}", original, col)
        num, name, op = m.groups()
        start = m.start(1) if num else (m.start(2) if name else m.start(3))
        kind = "num" if num else ("var" if name else "op")
        tokens.append((kind, num or name or op, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    """``expr := [+-] term ([+-] term)*``, ``term := power ([*] power)*``, ``power := atom [^ int]``."""

    def __init__(self, src: str, original: str):
        self.original = original
        self.tokens = _tokenize(src, original)
        self.i = 0
        self.var: str | None = None

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: tuple[str, str, int] | None = None) -> ParseError:
        return ParseError(message, self.original, (tok or self.peek())[2])

    def parse(self) -> IntPoly:
        if self.peek()[0] == "end":
            raise self.fail("empty polynomial")
        out = self.expr()
        if self.peek()[0] != "end":
            raise self.fail(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> IntPoly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> IntPoly:
        out = self.power()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.take()
            elif not (kind in ("num", "var") or (kind == "op" and text == "(")):
                return out
            out = out * self.power()

    def power(self) -> IntPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise self.fail("expected a non-negative integer exponent", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> IntPoly:
        tok = self.take()
        kind, text, _ = tok
        if kind == "num":
            return IntPoly((int_from_decimal(text),))
        if kind == "var":
            if self.var is None:
                self.var = text
            elif text != self.var:
                raise self.fail(f"unexpected variable {text!r}", tok)
            return IntPoly((0, 1))
        if text == "(":
            inner = self.expr()
            if self.take()[1] != ")":
                raise self.fail("expected ')'", self.tokens[self.i - 1])
            return inner
        raise self.fail("expected a term", tok)


def parse_poly(text: str) -> IntPoly:
    """Parse ``"x^2 - 2"``, ``"[-2,0,1]"`` or ``'{"coeffs": [...]}'``."""
    src = text.replace("−", "-").replace("–", "-")
    stripped = src.strip()
    if stripped.startswith("{"):
        try:
            return IntPoly.from_json(json.loads(stripped))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad polynomial JSON ({exc})", text, 0) from None
    if stripped.startswith("["):
        if not stripped.endswith("]"):
            raise ParseError("unterminated coefficient list", text, len(text))
        body = stripped[1:-1]
        if not body.strip():
            return IntPoly()
        coeffs = []
        offset = src.index("[") + 1
        for piece in body.split(","):
            try:
                coeffs.append(int_from_decimal(piece.strip()))
            except ValueError:
                raise ParseError(f"bad coefficient {piece.strip()!r}", text, offset + len(piece) - len(piece.lstrip())) from None
            offset += len(piece) + 1
        return IntPoly(tuple(coeffs))
    return _parse_expression(src, text)


def _parse_expression(src: str, original: str) -> IntPoly:
    return _Parser(src, original).parse()


# -- gcd / squarefree ------------------------------------------------------


def gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.prem(b)
        a, b = b, (r.primitive() if not r.is_zero() else r)
    return a.primitive()


@dataclass(frozen=True)
class MultiplicityProfile:
    """Squarefree decomposition: pairwise coprime squarefree factors with multiplicities."""

    factors: tuple[tuple[IntPoly, int], ...]
    constant: Fraction = field(default=Fraction(1))

    def expand(self) -> IntPoly:
        out = IntPoly((1,))
        for poly, mult in self.factors:
            out = out * poly**mult
        return out

    def multiplicities(self) -> list[int]:
        return [mult for _, mult in self.factors]

    def degree_of_multiplicity(self, k: int) -> int:
        return sum(p.degree for p, mult in self.factors if mult == k)

    def to_json(self) -> dict:
        return {"factors": [{"poly": p.to_json(), "mult": k} for p, k in self.factors]}

    @classmethod
    def from_json(cls, data: dict) -> "MultiplicityProfile":
        return cls(tuple((IntPoly.from_json(e["poly"]), int(e["mult"])) for e in data["factors"]))


def squarefree_decomposition(f: IntPoly) -> MultiplicityProfile:
    """Yun's algorithm over Q; factors are primitive integer polynomials."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    prim = f.primitive()
    if prim.degree == 0:
        return MultiplicityProfile((), Fraction(f.lc))
    factors = _yun(prim)
    expanded = MultiplicityProfile(tuple(factors)).expand()
    return MultiplicityProfile(tuple(factors), Fraction(f.lc, expanded.lc))


def _yun(f: IntPoly) -> list[tuple[IntPoly, int]]:
    # Yun's algorithm over Q with rational coefficient lists
    def qpoly(p: IntPoly) -> list[Fraction]:
        return [Fraction(c) for c in p.coeffs]

    def strip(p: list[Fraction]) -> list[Fraction]:
        while p and p[-1] == 0:
            p.pop()
        return p

    def sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        n = max(len(a), len(b))
        return strip([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])

    def deriv(a: list[Fraction]) -> list[Fraction]:
        return strip([i * c for i, c in enumerate(a)][1:])

    def divexact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        a = list(a)
        q = [Fraction(0)] * (len(a) - len(b) + 1)
        for k in range(len(a) - len(b), -1, -1):
            coef = a[k + len(b) - 1] / b[-1]
            q[k] = coef
            for j, bc in enumerate(b):
                a[k + j] -= coef * bc
        if any(strip(a)):
            raise ArithmeticError("inexact division in squarefree decomposition")
        return strip(q)

    def to_int(a: list[Fraction]) -> IntPoly:
        poly, _ = IntPoly.from_rational_coeffs(a)
        return poly.primitive()

    def qgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        g = gcd(to_int(a) if a else IntPoly(), to_int(b) if b else IntPoly())
        return qpoly(g)

    out: list[tuple[IntPoly, int]] = []
    a = qpoly(f)
    da = deriv(a)
    a0 = qgcd(a, da)
    b = divexact(a, a0)
    c = divexact(da, a0)
    d = sub(c, deriv(b))
    i = 1
    while len(b) > 1:
        a_i = qgcd(b, d) if d else list(b)
        b = divexact(b, a_i)
        c = divexact(d, a_i) if d else []
        d = sub(c, deriv(b))
        if len(a_i) > 1:
            out.append((to_int(a_i), i))
        i += 1
    return out


def squarefree_part(f: IntPoly) -> IntPoly:
    return f.exact_div(gcd(f, f.derivative())) if f.degree > 0 else f.primitive()


def is_squarefree(f: IntPoly) -> bool:
    if f.degree <= 0:
        return True
    return gcd(f, f.derivative()).degree == 0


def count_simple_roots(f: IntPoly) -> int:
    """Number of simple zeros of ``f`` in the algebraic closure."""
    if f.is_zero():
        raise ValueError("count_simple_roots of the zero polynomial")
    return squarefree_decomposition(f).degree_of_multiplicity(1)


# -- resultants --------------------------------------------------------------


def resultant(f: IntPoly, g: IntPoly) -> int:
    """``Res(f, g) = lc(f)^deg(g) * prod g(alpha)`` over the roots of f.

    Subresultant PRS (Collins / Brown), primitive parts taken up front.
    """
    if f.is_zero() or g.is_zero():
        return 0
    a_cont, b_cont = f.content(), g.content()
    A = IntPoly(tuple(c // a_cont for c in f.coeffs))
    B = IntPoly(tuple(c // b_cont for c in g.coeffs))
    t = Fraction(a_cont) ** B.degree * Fraction(b_cont) ** A.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 == 1 and B.degree % 2 == 1:
            s = -1
    g_, h = Fraction(1), Fraction(1)
    while B.degree > 0:
        delta = A.degree - B.degree
        if A.degree % 2 == 1 and B.degree % 2 == 1:
            s = -s
        R = A.prem(B)
        A = B
        divisor = g_ * h**delta
        coeffs = [Fraction(c) / divisor for c in R.coeffs]
        if any(c.denominator != 1 for c in coeffs):
            raise ArithmeticError("subresultant division was not exact")
        B = IntPoly(tuple(int(c) for c in coeffs))
        g_ = Fraction(A.lc)
        h = h ** (1 - delta) * g_**delta
        if B.is_zero():
            return 0
    h = h ** (1 - A.degree) * Fraction(B.lc) ** A.degree
    result = s * t * h
    if result.denominator != 1:
        raise ArithmeticError("resultant is not an integer")
    return int(result)


def discriminant(f: IntPoly) -> int:
    """``(-1)^(n(n-1)/2) Res(f, f') / lc(f)``."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    if n == 1:
        return 1
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    value = Fraction(sign * res, f.lc)
    if value.denominator != 1:
        raise ArithmeticError("discriminant is not an integer")
    return int(value)


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Newton interpolation; returns coefficients low-to-high."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    poly[0] = coef[-1]
    deg = 0
    for k in range(n - 2, -1, -1):
        # poly = poly * (X - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for i in range(deg + 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coef[k]
        poly = new
        deg += 1
    return poly


def difference_polynomial(f: IntPoly) -> IntPoly:
    """``Res_Y(f(Y), f(Y + X)) / X^m``: its roots are the differences of distinct roots."""
    m = f.degree
    if m < 2:
        raise ValueError("difference polynomial needs degree >= 2")
    if not is_squarefree(f):
        raise ValueError("difference polynomial needs a squarefree polynomial")
    total = m * m
    xs = list(range(total + 1))
    ys = [resultant(f, f.taylor_shift(x)) for x in xs]
    coeffs = _interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("interpolated resultant has non-integral coefficients")
    full = IntPoly(tuple(int(c) for c in coeffs))
    if full.degree != total:
        raise ArithmeticError("resultant in X has the wrong degree")
    return full.divide_by_x_power(m)


# -- binomials -----------------------------------------------------------------


def prime_divisors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def is_pth_power(a: Fraction | int, p: int) -> bool:
    """True iff ``a = c^p`` for a rational ``c``."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("is_pth_power is undefined for 0")
    if not gmpy2.is_prime(p):
        raise ValueError(f"{p} is not prime")
    return exact_root(a, p) is not None


@dataclass(frozen=True)
class BinomialVerdict:
    """Outcome of the binomial criterion for ``X^m - a`` over Q."""

    m: int
    a: Fraction
    irreducible: bool
    reason: str
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.irreducible

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "a": format_rational(self.a),
            "irreducible": self.irreducible,
            "reason": self.reason,
            "witness": self.witness,
        }


def binomial_irreducible(m: int, a: Fraction | int) -> BinomialVerdict:
    """Decide irreducibility of ``X^m - a`` over Q (criterion for binomials).

    Reducible exactly when ``a`` is a p-th power for some prime ``p | m``, or
    ``4 | m`` and ``a = -4 c^4``.
    """
    a = Fraction(a)
    if m < 1:
        raise ValueError("m must be positive")
    if a == 0:
        raise ValueError("a must be non-zero")
    if m == 1:
        return BinomialVerdict(m, a, True, "degree 1")
    for p in prime_divisors(m):
        root = exact_root(a, p)
        if root is not None:
            return BinomialVerdict(
                m, a, False, f"a = c^{p} with c = {format_rational(root)}", {"prime": p, "root": format_rational(root)}
            )
    if m % 4 == 0:
        quarter = -a / 4
        if quarter > 0:
            c = exact_root(quarter, 4)
            if c is not None:
                return BinomialVerdict(
                    m, a, False, "a lies in -4Q^4", {"minus_four_c4": format_rational(c)}
                )
    return BinomialVerdict(m, a, True, "no p-th power for p | m and a not in -4Q^4")
