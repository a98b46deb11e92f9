"""Genus of superelliptic curves ``Y^n = c * Q(X)`` by Riemann-Hurwitz."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum.rational import format_rational
from .polyring import (
    IntPoly,
    MultiplicityProfile,
    count_simple_roots,
    prime_divisors,
    squarefree_decomposition,
)

FALTINGS_DISCLAIMER = (
    "Genus >= 2 gives finiteness of the exceptional set through Faltings' theorem, "
    "which is not effective; the exceptional values are not enumerated."
)


class CurveError(ValueError):
    """The superelliptic model is not geometrically irreducible or is degenerate."""


def simple_root_threshold(p: int) -> int:
    """Simple zeros of Q needed when p is the smallest prime divisor of m."""
    if p == 2:
        return 5
    if p == 3:
        return 4
    return 2


@dataclass(frozen=True)
class SuperellipticCurve:
    n: int
    c: Fraction
    Q: IntPoly
    profile: MultiplicityProfile = field(compare=False)

    @classmethod
    def build(cls, n: int, Q: IntPoly, c: Fraction | int = 1) -> SuperellipticCurve:
        if n < 2:
            raise CurveError("cover degree n must be at least 2")
        if Q.degree < 1:
            raise CurveError("Q must be non-constant")
        c = Fraction(c)
        if c == 0:
            raise CurveError("c must be non-zero")
        profile = squarefree_decomposition(Q)
        g = n
        for mult in profile.multiplicities():
            g = math.gcd(g, mult)
        if g != 1:
            raise CurveError(f"gcd(n, multiplicities) = {g}: Y^{n} = c*Q(X) splits over the algebraic closure")
        return cls(n, c, Q, profile)

    @property
    def d(self) -> int:
        return self.Q.degree


def superelliptic_genus(curve: SuperellipticCurve) -> int:
    n = curve.n
    ramification = sum(
        fac.degree * (n - math.gcd(n, mult)) for fac, mult in curve.profile.factors
    )
    ramification += n - math.gcd(n, curve.d)
    twice = -2 * n + ramification + 2
    if twice % 2 or twice < 0:
        raise AssertionError(f"Riemann-Hurwitz produced 2g = {twice}")
    return twice // 2


def branch_point_count(curve: SuperellipticCurve) -> int:
    """Branch points over P^1: distinct roots with n not dividing the multiplicity, plus infinity."""
    finite = sum(fac.degree for fac, mult in curve.profile.factors if mult % curve.n)
    return finite + (1 if curve.d % curve.n else 0)


@dataclass(frozen=True)
class GenusEntry:
    q: int
    equation: str
    genus: int | None
    branch_points: int | None
    failure: str = ""

    @property
    def ok(self) -> bool:
        return self.genus is not None and self.genus >= 2

    def to_json(self) -> dict:
        out = {"q": self.q, "equation": self.equation, "genus": self.genus, "branch_points": self.branch_points}
        if self.failure:
            out["failure"] = self.failure
        return out


@dataclass(frozen=True)
class GenusReport:
    m: int
    Q: IntPoly
    entries: tuple[GenusEntry, ...]
    quartic: GenusEntry | None
    smallest_prime: int
    k_required: int
    k_found: int
    disclaimer: str = FALTINGS_DISCLAIMER

    @property
    def verdict(self) -> bool:
        curves = self.entries + ((self.quartic,) if self.quartic else ())
        return all(e.ok for e in curves)

    @property
    def k_met(self) -> bool:
        return self.k_found >= self.k_required

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "Q": self.Q.to_json(),
            "Q_text": str(self.Q),
            "per_prime": [e.to_json() for e in self.entries],
            "quartic": self.quartic.to_json() if self.quartic else None,
            "verdict": self.verdict,
            "smallest_prime": self.smallest_prime,
            "k_required": self.k_required,
            "k_found": self.k_found,
            "k_met": self.k_met,
            "disclaimer": self.disclaimer,
        }


def _entry(q: int, Q: IntPoly, c: Fraction) -> GenusEntry:
    lhs = f"Y^{q}"
    rhs = f"{format_rational(c)}*({Q})" if c != 1 else f"{Q}"
    equation = f"{lhs} = {rhs}"
    try:
        curve = SuperellipticCurve.build(q, Q, c)
    except CurveError as exc:
        return GenusEntry(q, equation, None, None, str(exc))
    return GenusEntry(q, equation, superelliptic_genus(curve), branch_point_count(curve))


def verify_degm_hypotheses(m: int, Q: IntPoly) -> GenusReport:
    """Genus of ``Y^q = Q`` for each prime ``q | m`` (and ``Y^4 = -Q/4`` when ``4 | m``)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if Q.degree < 1:
        raise ValueError("Q must be non-constant")
    primes = prime_divisors(m)
    entries = tuple(_entry(q, Q, Fraction(1)) for q in primes)
    quartic = _entry(4, Q, Fraction(-1, 4)) if m % 4 == 0 else None
    p = primes[0]
    return GenusReport(m, Q, entries, quartic, p, simple_root_threshold(p), count_simple_roots(Q))
