"""Liouville-type series ``sum b^(-e_j)`` and their L-number certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2

from ..exactnum.interval import Interval
from ..exactnum.logexpr import LogExpr
from ..exactnum.rational import ceil_to_grid, floor_to_grid, format_rational
from .codec import GRID, format_scaled
from .errors import BudgetError

DEFAULT_BIT_BUDGET = 10**7


@dataclass(frozen=True)
class LiouvilleSeries:
    """``lambda = sum_{j >= 1} base^(-e_j)``; exponents are n! or an explicit list."""

    base: int
    kind: str = "factorial"
    values: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if self.kind not in ("factorial", "list"):
            raise ValueError(f"unknown exponent kind {self.kind!r}")
        if self.kind == "list":
            if not self.values:
                raise ValueError("explicit exponent list is empty")
            if self.values[0] < 1 or any(b <= a for a, b in zip(self.values, self.values[1:])):
                raise ValueError("exponents must be strictly increasing positive integers")

    @classmethod
    def factorial(cls, base: int = 2) -> LiouvilleSeries:
        return cls(base)

    @classmethod
    def explicit(cls, base: int, values: Sequence[int]) -> LiouvilleSeries:
        return cls(base, "list", tuple(int(v) for v in values))

    def exponent(self, n: int) -> int:
        if n < 1:
            raise ValueError("series terms are indexed from 1")
        if self.kind == "factorial":
            return math.factorial(n)
        if n > len(self.values):
            raise ValueError(f"exponent list has only {len(self.values)} terms, e_{n} requested")
        return self.values[n - 1]

    def bits(self, n: int) -> int:
        """Upper bound for the bit size of ``base^(e_n)``."""
        return self.exponent(n) * self.base.bit_length()

    def alpha_parts(self, n: int) -> tuple[int, int]:
        """Numerator and denominator of the n-th partial sum in lowest terms."""
        b, top = self.base, self.exponent(n)
        num = sum(b ** (top - self.exponent(j)) for j in range(1, n + 1))
        den = b**top
        g = int(gmpy2.gcd(num, den))
        return num // g, den // g

    def alpha(self, n: int) -> Fraction:
        num, den = self.alpha_parts(n)
        return Fraction(num, den)

    def alpha_height(self, n: int) -> LogExpr:
        """``h(alpha_n) = log(denominator)``; the partial sums lie in (0, 1)."""
        _, den = self.alpha_parts(n)
        if den == self.base ** self.exponent(n):
            return LogExpr.of(self.base, self.exponent(n))
        return LogExpr.of(den)

    def tail_interval(self, n: int) -> Interval:
        """``lambda - alpha_n`` lies in ``[b^-e, (b/(b-1)) b^-e]`` with ``e = e_{n+1}``."""
        b, e = self.base, self.exponent(n + 1)
        low = Fraction(1, b**e)
        return Interval(low, low * Fraction(b, b - 1))

    def tail_text(self, n: int) -> list[str]:
        e = self.exponent(n + 1)
        return [format_scaled(1, self.base, -e), format_scaled(Fraction(self.base, self.base - 1), self.base, -e)]

    def tail_log(self, n: int) -> LogExpr:
        """``-log`` of the upper tail bound."""
        b = self.base
        return LogExpr.of(b, self.exponent(n + 1)) - LogExpr.of(Fraction(b, b - 1))

    def lambda_enclosure(self, n: int) -> Interval:
        return self.tail_interval(n) + self.alpha(n)

    def to_json(self) -> dict:
        out: dict = {"base": self.base, "exponents": self.kind}
        if self.kind == "list":
            out["values"] = list(self.values)
        return out

    @classmethod
    def from_json(cls, data: dict) -> LiouvilleSeries:
        if data["exponents"] == "list":
            return cls.explicit(int(data["base"]), data["values"])
        return cls(int(data["base"]))


def check_budget(series: LiouvilleSeries, n: int, bit_budget: int, stage: str) -> None:
    if series.bits(n) > bit_budget:
        raise BudgetError(stage, f"base^e_{n} needs {series.bits(n)} bits, budget is {bit_budget}")


def approximation_exponent(series: LiouvilleSeries, n: int, h_alpha: LogExpr | None = None) -> tuple[Fraction, bool]:
    """Largest ``v`` (exact, or on the 2^-32 grid) with ``v h(alpha_n) <= -log(tail bound)``."""
    h = series.alpha_height(n) if h_alpha is None else h_alpha
    target = series.tail_log(n)
    exact = target.ratio(h)
    if exact is not None:
        return exact, True
    v = floor_to_grid(target.enclosure(256).lo / h.enclosure(256).hi, GRID)
    step = Fraction(1, GRID)
    while (v + step) * h <= target:
        v += step
    while v * h > target:
        v -= step
    return v, False


@dataclass(frozen=True)
class LNumberRow:
    n: int
    e_n: int
    e_next: int
    alpha: Fraction
    h_alpha: LogExpr
    v: Fraction
    v_exact: bool
    h_alpha_next: LogExpr
    ratio: Fraction
    tail: tuple[str, str]


@dataclass(frozen=True)
class LNumberCertificate:
    series: LiouvilleSeries
    n_range: tuple[int, int]
    rows: tuple[LNumberRow, ...]
    A: Fraction
    A_exact: bool
    bit_budget: int

    @property
    def v_increasing(self) -> bool:
        return all(a.v < b.v for a, b in zip(self.rows, self.rows[1:]))

    @property
    def certified(self) -> bool:
        return self.v_increasing

    def v_values(self) -> dict[int, Fraction]:
        return {r.n: r.v for r in self.rows}

    def to_json(self) -> dict:
        rows = []
        for r in self.rows:
            rows.append(
                {
                    "n": r.n,
                    "e_n": r.e_n,
                    "e_next": r.e_next,
                    "alpha": format_rational(r.alpha),
                    "h_alpha": r.h_alpha.to_json(),
                    "tail": list(r.tail),
                    "v_n": format_rational(r.v),
                    "v_n_float": repr(float(r.v)),
                    "v_exact": r.v_exact,
                    "h_alpha_next": r.h_alpha_next.to_json(),
                    "ratio": format_rational(r.ratio),
                }
            )
        return {
            "series": self.series.to_json(),
            "range": list(self.n_range),
            "bit_budget": self.bit_budget,
            "rows": rows,
            "A": format_rational(self.A),
            "A_float": repr(float(self.A)),
            "A_exact": self.A_exact,
            "v_increasing": self.v_increasing,
            "status": "certified" if self.certified else "refused",
        }

    def csv_rows(self) -> list[dict]:
        return [
            {"n": r.n, "h_alpha": r.h_alpha.render_float(), "v_n": repr(float(r.v)), "h_beta": "", "w_n": ""}
            for r in self.rows
        ]


def sparseness_ratio(h_next: LogExpr, v: Fraction, h: LogExpr) -> tuple[Fraction, bool]:
    """Smallest admissible ``A`` for one row: ``h_next / (v h)``, exact or rounded up."""
    exact = h_next.ratio(h * v)
    if exact is not None:
        return exact, True
    up = ceil_to_grid(h_next.enclosure(256).hi / (h * v).enclosure(256).lo, GRID)
    return up, False


def certify_L(
    series: LiouvilleSeries, n_range: tuple[int, int] = (1, 9), bit_budget: int = DEFAULT_BIT_BUDGET
) -> LNumberCertificate:
    n_min, n_max = n_range
    if n_min < 1 or n_max < n_min:
        raise ValueError(f"bad range {n_min}..{n_max}")
    # the last row needs e_{n_max + 1} for its tail and h(alpha_{n_max + 1}) for A
    check_budget(series, n_max + 1, bit_budget, "certify_L")
    heights = {n: series.alpha_height(n) for n in range(n_min, n_max + 2)}
    rows = []
    A, A_exact = Fraction(0), True
    for n in range(n_min, n_max + 1):
        v, v_exact = approximation_exponent(series, n, heights[n])
        if v <= 0:
            raise ValueError(f"tail bound gives no positive exponent at n = {n}")
        ratio, ratio_exact = sparseness_ratio(heights[n + 1], v, heights[n])
        A_exact = A_exact and ratio_exact
        A = max(A, ratio)
        rows.append(
            LNumberRow(
                n,
                series.exponent(n),
                series.exponent(n + 1),
                series.alpha(n),
                heights[n],
                v,
                v_exact,
                heights[n + 1],
                ratio,
                tuple(series.tail_text(n)),
            )
        )
    return LNumberCertificate(series, (n_min, n_max), tuple(rows), A, A_exact, bit_budget)
