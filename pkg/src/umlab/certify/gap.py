"""Exclusion scan: small-height algebraic numbers stay exponentially far from kappa."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from ..exactnum.algebraic import isolate_roots, log_mahler_measure
from ..exactnum.interval import ComplexBox, Interval, complex_nth_root, exp as interval_exp, log as interval_log
from ..exactnum.interval import nth_root, working_precision
from ..exactnum.logexpr import LOG2
from ..exactnum.rational import format_rational
from ..polyring import IntPoly
from .codec import format_exact, publish_lower
from .errors import RefusedError
from .root import UmCertificate
from .series import LiouvilleSeries

SCAN_BITS = 128


@dataclass(frozen=True)
class Candidate:
    minpoly: IntPoly
    box: ComplexBox
    height: Interval


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _linear(a: int, b: int) -> Iterator[Candidate]:
    # a X + b, root -b/a, height log max(|b|, a)
    h = interval_log(Interval.point(max(abs(b), a)), SCAN_BITS) if max(abs(b), a) > 1 else Interval.point(0)
    yield Candidate(IntPoly((b, a)), ComplexBox.point(Fraction(-b, a)), h)


def _quadratic(a: int, b: int, c: int) -> Iterator[Candidate]:
    f = IntPoly((c, b, a))
    disc = b * b - 4 * a * c
    if disc < 0:
        # conjugate pair of modulus sqrt(c/a): M(f) = max(a, c)
        h = interval_log(Interval.point(max(a, c)), SCAN_BITS) / 2
        re = Interval.point(Fraction(-b, 2 * a))
        im = nth_root(Interval.point(-disc), 2) / (2 * a)
        yield Candidate(f, ComplexBox(re, im), h)
        yield Candidate(f, ComplexBox(re, -im), h)
        return
    root = nth_root(Interval.point(disc), 2)
    boxes = [ComplexBox.real((root - b) / (2 * a)), ComplexBox.real((-root - b) / (2 * a))]
    h = log_mahler_measure(f, boxes) / 2
    for box in boxes:
        yield Candidate(f, box, h)


def candidates(max_degree: int, coeff_bound: int) -> Iterator[Candidate]:
    """Roots of primitive irreducible polynomials of degree <= max_degree with coefficients in [-B, B]."""
    if max_degree > 3:
        raise ValueError("exclusion scans are implemented for degree <= 3")
    B = coeff_bound
    rng = range(-B, B + 1)
    for a in range(1, B + 1):
        for b in rng:
            if math.gcd(a, b) == 1:
                yield from _linear(a, b)
    if max_degree >= 2:
        for a in range(1, B + 1):
            for b, c in itertools.product(rng, rng):
                if c == 0 or math.gcd(a, b, c) != 1 or _is_square(b * b - 4 * a * c):
                    continue
                yield from _quadratic(a, b, c)
    if max_degree >= 3:
        for a in range(1, B + 1):
            for rest in itertools.product(rng, repeat=3):
                f = IntPoly(tuple(reversed(rest)) + (a,))
                if math.gcd(*f.coeffs) != 1 or _rational_root(f):
                    continue
                boxes = isolate_roots(f)
                h = log_mahler_measure(f, boxes) / 3
                for box in boxes:
                    yield Candidate(f, box, h)


def _rational_root(f: IntPoly) -> bool:
    a0, an = abs(f.coeffs[0]), f.lc
    if a0 == 0:
        return True
    for p in range(1, a0 + 1):
        if a0 % p:
            continue
        for q in range(1, an + 1):
            if an % q == 0 and (f.eval_fraction(Fraction(p, q)) == 0 or f.eval_fraction(Fraction(-p, q)) == 0):
                return True
    return False


def eta_grid(m: int, max_height: float) -> list[int]:
    top = 2 * m * (m + 1) * max_height
    grid, eta = [], 1
    while eta <= max(top, 1):
        grid.append(eta)
        eta *= 2
    return grid


def kappa_enclosure(series: LiouvilleSeries, Q: IntPoly, m: int, branch: ComplexBox | None, n: int) -> ComplexBox:
    lam = series.lambda_enclosure(n)
    value = Q(lam)
    if branch is None:
        if value.lo > 0:
            return ComplexBox.real(nth_root(value, m))
        if m % 2:
            return ComplexBox.real(-nth_root(-value, m))
        raise RefusedError("Q(lambda) < 0 needs a declared branch")
    return complex_nth_root(ComplexBox.real(value), m, branch)


@dataclass(frozen=True)
class GapReport:
    m: int
    coeff_bound: int
    height_bound: Fraction | None
    scanned: int
    excluded: int
    table: tuple[tuple[int, Fraction, str], ...]
    selected: tuple[int, Fraction]
    exceptions: tuple[str, ...]
    liouville_checks: int
    liouville_consistent: bool

    @property
    def passed(self) -> bool:
        return not self.exceptions and self.liouville_consistent

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "coeff_bound": self.coeff_bound,
            "height_bound": None if self.height_bound is None else format_rational(self.height_bound),
            "scanned": self.scanned,
            "excluded_members": self.excluded,
            "table": [{"eta": eta, "c": format_exact(c), "argmin": arg} for eta, c, arg in self.table],
            "selected": {"eta": self.selected[0], "c": format_exact(self.selected[1])},
            "exceptions": list(self.exceptions),
            "liouville_checks": self.liouville_checks,
            "liouville_consistent": self.liouville_consistent,
            "status": "certified" if self.passed else "refused",
        }


def _label(c: Candidate) -> str:
    re = float(c.box.re.mid)
    im = float(c.box.im.mid)
    return f"{c.minpoly} @ {re:.6g}{im:+.6g}i"


def gap_exclusion_scan(
    cert: UmCertificate,
    Q: IntPoly,
    branch: ComplexBox | None = None,
    coeff_bound: int = 20,
    height_bound: Fraction | None = None,
) -> GapReport:
    """Fit ``|kappa - gamma| >= c exp(-eta h(gamma))`` over every small candidate gamma."""
    if cert.construction != "root":
        raise ValueError("gap scans run on root-construction certificates")
    m = cert.m
    members = {r.approximant.minpoly for r in cert.rows}
    row_data = [
        (r.h_beta.enclosure(SCAN_BITS), r.distance.hi, interval_log(Interval.point(r.distance.hi), SCAN_BITS).lo)
        for r in cert.rows
    ]
    max_h = max(float(h.hi) for h, _, _ in row_data)
    grid = eta_grid(m, max_h)
    best_log = {eta: None for eta in grid}
    argmin = {eta: "" for eta in grid}
    exceptions = []
    scanned = excluded = checks = 0
    consistent = True
    with working_precision(SCAN_BITS):
        kappa = kappa_enclosure(cert.series, Q, m, branch, cert.n_range[1])
        log2 = LOG2.enclosure(SCAN_BITS)
        for cand in candidates(m, coeff_bound):
            if height_bound is not None and cand.height.lo > height_bound:
                continue
            if cand.minpoly in members:
                excluded += 1
                continue
            scanned += 1
            d2 = (kappa - cand.box).abs_sq()
            if d2.lo <= 0:
                exceptions.append(f"indeterminate distance for {_label(cand)}")
                continue
            log_d = interval_log(d2, SCAN_BITS) / 2
            for eta in grid:
                value = log_d.lo + eta * cand.height.lo
                if best_log[eta] is None or value < best_log[eta]:
                    best_log[eta] = value
                    argmin[eta] = _label(cand)
            # Liouville between gamma and each beta_n, pushed to kappa by the triangle inequality
            d_gamma = cand.minpoly.degree
            for h_beta, u, log_u in row_data:
                exponent = -(m * d_gamma) * (h_beta.hi + cand.height.hi + log2.hi)
                checks += 1
                if exponent <= log_u:
                    continue  # floor below U_n: nothing to compare
                floor = interval_exp(Interval.point(exponent), SCAN_BITS).lo - u
                if floor > 0 and log_d.hi < interval_log(Interval.point(floor), SCAN_BITS).lo:
                    consistent = False
                    exceptions.append(f"Liouville floor exceeds the distance for {_label(cand)}")
        table = []
        for eta in grid:
            if best_log[eta] is None:
                raise RefusedError("no candidates were scanned")
            c = publish_lower(interval_exp(Interval.point(best_log[eta]), SCAN_BITS).lo)
            table.append((eta, c, argmin[eta]))
    selected = (table[-1][0], table[-1][1])
    return GapReport(
        m, coeff_bound, height_bound, scanned, excluded, tuple(table), selected, tuple(exceptions), checks, consistent
    )
