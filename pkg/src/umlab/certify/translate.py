"""Translates ``beta_n = gamma + alpha_n`` of a non-real algebraic gamma with Galois group S_m."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..exactnum.algebraic import AlgebraicNumber, isolate_roots, log_mahler_measure, refine_isolator
from ..exactnum.interval import ComplexBox, Interval, log as interval_log, working_precision
from ..exactnum.logexpr import LOG2, LogExpr
from ..exactnum.rational import ceil_to_grid, format_rational
from ..galois import GaloisCertificate, certify_symmetric
from ..polyring import IntPoly, difference_polynomial, is_squarefree
from .codec import GRID, interval_to_json, publish_box, publish_interval
from .errors import RefusedError
from .root import UmCertificate
from .series import DEFAULT_BIT_BUDGET, LiouvilleSeries, approximation_exponent, check_budget

NUMERIC_DIGITS = 50
NUMERIC_GAP = mpmath.mpf(10) ** -30
REFINE_WIDTH = Fraction(1, 1 << 160)


# -- distinct differences ------------------------------------------------------------


@dataclass(frozen=True)
class WilmsResult:
    polynomial: IntPoly
    certified: bool
    reasons: tuple[str, ...]
    difference_poly: IntPoly
    D_squarefree: bool
    galois: GaloisCertificate
    numeric_gap: str | None

    @property
    def degree_claim(self) -> int | None:
        m = self.polynomial.degree
        return m * (m - 1) if self.certified else None

    def to_json(self) -> dict:
        return {
            "poly": self.polynomial.to_json(),
            "poly_text": str(self.polynomial),
            "status": "certified" if self.certified else "refused",
            "reasons": list(self.reasons),
            "degree_claim": self.degree_claim,
            "D": self.difference_poly.to_json(),
            "D_squarefree": self.D_squarefree,
            "galois": self.galois.to_json(),
            "numeric_min_gap": self.numeric_gap,
        }


def difference_gap(f: IntPoly, digits: int = NUMERIC_DIGITS) -> mpmath.mpf:
    """Smallest distance between two of the ``m(m-1)`` root differences, at ``digits`` digits."""
    ctx = mpmath.mp.clone()
    ctx.dps = digits
    roots = ctx.polyroots(list(reversed(f.coeffs)), maxsteps=400, extraprec=4 * digits)
    diffs = [a - b for a, b in itertools.permutations(roots, 2)]
    return min(abs(a - b) for a, b in itertools.combinations(diffs, 2))


def wilms_check(f: IntPoly, prime_budget: int = 1000) -> WilmsResult:
    """Certify that the differences of distinct roots of f have degree ``m(m-1)``.

    With Galois group S_m the differences are all conjugate, so D is a power of
    one irreducible polynomial; D squarefree then forces D irreducible.
    """
    f = f.primitive()
    if f.degree < 2:
        raise ValueError("need degree >= 2")
    if not is_squarefree(f):
        raise ValueError("need a squarefree polynomial")
    D = difference_polynomial(f)
    D_sq = is_squarefree(D)
    gal = certify_symmetric(f, prime_budget)
    reasons = []
    if not D_sq:
        reasons.append("D not squarefree")
    if not gal.is_symmetric:
        reasons.append(f"Galois group not certified S_m (verdict {gal.verdict})")
    certified = not reasons
    gap = None
    if certified:
        value = difference_gap(f)
        gap = mpmath.nstr(value, 12)
        if value <= NUMERIC_GAP:
            certified = False
            reasons.append("numeric root differences are not separated")
    return WilmsResult(f, certified, tuple(reasons), D, D_sq, gal, gap)


# -- separation from lower-degree numbers ------------------------------------------------


@dataclass(frozen=True)
class ImSeparation:
    """``|kappa - beta| >= exp(-C (h(beta) + 1))`` for every beta of degree < m."""

    m: int
    K: int
    height_bound: LogExpr
    inner: LogExpr
    C: LogExpr | Fraction
    derivation: tuple[str, ...]
    checks: dict = field(default_factory=dict)

    def C_enclosure(self, bits: int = 128) -> Interval:
        if isinstance(self.C, LogExpr):
            return self.C.enclosure(bits)
        return Interval.point(self.C)

    def to_json(self) -> dict:
        C = self.C.to_json() if isinstance(self.C, LogExpr) else {"rational": format_rational(self.C)}
        return {
            "m": self.m,
            "K": self.K,
            "h_gamma_bound": self.height_bound.to_json(),
            "inner": self.inner.to_json(),
            "C": C,
            "derivation": list(self.derivation),
            "checks": self.checks,
        }


def landau_height_bound(f: IntPoly) -> LogExpr:
    """``h(gamma) <= log(||f||_2) / m`` since the Mahler measure is at most the 2-norm."""
    return LogExpr.of(sum(c * c for c in f.coeffs)) / (2 * f.degree)


def im_separation_constant(gamma: AlgebraicNumber, wilms: WilmsResult | None = None) -> ImSeparation:
    if not gamma.is_nonreal():
        raise RefusedError("gamma must be certified non-real")
    f = gamma.minpoly
    wilms = wilms or wilms_check(f)
    if not wilms.certified:
        raise RefusedError("distinct-difference check refused: " + "; ".join(wilms.reasons), wilms.to_json())
    m = f.degree
    K = m**3 * (m - 1)
    hb = landau_height_bound(f)
    inner = hb * 2 + LOG2 * 5
    if inner.enclosure(128).lo > 2:
        C: LogExpr | Fraction = inner * K
    else:
        C = Fraction(2 * K)
    derivation = (
        f"deg Im(gamma) <= m(m-1) = {m * (m - 1)}: D(x) is even, so (Im gamma)^2 = -delta^2/4 has degree <= m(m-1)/2",
        f"deg Im(beta) <= m^2 = {m * m} for deg beta < m",
        "h(Im z) <= 2 h(z) + 2 log 2 since Im z = (z - conj z)/(2i)",
        f"h(gamma) <= log(sum a_i^2)/(2m) = {hb!r} (Mahler measure <= 2-norm)",
        f"Liouville: |Im gamma - Im beta| >= exp(-K (2 h(beta) + 2 h(gamma) + 5 log 2)), K = m^3 (m-1) = {K}",
        "C = K * max(2, 2 h_gamma_bound + 5 log 2) gives K (2h + 2h_gamma + 5 log 2) <= C (h + 1)",
    )
    return ImSeparation(m, K, hb, inner, C, derivation)


def _has_rational_root(f: IntPoly) -> bool:
    if f.coeffs[0] == 0:
        return True
    a0, an = abs(f.coeffs[0]), abs(f.lc)
    divisors = lambda n: [d for d in range(1, n + 1) if n % d == 0]  # noqa: E731
    for p in divisors(a0):
        for q in divisors(an):
            for s in (p, -p):
                if f.eval_fraction(Fraction(s, q)) == 0:
                    return True
    return False


def small_irreducibles(max_degree: int, coeff_bound: int):
    """Primitive irreducible polynomials of degree 1..max_degree (<= 3) with bounded coefficients."""
    if max_degree > 3:
        raise ValueError("the rational-root irreducibility screen only covers degree <= 3")
    rng = range(-coeff_bound, coeff_bound + 1)
    for d in range(1, max_degree + 1):
        for lead in range(1, coeff_bound + 1):
            for rest in itertools.product(rng, repeat=d):
                f = IntPoly(tuple(reversed(rest)) + (lead,))
                if f.degree != d or math.gcd(*f.coeffs) != 1:
                    continue
                if d > 1 and _has_rational_root(f):
                    continue
                yield f


def verify_im_separation(
    sep: ImSeparation, kappa: ComplexBox, coeff_bound: int = 2, max_degree: int | None = None
) -> dict:
    """Check the separation inequality on every small beta of degree < m."""
    max_degree = min(sep.m - 1, 3) if max_degree is None else max_degree
    checked = 0
    worst = None
    with working_precision(128):
        C = sep.C_enclosure()
        for f in small_irreducibles(max_degree, coeff_bound):
            boxes = isolate_roots(f)
            h = log_mahler_measure(f, boxes) / f.degree
            bound_log = -(C.hi * (h.hi + 1))
            for box in boxes:
                d2 = (kappa - box).abs_sq()
                if d2.lo <= 0:
                    return {"checked": checked, "ok": False, "failure": str(f)}
                slack = interval_log(d2, 96).lo / 2 - bound_log
                if slack <= 0:
                    return {"checked": checked, "ok": False, "failure": str(f)}
                worst = slack if worst is None else min(worst, slack)
                checked += 1
    return {"checked": checked, "ok": True, "coeff_bound": coeff_bound, "max_degree": max_degree,
            "min_log_slack": repr(float(worst)) if worst is not None else None}


# -- the construction ---------------------------------------------------------------------


@dataclass(frozen=True)
class TranslateRow:
    n: int
    alpha: Fraction
    h_alpha: LogExpr
    v: Fraction
    minpoly: IntPoly
    h_beta: Interval
    tail: Interval
    tail_text: tuple[str, str]
    w: Fraction
    within_shift: bool
    within_factor_two: bool

    def h_beta_float(self) -> str:
        lo, hi = float(self.h_beta.lo), float(self.h_beta.hi)
        if lo != hi:
            raise ArithmeticError("height enclosure too wide to render")
        return repr(lo)

    def csv_row(self) -> dict:
        return {
            "n": self.n,
            "h_alpha": self.h_alpha.render_float(),
            "v_n": repr(float(self.v)),
            "h_beta": self.h_beta_float(),
            "w_n": repr(float(self.w)),
        }

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "alpha": format_rational(self.alpha),
            "h_alpha": self.h_alpha.to_json(),
            "v_n": format_rational(self.v),
            "beta_minpoly": self.minpoly.to_json(),
            "h_beta": interval_to_json(self.h_beta),
            "h_beta_float": self.h_beta_float(),
            "distance": list(self.tail_text),
            "w_n": format_rational(self.w),
            "w_n_float": repr(float(self.w)),
            "within_shift": self.within_shift,
            "within_factor_two": self.within_factor_two,
        }


def _gamma_index(boxes: list[ComplexBox], gamma: AlgebraicNumber) -> int:
    hits = [i for i, b in enumerate(boxes) if b.intersects(gamma.isolator)]
    if len(hits) != 1:
        raise RefusedError("gamma's isolator does not single out one conjugate")
    return hits[0]


def construct_um_translate(
    gamma: AlgebraicNumber,
    series: LiouvilleSeries,
    n_range: tuple[int, int] = (1, 8),
    prime_budget: int = 1000,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> UmCertificate:
    if not gamma.is_nonreal():
        raise RefusedError("gamma must be certified non-real (the imaginary part of its box must exclude 0)")
    f = gamma.minpoly
    m = f.degree
    gal = certify_symmetric(f, prime_budget)
    if not gal.is_symmetric:
        raise RefusedError(
            f"Galois group of {f} not certified S_m within {prime_budget} primes; "
            "raise the prime budget or pick a gamma whose group is known to be S_m",
            gal.to_json(),
        )
    n_min, n_max = n_range
    check_budget(series, n_max + 1, bit_budget, "construct_um_translate")
    # tight isolators keep every published enclosure reproducible at 64 bits
    boxes = [refine_isolator(AlgebraicNumber(f, b), REFINE_WIDTH).isolator for b in isolate_roots(f)]
    index = _gamma_index(boxes, gamma)
    gamma_box = boxes[index]
    h_gamma = publish_interval(log_mahler_measure(f, boxes) / m)
    log2 = LOG2.enclosure(128)

    rows = []
    for n in range(n_min, n_max + 1):
        alpha = series.alpha(n)
        h_alpha = series.alpha_height(n)
        v, _ = approximation_exponent(series, n, h_alpha)
        minpoly = f.shift_rational(alpha)
        shifted = [b + alpha for b in boxes]
        h_beta = publish_interval(log_mahler_measure(minpoly, shifted) / m)
        ha = h_alpha.enclosure(128)
        within_shift = h_beta.hi <= ha.lo + h_gamma.hi + log2.hi and h_beta.lo >= ha.hi - h_gamma.hi - log2.hi
        within_two = 2 * h_beta.lo >= ha.hi and h_beta.hi <= 2 * ha.lo
        rows.append(
            TranslateRow(
                n, alpha, h_alpha, v, minpoly, h_beta, series.tail_interval(n), tuple(series.tail_text(n)),
                v / 2, within_shift, within_two,
            )
        )

    # C and B use the published height enclosures, so a checker can re-derive them exactly
    # C: smallest power of two with U_n <= C exp(-w_n h(beta_n)) on every row
    excess = Fraction(0)
    for r in rows:
        log_u = (-series.tail_log(r.n)).enclosure(128).hi
        excess = max(excess, log_u + r.w * r.h_beta.hi)
    C = Fraction(2) ** math.ceil(excess / log2.lo) if excess > 0 else Fraction(1)

    B_emp: Fraction | None = Fraction(0)
    for r, r_next in zip(rows, rows[1:]):
        B_emp = max(B_emp, ceil_to_grid(r_next.h_beta.hi / (r.w * r.h_beta.lo), GRID))

    wilms = wilms_check(f, prime_budget)
    sep = im_separation_constant(gamma, wilms)
    kappa = gamma_box + series.lambda_enclosure(n_max)
    sep_checks = verify_im_separation(sep, kappa)
    sep = ImSeparation(sep.m, sep.K, sep.height_bound, sep.inner, sep.C, sep.derivation, sep_checks)

    extra = {
        "gamma": {
            "minpoly": f.to_json(),
            "minpoly_text": str(f),
            "index": index,
            "box": publish_box(boxes[index]),
            "conjugates": [publish_box(b) for b in boxes],
            "h_gamma": interval_to_json(h_gamma),
        },
        "galois": gal.to_json(),
        "wilms": wilms.to_json(),
        "im_separation": sep.to_json(),
        "L_number_check": "skipped",
        "lambda_index": n_max,
    }
    return TranslateCertificate("translate", m, series, (n_min, n_max), tuple(rows), C, B_emp, None, extra)


class TranslateCertificate(UmCertificate):
    @property
    def certified(self) -> bool:
        sep_ok = self.extra["im_separation"]["checks"].get("ok", False)
        return all(r.within_shift for r in self.rows) and sep_ok and self.extra["wilms"]["status"] == "certified"
