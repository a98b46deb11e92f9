"""U_m-approximations by m-th roots: ``kappa = Q(lambda)^(1/m)``, ``beta_n = Q(alpha_n)^(1/m)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..curves import GenusReport, verify_degm_hypotheses
from ..exactnum.algebraic import isolate_roots
from ..exactnum.heights import height_of_binomial_root
from ..exactnum.interval import ComplexBox, Interval, complex_nth_root, nth_root, working_precision
from ..exactnum.logexpr import LogExpr
from ..exactnum.rational import ceil_to_grid, floor_to_grid, format_rational, round_down
from ..polyring import BinomialVerdict, IntPoly, binomial_irreducible, squarefree_part
from .codec import GRID, format_exact, interval_to_json, publish_box, publish_lower, publish_upper
from .errors import RefusedError
from .series import DEFAULT_BIT_BUDGET, LNumberCertificate, LiouvilleSeries, certify_L, check_budget

Box = "Interval | ComplexBox"


def divided_difference(Q: IntPoly, x, y):
    """``(Q(x) - Q(y)) / (x - y)`` as a polynomial expression in x and y."""
    total = 0 * x
    for k, c in enumerate(Q.coeffs):
        if k == 0 or c == 0:
            continue
        # x^(k-1) + x^(k-2) y + ... + y^(k-1)
        acc = 0 * x
        for i in range(k):
            acc = acc + x ** (k - 1 - i) * y**i
        total = total + acc * c
    return total


def _box_distance_lower(lam: Interval, box: ComplexBox) -> Fraction:
    dx = max(Fraction(0), box.re.lo - lam.hi, lam.lo - box.re.hi)
    dy = box.im.mig()
    return nth_root(Interval.point(dx * dx + dy * dy), 2, 96).lo


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Disk of radius ``epsilon`` around lambda, free of zeros of Q."""

    epsilon: Fraction
    center: Interval
    derivative_bound: Fraction | None

    def contains_alpha(self, tail: Interval) -> bool | None:
        """Whether alpha_n (at distance ``tail`` below lambda) lies in the open disk."""
        if tail.hi < self.epsilon:
            return True
        if tail.lo >= self.epsilon:
            return False
        return None

    def to_json(self) -> dict:
        return {
            "epsilon": format_exact(self.epsilon),
            "derivative_bound": None if self.derivative_bound is None else format_exact(self.derivative_bound),
        }


def derivative_bound(Q: IntPoly, m: int, center: Interval, epsilon: Fraction, pieces: int = 8) -> Fraction | None:
    """Upper bound for ``|u'| = |Q'| / (m |Q|^((m-1)/m))`` on the epsilon-disk, by subdivision."""
    dQ = Q.derivative()
    lo_re, hi_re = center.lo - epsilon, center.hi + epsilon
    step_re = (hi_re - lo_re) / pieces
    step_im = 2 * epsilon / pieces
    best = Fraction(0)
    with working_precision(128):
        for i in range(pieces):
            for j in range(pieces):
                cell = ComplexBox.from_bounds(
                    lo_re + i * step_re, lo_re + (i + 1) * step_re, -epsilon + j * step_im, -epsilon + (j + 1) * step_im
                )
                c_re, c_im = cell.center
                center = ComplexBox.point(c_re, c_im)
                # centred form Q(c) + Q'(cell)(cell - c) is much tighter than Horner on a box
                centred = Q(center) + dQ(cell) * (cell - center)
                q_low = max(abs(Q(cell)).lo, abs(centred).lo)
                if q_low <= 0:
                    return None
                denom = nth_root(Interval.point(q_low), m).lo ** (m - 1) * m
                best = max(best, abs(dQ(cell)).hi / denom)
    return publish_upper(best)


def neighborhood(Q: IntPoly, m: int, lam: Interval) -> NeighborhoodSpec:
    boxes = isolate_roots(squarefree_part(Q))
    if not boxes:
        raise ValueError("Q has no roots")
    dist = min(_box_distance_lower(lam, b) for b in boxes)
    if dist <= 0:
        raise RefusedError("lambda enclosure meets a root box of Q")
    epsilon = round_down(dist / 2, 64)
    return NeighborhoodSpec(epsilon, lam, derivative_bound(Q, m, lam, epsilon))


# -- one approximant ---------------------------------------------------------------


@dataclass(frozen=True)
class BinomialApproximant:
    """The root of ``X^m - Q(alpha)`` in a fixed branch, with its exact height."""

    alpha: Fraction
    value: Fraction
    verdict: BinomialVerdict
    minpoly: IntPoly
    box: Box
    height: LogExpr


def _real_root(a: Fraction, m: int) -> Interval:
    if a > 0:
        return nth_root(Interval.point(a), m)
    if m % 2 == 0:
        raise RefusedError(f"Q(alpha) = {format_rational(a)} < 0 has no real m-th root for even m; declare a branch")
    return -nth_root(Interval.point(-a), m)


def binomial_approximant(Q: IntPoly, m: int, alpha: Fraction, branch: ComplexBox | None = None) -> BinomialApproximant:
    alpha = Fraction(alpha)
    a = Q.eval_fraction(alpha)
    if a == 0:
        raise RefusedError(f"Q vanishes at alpha = {format_rational(alpha)}")
    verdict = binomial_irreducible(m, a)
    if not verdict.irreducible:
        raise RefusedError(
            f"X^{m} - {format_rational(a)} is reducible ({verdict.reason})",
            {"alpha": format_rational(alpha), "reason": verdict.reason},
        )
    height = height_of_binomial_root(m, a, verdict)
    if branch is None:
        box: Box = _real_root(a, m)
    else:
        box = complex_nth_root(ComplexBox.point(a), m, branch)
    return BinomialApproximant(alpha, a, verdict, IntPoly.binomial(m, a), box, height)


# -- certificate ------------------------------------------------------------------------


@dataclass(frozen=True)
class UmRow:
    n: int
    alpha: Fraction
    h_alpha: LogExpr
    v: Fraction
    approximant: BinomialApproximant
    distance: Interval
    w: Fraction
    w_nominal: Fraction
    in_disk: bool | None
    derivative_distance: Fraction | None
    sandwich_upper: bool
    sandwich_lower: bool

    @property
    def h_beta(self) -> LogExpr:
        return self.approximant.height

    def csv_row(self) -> dict:
        return {
            "n": self.n,
            "h_alpha": self.h_alpha.render_float(),
            "v_n": repr(float(self.v)),
            "h_beta": self.h_beta.render_float(),
            "w_n": repr(float(self.w)),
        }

    def to_json(self) -> dict:
        ap = self.approximant
        return {
            "n": self.n,
            "alpha": format_rational(self.alpha),
            "h_alpha": self.h_alpha.to_json(),
            "v_n": format_rational(self.v),
            "Q_alpha": format_rational(ap.value),
            "binomial_reason": ap.verdict.reason,
            "beta_minpoly": ap.minpoly.to_json(),
            "beta_box": publish_box(ap.box),
            "h_beta": ap.height.to_json(),
            "distance": interval_to_json(self.distance),
            "w_n": format_rational(self.w),
            "w_n_float": repr(float(self.w)),
            "w_nominal": format_rational(self.w_nominal),
            "in_epsilon_disk": self.in_disk,
            "derivative_distance_bound": None
            if self.derivative_distance is None
            else format_exact(self.derivative_distance),
            "sandwich": {"h_beta_le_2N_h_alpha": self.sandwich_upper, "h_alpha_le_2m_h_beta": self.sandwich_lower},
        }


@dataclass(frozen=True)
class UmCertificate:
    construction: str
    m: int
    series: LiouvilleSeries
    n_range: tuple[int, int]
    rows: tuple
    C: Fraction
    B_empirical: Fraction | None
    B_claimed: Fraction | None
    extra: dict

    @property
    def w_increasing(self) -> bool:
        return all(a.w < b.w for a, b in zip(self.rows, self.rows[1:]))

    @property
    def B_ok(self) -> bool:
        if self.B_claimed is None or self.B_empirical is None:
            return True
        return self.B_empirical <= self.B_claimed

    @property
    def certified(self) -> bool:
        rows_ok = all(getattr(r, "sandwich_upper", True) and getattr(r, "sandwich_lower", True) for r in self.rows)
        return rows_ok and self.B_ok and self.B_empirical is not None

    def csv_rows(self) -> list[dict]:
        return [r.csv_row() for r in self.rows]

    def to_json(self) -> dict:
        out = {
            "construction": self.construction,
            "m": self.m,
            "series": self.series.to_json(),
            "range": list(self.n_range),
            "rows": [r.to_json() for r in self.rows],
            "constants": {
                "C": format_rational(self.C),
                "B_empirical": None if self.B_empirical is None else format_rational(self.B_empirical),
                "B_claimed": None if self.B_claimed is None else format_rational(self.B_claimed),
                "B_ok": self.B_ok,
            },
            "w_increasing": self.w_increasing,
            "status": "certified" if self.certified else "refused",
        }
        out.update(self.extra)
        return out


def maximal_grid_exponent(log_distance: LogExpr, height: LogExpr, start: Fraction) -> Fraction:
    """Largest ``w`` on the 2^-32 grid with ``w * height <= log_distance``."""
    step = Fraction(1, GRID)
    w = start
    while (w + step) * height <= log_distance:
        w += step
    while w * height > log_distance:
        w -= step
    return w


def gap_growth(heights: Sequence[LogExpr], ws: Sequence[Fraction]) -> Fraction | None:
    """Smallest grid ``B`` with ``h_{n+1} <= B w_n h_n`` across consecutive rows.

    Rows with ``w_n <= 0`` carry no approximation gain and are left out; None
    means no consecutive pair was usable.
    """
    best: Fraction | None = None
    for h, h_next, w in zip(heights, heights[1:], ws):
        if w <= 0:
            continue
        exact = h_next.ratio(h * w)
        if exact is None:
            exact = ceil_to_grid(h_next.enclosure(256).hi / (h * w).enclosure(256).lo, GRID)
        best = exact if best is None else max(best, exact)
    return best


def _log_of_upper(u: Fraction) -> LogExpr:
    """``-log u`` for a positive rational distance bound."""
    return -LogExpr.of(u)


def construct_um_root(
    series: LiouvilleSeries,
    Q: IntPoly,
    m: int,
    branch: ComplexBox | None = None,
    n_range: tuple[int, int] = (1, 7),
    check_hypotheses: bool = True,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> UmCertificate:
    n_min, n_max = n_range
    if m < 2:
        raise ValueError("m must be at least 2")
    N = Q.degree
    if N < 1:
        raise ValueError("Q must be non-constant")
    report: GenusReport | None = None
    if check_hypotheses:
        report = verify_degm_hypotheses(m, Q)
        if not report.verdict:
            raise RefusedError("genus hypotheses fail for (m, Q)", report.to_json())
    check_budget(series, n_max + 1, bit_budget, "construct_um_root")
    lcert: LNumberCertificate = certify_L(series, n_range, bit_budget)

    lam = series.lambda_enclosure(n_max)
    q_lam = Q(lam)
    if q_lam.contains_zero():
        raise RefusedError("Q(lambda) is not separated from 0")
    if branch is None:
        kappa: Box = _real_root_interval(q_lam, m)
    else:
        kappa = complex_nth_root(ComplexBox.real(q_lam), m, branch)
    hood = neighborhood(Q, m, lam)

    failures = []
    approximants = {}
    for n in range(n_min, n_max + 1):
        try:
            approximants[n] = binomial_approximant(Q, m, series.alpha(n), branch)
        except RefusedError as exc:
            failures.append({"n": n, "reason": exc.reason})
    if failures:
        raise RefusedError("binomial irreducibility fails on some rows", {"rows": failures})

    rows = []
    for lrow in lcert.rows:
        n = lrow.n
        ap = approximants[n]
        tail = series.tail_interval(n)
        dq = divided_difference(Q, lam, Interval.point(lrow.alpha))
        beta = ap.box
        s = 0 * kappa
        for j in range(m):
            s = s + kappa**j * beta ** (m - 1 - j)
        s_abs = abs(s)
        dq_abs = abs(dq)
        if s_abs.lo <= 0:
            raise RefusedError(f"row {n}: kappa and beta_n are not separated from another branch")
        upper = publish_upper(tail.hi * dq_abs.hi / s_abs.lo)
        lower = publish_lower(tail.lo * dq_abs.lo / s_abs.hi) if dq_abs.lo > 0 else Fraction(0)
        log_u = _log_of_upper(upper)
        guess = floor_to_grid(log_u.enclosure(128).lo / ap.height.enclosure(128).hi, GRID)
        w = maximal_grid_exponent(log_u, ap.height, guess)
        in_disk = hood.contains_alpha(tail)
        deriv = None
        if in_disk and hood.derivative_bound is not None:
            deriv = publish_upper(hood.derivative_bound * tail.hi)
        rows.append(
            UmRow(
                n,
                lrow.alpha,
                lrow.h_alpha,
                lrow.v,
                ap,
                Interval(lower, upper),
                w,
                lrow.v / (2 * N),
                in_disk,
                deriv,
                ap.height <= lrow.h_alpha * (2 * N),
                lrow.h_alpha <= ap.height * (2 * m),
            )
        )
    B_emp = gap_growth([r.h_beta for r in rows], [r.w for r in rows])
    B_claimed = 8 * N * N * m * lcert.A
    extra = {
        "Q": Q.to_json(),
        "Q_text": str(Q),
        "N": N,
        "branch": {"kind": "real"} if branch is None else {"kind": "box", "box": branch.to_json()},
        "hypotheses": report.to_json() if report else {"bypassed": True},
        "lambda_index": n_max,
        "neighborhood": hood.to_json(),
        "A": format_rational(lcert.A),
        "alpha_outside_disk": [r.n for r in rows if r.in_disk is not True],
        "rows_without_gain": [r.n for r in rows if r.w <= 0],
    }
    return UmCertificate("root", m, series, (n_min, n_max), tuple(rows), Fraction(1), B_emp, B_claimed, extra)


def _real_root_interval(x: Interval, m: int) -> Interval:
    if x.lo > 0:
        return nth_root(x, m)
    if m % 2 == 0:
        raise RefusedError("Q(lambda) < 0: even m needs a declared complex branch")
    return -nth_root(-x, m)
