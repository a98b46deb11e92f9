"""Independent certificate checker.

Every derived field of a certificate is recomputed here from the stored exact
inputs, by the rule documented in docs/schema.md, and compared exactly.  The
checker shares the exact-arithmetic base layer (``exactnum``, ``polyring``)
and the text codec with the constructions, but none of their code paths:
series sums, distance identities, grid maximisation, Galois pattern counting,
genus formulas and the exclusion scan are all re-implemented below.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import gmpy2
import mpmath
from mpmath.libmp import from_rational, to_rational

from .. import SCHEMA_VERSION
from ..exactnum.algebraic import AlgebraicNumber, isolate_roots, log_mahler_measure, refine_isolator
from ..exactnum.interval import ComplexBox, Interval, complex_nth_root, nth_root, working_precision
from ..exactnum.logexpr import LOG2, LogExpr
from ..exactnum.rational import exact_root, format_rational, int_from_decimal, parse_rational, round_down, round_up
from ..polyring import IntPoly, difference_polynomial, discriminant, gcd, squarefree_decomposition
from .codec import document_hash, format_exact, parse_exact

KINDS = ("L-number", "um-root", "um-translate", "galois", "wilms", "genus", "hypotheses", "binomial", "gap-scan")

_GRID = 1 << 32
_PUB_BITS = 64
_PUB_SLACK = Fraction(1, 1 << 96)


@dataclass
class VerifyReport:
    kind: str
    checks: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failure_names(self) -> list[str]:
        return [name for name, _ in self.failures]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "checks": self.checks,
            "failures": [{"check": n, "detail": d} for n, d in self.failures],
        }


class _Ctx:
    def __init__(self, report: VerifyReport) -> None:
        self.report = report

    def expect(self, name: str, cond: bool, detail: str = "") -> bool:
        self.report.checks += 1
        if not cond:
            self.report.failures.append((name, detail))
        return bool(cond)

    def equal(self, name: str, stored, expected) -> bool:
        ok = stored == expected
        return self.expect(name, ok, "" if ok else f"stored {_show(stored)}, expected {_show(expected)}")


def _show(x) -> str:
    """Short text for failure details; exact values can have thousands of digits."""
    if isinstance(x, Fraction):
        text = format_exact(x)
    elif isinstance(x, (list, tuple)):
        text = "[" + ", ".join(_show(v) for v in x) + "]"
    elif isinstance(x, dict):
        text = "{" + ", ".join(f"{k}: {_show(v)}" for k, v in x.items()) + "}"
    elif isinstance(x, IntPoly):
        text = str(x)
    elif isinstance(x, int) and x.bit_length() > 256:
        text = f"<{x.bit_length()}-bit integer>"
    else:
        text = repr(x)
    return text if len(text) <= 160 else text[:150] + "..."


# -- publication and rounding rules ---------------------------------------------------------


def _pub_up(x: Fraction) -> Fraction:
    return round_up(x + abs(x) * _PUB_SLACK, _PUB_BITS)


def _pub_down(x: Fraction) -> Fraction:
    return round_down(x - abs(x) * _PUB_SLACK, _PUB_BITS)


def _pub_interval(box: Interval) -> list[Fraction]:
    return [_pub_down(box.lo), _pub_up(box.hi)]


def _pub_box(box) -> dict[str, list[Fraction]]:
    re, im = (box, Interval.point(0)) if isinstance(box, Interval) else (box.re, box.im)
    out = {}
    for key, part in (("re", re), ("im", im)):
        out[key] = [part.lo, part.hi] if part.is_point() and part.lo == 0 else _pub_interval(part)
    return out


def _read_interval(data) -> list[Fraction]:
    return [parse_exact(data[0]), parse_exact(data[1])]


def _read_box(data: dict) -> dict[str, list[Fraction]]:
    return {"re": _read_interval(data["re"]), "im": _read_interval(data["im"])}


def _float_text(x: Fraction) -> str:
    return repr(float(x))


def _on_grid(x: Fraction) -> bool:
    return (x * _GRID).denominator == 1


def _ceil_grid(x: Fraction) -> Fraction:
    return Fraction(math.ceil(x * _GRID), _GRID)


def _log_check(ctx: _Ctx, name: str, data: dict, expected: LogExpr) -> None:
    stored = LogExpr.from_json(data)
    if ctx.equal(name, stored, expected):
        ctx.equal(f"{name} float rendering", data.get("float"), expected.render_float())


# -- series rules -------------------------------------------------------------------------


class _Series:
    def __init__(self, data: dict) -> None:
        self.base = int(data["base"])
        self.kind = data["exponents"]
        self.values = [int(v) for v in data.get("values", [])]
        if self.base < 2 or self.kind not in ("factorial", "list"):
            raise ValueError("bad series description")

    def e(self, n: int) -> int:
        if self.kind == "factorial":
            return math.factorial(n)
        return self.values[n - 1]

    def alpha(self, n: int) -> Fraction:
        top = self.e(n)
        return Fraction(sum(self.base ** (top - self.e(j)) for j in range(1, n + 1)), self.base**top)

    def h_alpha(self, n: int) -> LogExpr:
        den = self.alpha(n).denominator
        if den == self.base ** self.e(n):
            return LogExpr.of(self.base, self.e(n))
        return LogExpr.of(den)

    def tail(self, n: int) -> tuple[Fraction, Fraction]:
        low = Fraction(1, self.base ** self.e(n + 1))
        return low, low * Fraction(self.base, self.base - 1)

    def tail_text(self, n: int) -> list[str]:
        e = self.e(n + 1)
        return [f"1*{self.base}^{-e}", f"{format_rational(Fraction(self.base, self.base - 1))}*{self.base}^{-e}"]

    def neg_log_tail(self, n: int) -> LogExpr:
        return LogExpr.of(self.base, self.e(n + 1)) - LogExpr.of(Fraction(self.base, self.base - 1))

    def lam(self, n: int) -> Interval:
        lo, hi = self.tail(n)
        a = self.alpha(n)
        return Interval(a + lo, a + hi)


def _grid_rule(ctx: _Ctx, label: str, value: Fraction, h: LogExpr, target: LogExpr, exact_allowed: bool) -> None:
    """``value * h <= target`` and no larger grid point (or exact equality) satisfies it."""
    exact = target.ratio(h) if exact_allowed else None
    if exact is not None:
        ctx.equal(f"{label} exact value", value, exact)
        return
    ctx.expect(f"{label} on the 2^-32 grid", _on_grid(value), _show(value))
    ctx.expect(f"{label} inequality {label}*h <= -log bound", h * value <= target)
    ctx.expect(f"{label} maximality on the grid", h * (value + Fraction(1, _GRID)) > target)


def _ratio_rule(h_next: LogExpr, factor: Fraction, h: LogExpr) -> Fraction:
    exact = h_next.ratio(h * factor)
    if exact is not None:
        return exact
    return _ceil_grid(h_next.enclosure(256).hi / (h * factor).enclosure(256).lo)


# -- L-number --------------------------------------------------------------------------------


def _check_L_rows(ctx: _Ctx, series: _Series, rows: list[dict], n_min: int, n_max: int) -> Fraction:
    ctx.equal("row indices cover the range", [r["n"] for r in rows], list(range(n_min, n_max + 1)))
    A = Fraction(0)
    for r in rows:
        n = r["n"]
        tag = f"[n={n}]"
        ctx.equal(f"e_n {tag}", r["e_n"], series.e(n))
        ctx.equal(f"e_(n+1) {tag}", r["e_next"], series.e(n + 1))
        ctx.equal(f"alpha_n partial sum {tag}", parse_rational(r["alpha"]), series.alpha(n))
        h = series.h_alpha(n)
        _log_check(ctx, f"h(alpha_n) {tag}", r["h_alpha"], h)
        ctx.equal(f"tail bound {tag}", r["tail"], series.tail_text(n))
        v = parse_rational(r["v_n"])
        _grid_rule(ctx, f"v_n {tag}", v, h, series.neg_log_tail(n), True)
        ctx.equal(f"v_n exactness flag {tag}", r["v_exact"], series.neg_log_tail(n).ratio(h) is not None)
        ctx.equal(f"v_n float rendering {tag}", r["v_n_float"], _float_text(v))
        h_next = series.h_alpha(n + 1)
        _log_check(ctx, f"h(alpha_(n+1)) {tag}", r["h_alpha_next"], h_next)
        ratio = parse_rational(r["ratio"])
        if ctx.expect(f"v_n positive {tag}", v > 0):
            ctx.equal(f"sparseness ratio h(alpha_(n+1)) <= A v_n h(alpha_n) {tag}", ratio, _ratio_rule(h_next, v, h))
        A = max(A, ratio)
    return A


def check_L(ctx: _Ctx, p: dict) -> None:
    series = _Series(p["series"])
    n_min, n_max = p["range"]
    ctx.expect("bit budget covers e_(n_max+1)", series.e(n_max + 1) * series.base.bit_length() <= p["bit_budget"])
    A = _check_L_rows(ctx, series, p["rows"], n_min, n_max)
    ctx.equal("A is the largest row ratio", parse_rational(p["A"]), A)
    ctx.equal("A float rendering", p["A_float"], _float_text(A))
    vs = [parse_rational(r["v_n"]) for r in p["rows"]]
    inc = all(a < b for a, b in zip(vs, vs[1:]))
    ctx.equal("v_n increasing flag", p["v_increasing"], inc)
    ctx.equal("status", p["status"], "certified" if inc else "refused")


# -- um-root ----------------------------------------------------------------------------------


def _binomial_reducible(m: int, a: Fraction) -> str | None:
    for q in _prime_factors(m):
        if exact_root(a, q) is not None:
            return f"p-th power for p = {q}"
    if m % 4 == 0 and -a / 4 > 0 and exact_root(-a / 4, 4) is not None:
        return "a in -4Q^4"
    return None


def _prime_factors(m: int) -> list[int]:
    return [q for q in range(2, m + 1) if m % q == 0 and gmpy2.is_prime(q)]


def _binomial_minpoly(m: int, a: Fraction) -> IntPoly:
    coeffs = [0] * (m + 1)
    coeffs[0], coeffs[m] = -a.numerator, a.denominator
    return IntPoly(tuple(coeffs))


def _kappa(Q: IntPoly, lam: Interval, m: int, branch: ComplexBox | None):
    value = Q(lam)
    if branch is not None:
        return complex_nth_root(ComplexBox.real(value), m, branch)
    if value.lo > 0:
        return nth_root(value, m)
    if m % 2 and value.hi < 0:
        return -nth_root(-value, m)
    raise ValueError("Q(lambda) has no real m-th root of the declared kind")


def _beta_box(a: Fraction, m: int, branch: ComplexBox | None):
    if branch is not None:
        return complex_nth_root(ComplexBox.point(a), m, branch)
    if a > 0:
        return nth_root(Interval.point(a), m)
    return -nth_root(Interval.point(-a), m)


def _branch_of(p: dict) -> ComplexBox | None:
    spec = p["branch"]
    if spec["kind"] == "real":
        return None
    box = spec["box"]
    return ComplexBox(Interval(*map(parse_rational, box["re"])), Interval(*map(parse_rational, box["im"])))


def _genus(n: int, Q: IntPoly) -> int | None:
    profile = squarefree_decomposition(Q)
    g = n
    for _, mult in profile.factors:
        g = math.gcd(g, mult)
    if g != 1:
        return None
    twice = -2 * n + 2 + sum(f.degree * (n - math.gcd(n, k)) for f, k in profile.factors)
    twice += n - math.gcd(n, Q.degree)
    return twice // 2


def _branch_points(n: int, Q: IntPoly) -> int:
    profile = squarefree_decomposition(Q)
    return sum(f.degree for f, k in profile.factors if k % n) + (1 if Q.degree % n else 0)


def check_hypotheses(ctx: _Ctx, p: dict) -> None:
    m = p["m"]
    Q = IntPoly.from_json(p["Q"])
    primes = _prime_factors(m)
    ctx.equal("prime divisors of m", [e["q"] for e in p["per_prime"]], primes)
    verdict = True
    for e in p["per_prime"]:
        g = _genus(e["q"], Q)
        ctx.equal(f"genus of Y^{e['q']} = Q", e["genus"], g)
        if g is not None:
            ctx.equal(f"branch points of Y^{e['q']} = Q", e["branch_points"], _branch_points(e["q"], Q))
        verdict = verdict and g is not None and g >= 2
    if m % 4 == 0:
        e = p["quartic"]
        g = _genus(4, Q)
        ctx.expect("quartic curve present", e is not None)
        if e is not None:
            ctx.equal("genus of Y^4 = -Q/4", e["genus"], g)
        verdict = verdict and g is not None and g >= 2
    else:
        ctx.equal("no quartic curve when 4 does not divide m", p["quartic"], None)
    ctx.equal("hypothesis verdict", p["verdict"], verdict)
    ctx.equal("smallest prime of m", p["smallest_prime"], primes[0])
    k_req = {2: 5, 3: 4}.get(primes[0], 2)
    ctx.equal("k required by the smallest prime", p["k_required"], k_req)
    simple = sum(f.degree for f, k in squarefree_decomposition(Q).factors if k == 1)
    ctx.equal("simple zeros of Q", p["k_found"], simple)
    ctx.equal("k met flag", p["k_met"], simple >= k_req)


def _lambda_to_root_distance(lam: Interval, box: ComplexBox) -> Fraction:
    dx = max(Fraction(0), box.re.lo - lam.hi, lam.lo - box.re.hi)
    dy = min(abs(box.im.lo), abs(box.im.hi)) if not box.im.contains_zero() else Fraction(0)
    return nth_root(Interval.point(dx * dx + dy * dy), 2, 96).lo


def _divided_difference(Q: IntPoly, x, y):
    # sum_k c_k (x^k - y^k)/(x - y), evaluated as a polynomial in x and y
    total = 0 * x
    for k in range(1, len(Q.coeffs)):
        if Q.coeffs[k]:
            total = total + sum((x ** (k - 1 - i) * y**i for i in range(k)), 0 * x) * Q.coeffs[k]
    return total


def check_um_root(ctx: _Ctx, p: dict) -> None:
    ctx.equal("construction tag", p["construction"], "root")
    series = _Series(p["series"])
    m = p["m"]
    Q = IntPoly.from_json(p["Q"])
    N = Q.degree
    ctx.equal("Q text", p["Q_text"], str(Q))
    ctx.equal("N = deg Q", p["N"], N)
    branch = _branch_of(p)
    n_min, n_max = p["range"]
    ctx.equal("lambda index", p["lambda_index"], n_max)
    if "bypassed" not in p["hypotheses"]:
        check_hypotheses(ctx, p["hypotheses"])
        ctx.expect("genus hypotheses hold", p["hypotheses"]["verdict"] is True)

    rows = p["rows"]
    ctx.equal("row indices cover the range", [r["n"] for r in rows], list(range(n_min, n_max + 1)))
    lam = series.lam(n_max)

    # the zero-free disk around lambda
    eps = parse_exact(p["neighborhood"]["epsilon"])
    roots = isolate_roots(_squarefree_part(Q))
    dist = min(_lambda_to_root_distance(lam, b) for b in roots)
    ctx.equal("epsilon = half the distance from lambda to the zeros of Q", eps, round_down(dist / 2, 64))
    M_text = p["neighborhood"]["derivative_bound"]
    M = None if M_text is None else parse_exact(M_text)

    kappa = _kappa(Q, lam, m, branch)
    A = Fraction(0)
    ws, hbs = [], []
    for r in rows:
        n = r["n"]
        tag = f"[n={n}]"
        alpha = series.alpha(n)
        ctx.equal(f"alpha_n partial sum {tag}", parse_rational(r["alpha"]), alpha)
        h_a = series.h_alpha(n)
        _log_check(ctx, f"h(alpha_n) {tag}", r["h_alpha"], h_a)
        v = parse_rational(r["v_n"])
        _grid_rule(ctx, f"v_n {tag}", v, h_a, series.neg_log_tail(n), True)
        if v > 0:
            A = max(A, _ratio_rule(series.h_alpha(n + 1), v, h_a))
        a = Q.eval_fraction(alpha)
        ctx.equal(f"Q(alpha_n) {tag}", parse_rational(r["Q_alpha"]), a)
        if not ctx.expect(f"Q(alpha_n) non-zero {tag}", a != 0):
            continue
        ctx.expect(f"binomial X^m - Q(alpha_n) irreducible {tag}", _binomial_reducible(m, a) is None)
        ctx.equal(f"beta_n minimal polynomial {tag}", IntPoly.from_json(r["beta_minpoly"]), _binomial_minpoly(m, a))
        h_b = LogExpr.of(max(abs(a.numerator), a.denominator)) / m
        _log_check(ctx, f"h(beta_n) = h(Q(alpha_n))/m {tag}", r["h_beta"], h_b)
        beta = _beta_box(a, m, branch)
        ctx.equal(f"beta_n enclosure {tag}", _read_box(r["beta_box"]), _pub_box(beta))

        # kappa - beta_n = (lambda - alpha_n) DQ(lambda, alpha_n) / sum kappa^j beta^(m-1-j)
        t_lo, t_hi = series.tail(n)
        dq = abs(_divided_difference(Q, lam, Interval.point(alpha)))
        s = 0 * kappa
        for j in range(m):
            s = s + kappa**j * beta ** (m - 1 - j)
        s_abs = abs(s)
        upper = _pub_up(t_hi * dq.hi / s_abs.lo)
        lower = _pub_down(t_lo * dq.lo / s_abs.hi) if dq.lo > 0 else Fraction(0)
        dist_stored = _read_interval(r["distance"])
        ctx.equal(f"distance enclosure |kappa - beta_n| {tag}", dist_stored, [lower, upper])
        w = parse_rational(r["w_n"])
        U = dist_stored[1]
        if ctx.expect(f"distance upper bound positive {tag}", U > 0):
            _grid_rule(ctx, f"w_n {tag}", w, h_b, -LogExpr.of(U), False)
        ctx.equal(f"w_n float rendering {tag}", r["w_n_float"], _float_text(w))
        ctx.equal(f"w_nominal = v_n/2N {tag}", parse_rational(r["w_nominal"]), v / (2 * N))
        in_disk = True if t_hi < eps else (False if t_lo >= eps else None)
        ctx.equal(f"alpha_n in the epsilon-disk {tag}", r["in_epsilon_disk"], in_disk)
        deriv = r["derivative_distance_bound"]
        expected_deriv = _pub_up(M * t_hi) if (in_disk and M is not None) else None
        ctx.equal(f"derivative distance bound {tag}", None if deriv is None else parse_exact(deriv), expected_deriv)
        sw = r["sandwich"]
        ctx.equal(f"sandwich h(beta_n) <= 2N h(alpha_n) {tag}", sw["h_beta_le_2N_h_alpha"], h_b <= h_a * (2 * N))
        ctx.equal(f"sandwich h(alpha_n) <= 2m h(beta_n) {tag}", sw["h_alpha_le_2m_h_beta"], h_a <= h_b * (2 * m))
        ws.append(w)
        hbs.append(h_b)

    B = None
    for h, h_next, w in zip(hbs, hbs[1:], ws):
        if w > 0:
            ratio = _ratio_rule(h_next, w, h)
            B = ratio if B is None else max(B, ratio)
    const = p["constants"]
    ctx.equal("C = 1 (distance bound used directly)", parse_rational(const["C"]), Fraction(1))
    stored_B = None if const["B_empirical"] is None else parse_rational(const["B_empirical"])
    ctx.equal("B_empirical: h(beta_(n+1)) <= B w_n h(beta_n)", stored_B, B)
    ctx.equal("A (sparseness of the series)", parse_rational(p["A"]), A)
    B_claimed = 8 * N * N * m * A
    ctx.equal("B_claimed = 8 N^2 m A", parse_rational(const["B_claimed"]), B_claimed)
    B_ok = B is not None and B <= B_claimed
    ctx.equal("B_empirical <= 8 N^2 m A flag", const["B_ok"], B is None or B <= B_claimed)
    ctx.equal("alpha outside the epsilon-disk", p["alpha_outside_disk"],
              [r["n"] for r in rows if r["in_epsilon_disk"] is not True])
    ctx.equal("rows without approximation gain", p["rows_without_gain"], [r["n"] for r, w in zip(rows, ws) if w <= 0])
    inc = all(a < b for a, b in zip(ws, ws[1:]))
    ctx.equal("w_n increasing flag", p["w_increasing"], inc)
    sandwich = all(r["sandwich"]["h_beta_le_2N_h_alpha"] and r["sandwich"]["h_alpha_le_2m_h_beta"] for r in rows)
    ctx.equal("status", p["status"], "certified" if (sandwich and B_ok) else "refused")


def _squarefree_part(Q: IntPoly) -> IntPoly:
    out = IntPoly((1,))
    for f, _ in squarefree_decomposition(Q).factors:
        out = out * f
    return out.primitive()


# -- Galois ------------------------------------------------------------------------------


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _pgcd_degree(a: list[int], b: list[int], p: int) -> int:
    while b:
        a, b = b, _pmod(a, b, p)
    return len(a) - 1


def _frobenius_pattern(f: IntPoly, p: int) -> tuple[int, ...]:
    """Cycle type from ``deg gcd(f, X^(p^d) - X) = sum_{e | d} e N_e``."""
    fp = [c % p for c in f.coeffs]
    m = f.degree
    counts: dict[int, int] = {}
    power = [0, 1]  # X
    for d in range(1, m + 1):
        # X^(p^d) = (X^(p^(d-1)))^p mod f
        base, e, acc = power, p, [1]
        while e:
            if e & 1:
                acc = _pmod(_pmul(acc, base, p), fp, p)
            base = _pmod(_pmul(base, base, p), fp, p)
            e >>= 1
        power = acc
        diff = power + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        g = m if not diff else _pgcd_degree(fp, diff, p)
        n_d = (g - sum(e * counts.get(e, 0) for e in range(1, d) if d % e == 0)) // d
        if n_d:
            counts[d] = n_d
    return tuple(sorted((d for d, c in counts.items() for _ in range(c)), reverse=True))


def _roles(pattern: tuple[int, ...], m: int) -> set[str]:
    roles = set()
    if pattern == (m,):
        roles.add("m_cycle")
    if pattern == (m - 1, 1):
        roles.add("m_minus_1_cycle")
    if pattern.count(2) == 1 and all(k % 2 for k in pattern if k != 2):
        roles.add("transposition")
    for ell in set(pattern):
        if ell <= m - 3 and gmpy2.is_prime(ell) and pattern.count(ell) == 1:
            if all(k % ell for k in pattern if k != ell):
                roles.add("prime_cycle")
    return roles


def check_galois(ctx: _Ctx, p: dict) -> None:
    f = IntPoly.from_json(p["poly"])
    m = f.degree
    disc = discriminant(f)
    ctx.equal("discriminant", int_from_decimal(p["disc"]), disc)
    ctx.equal("discriminant square flag", p["disc_square"], disc >= 0 and math.isqrt(disc) ** 2 == disc)
    budget = p["prime_budget"]
    first: dict[str, tuple[int, tuple[int, ...]]] = {}
    seen: list[tuple[int, ...]] = []
    scanned = 0
    q = 2
    stop = {"m_cycle", "m_minus_1_cycle", "transposition"}
    while q < budget:
        if f.lc % q and disc % q:
            pattern = _frobenius_pattern(f, q)
            scanned += 1
            if pattern not in seen:
                seen.append(pattern)
            for role in _roles(pattern, m):
                first.setdefault(role, (q, pattern))
            if stop <= first.keys():
                break
        q = int(gmpy2.next_prime(q))
    ctx.equal("primes scanned", p["primes_scanned"], scanned)
    ctx.equal("patterns seen in order", [tuple(x) for x in p["patterns_seen"]], seen)
    primitive = "m_cycle" in first and (bool(gmpy2.is_prime(m)) or "m_minus_1_cycle" in first)
    if primitive and "transposition" in first:
        verdict, roles = "S_m", ("m_cycle", "m_minus_1_cycle", "transposition")
    elif primitive and "prime_cycle" in first:
        verdict, roles = "contains_A_m", ("m_cycle", "m_minus_1_cycle", "prime_cycle")
    else:
        verdict, roles = "inconclusive", ("m_cycle", "m_minus_1_cycle", "transposition", "prime_cycle")
    ctx.equal("Galois verdict", p["verdict"], verdict)
    expected = [{"p": first[r][0], "pattern": list(first[r][1]), "role": r} for r in roles if r in first]
    ctx.equal("Frobenius witnesses", p["witnesses"], expected)


# -- Wilms ----------------------------------------------------------------------------------


def _numeric_gap(f: IntPoly) -> mpmath.mpf:
    ctx = mpmath.MPContext()
    ctx.dps = 50
    roots = ctx.polyroots(list(reversed(f.coeffs)), maxsteps=500, extraprec=200)
    diffs = [a - b for a, b in itertools.permutations(roots, 2)]
    return min(abs(a - b) for a, b in itertools.combinations(diffs, 2))


def check_wilms(ctx: _Ctx, p: dict) -> bool:
    f = IntPoly.from_json(p["poly"])
    ctx.equal("polynomial text", p["poly_text"], str(f))
    D = difference_polynomial(f)
    ctx.equal("difference polynomial D", IntPoly.from_json(p["D"]), D)
    sq = gcd(D, D.derivative()).degree == 0
    ctx.equal("D squarefree", p["D_squarefree"], sq)
    check_galois(ctx, p["galois"])
    reasons = []
    if not sq:
        reasons.append("D not squarefree")
    if p["galois"]["verdict"] != "S_m":
        reasons.append(f"Galois group not certified S_m (verdict {p['galois']['verdict']})")
    gap = None
    if not reasons:
        value = _numeric_gap(f)
        gap = mpmath.nstr(value, 12)
        if value <= mpmath.mpf(10) ** -30:
            reasons.append("numeric root differences are not separated")
    ctx.equal("numeric difference gap at 50 digits", p["numeric_min_gap"], gap)
    ctx.equal("refusal reasons", p["reasons"], reasons)
    certified = not reasons
    ctx.equal("status", p["status"], "certified" if certified else "refused")
    ctx.equal("degree claim m(m-1)", p["degree_claim"], f.degree * (f.degree - 1) if certified else None)
    return certified


# -- translate -------------------------------------------------------------------------------


def _shift(f: IntPoly, alpha: Fraction) -> IntPoly:
    """Primitive integer polynomial whose roots are those of f shifted by ``alpha``."""
    # g(X) = f(X - alpha), expanded with exact binomials
    m = f.degree
    out = [Fraction(0)] * (m + 1)
    for k, c in enumerate(f.coeffs):
        for i in range(k + 1):
            out[i] += c * math.comb(k, i) * (-alpha) ** (k - i)
    den = math.lcm(*(x.denominator for x in out))
    ints = [int(x * den) for x in out]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return IntPoly(tuple(x // g for x in ints))


def _tight_conjugates(f: IntPoly) -> list[ComplexBox]:
    return [refine_isolator(AlgebraicNumber(f, b), Fraction(1, 1 << 160)).isolator for b in isolate_roots(f)]


def check_um_translate(ctx: _Ctx, p: dict) -> None:
    ctx.equal("construction tag", p["construction"], "translate")
    series = _Series(p["series"])
    g = p["gamma"]
    f = IntPoly.from_json(g["minpoly"])
    m = f.degree
    ctx.equal("m = deg gamma", p["m"], m)
    ctx.equal("gamma minimal polynomial text", g["minpoly_text"], str(f))
    check_galois(ctx, p["galois"])
    ctx.expect("Galois group certified S_m", p["galois"]["verdict"] == "S_m")
    wilms_ok = check_wilms(ctx, p["wilms"])
    boxes = _tight_conjugates(f)
    ctx.equal("gamma conjugate enclosures", [_read_box(b) for b in g["conjugates"]], [_pub_box(b) for b in boxes])
    idx = g["index"]
    ctx.expect("gamma index names a conjugate", isinstance(idx, int) and 0 <= idx < len(boxes))
    gamma_box = boxes[idx]
    ctx.equal("gamma enclosure is conjugate number index", _read_box(g["box"]), _pub_box(gamma_box))
    ctx.expect("gamma is certified non-real", not gamma_box.im.contains_zero())
    with working_precision(4096):
        h_gamma = _pub_interval(log_mahler_measure(f, boxes) / m)
    ctx.equal("h(gamma) enclosure", _read_interval(g["h_gamma"]), h_gamma)
    n_min, n_max = p["range"]
    ctx.equal("lambda index", p["lambda_index"], n_max)
    rows = p["rows"]
    ctx.equal("row indices cover the range", [r["n"] for r in rows], list(range(n_min, n_max + 1)))
    log2 = LOG2.enclosure(128)
    hb_list, w_list, flags = [], [], []
    for r in rows:
        n = r["n"]
        tag = f"[n={n}]"
        alpha = series.alpha(n)
        ctx.equal(f"alpha_n partial sum {tag}", parse_rational(r["alpha"]), alpha)
        h_a = series.h_alpha(n)
        _log_check(ctx, f"h(alpha_n) {tag}", r["h_alpha"], h_a)
        v = parse_rational(r["v_n"])
        _grid_rule(ctx, f"v_n {tag}", v, h_a, series.neg_log_tail(n), True)
        mp = _shift(f, alpha)
        ctx.equal(f"beta_n = gamma + alpha_n minimal polynomial {tag}", IntPoly.from_json(r["beta_minpoly"]), mp)
        shifted = [b + alpha for b in boxes]
        hb = _pub_interval(log_mahler_measure(mp, shifted) / m)
        stored = _read_interval(r["h_beta"])
        ctx.equal(f"h(beta_n) enclosure {tag}", stored, hb)
        ctx.equal(f"h(beta_n) float rendering {tag}", r["h_beta_float"], _float_text(stored[0]))
        ctx.equal(f"distance |kappa - beta_n| equals the series tail {tag}", r["distance"], series.tail_text(n))
        w = parse_rational(r["w_n"])
        ctx.equal(f"w_n = v_n/2 {tag}", w, v / 2)
        ctx.equal(f"w_n float rendering {tag}", r["w_n_float"], _float_text(w))
        ha = h_a.enclosure(128)
        shift_ok = stored[1] <= ha.lo + h_gamma[1] + log2.hi and stored[0] >= ha.hi - h_gamma[1] - log2.hi
        ctx.equal(f"|h(beta_n) - h(alpha_n)| <= h(gamma) + log 2 {tag}", r["within_shift"], shift_ok)
        ctx.equal(f"h(alpha_n)/2 <= h(beta_n) <= 2 h(alpha_n) {tag}", r["within_factor_two"],
                  2 * stored[0] >= ha.hi and stored[1] <= 2 * ha.lo)
        hb_list.append(stored)
        w_list.append(w)
        flags.append(shift_ok)

    # U_n <= C exp(-w_n h(beta_n)) with C the smallest admissible power of two
    C = parse_rational(p["constants"]["C"])
    ctx.expect("C is a power of two >= 1", C >= 1 and C.denominator == 1 and C.numerator & (C.numerator - 1) == 0)
    excess = [(-series.neg_log_tail(r["n"])).enclosure(256) + w * hb[1] for r, w, hb in zip(rows, w_list, hb_list)]
    logC = LogExpr.of(C).enclosure(256)
    ctx.expect("U_n <= C exp(-w_n h(beta_n)) on every row", all(e.hi <= logC.lo for e in excess))
    if C > 1:
        half = LogExpr.of(C / 2).enclosure(256)
        ctx.expect("C is the smallest power of two", any(e.lo > half.hi for e in excess))
    B = Fraction(0)
    for hb, hb_next, w in zip(hb_list, hb_list[1:], w_list):
        B = max(B, _ceil_grid(hb_next[1] / (w * hb[0])))
    ctx.equal("B_empirical: h(beta_(n+1)) <= B w_n h(beta_n)", parse_rational(p["constants"]["B_empirical"]), B)
    ctx.equal("B_claimed absent", p["constants"]["B_claimed"], None)
    ctx.equal("w_n increasing flag", p["w_increasing"], all(a < b for a, b in zip(w_list, w_list[1:])))

    sep_ok = _check_im_separation(ctx, p["im_separation"], f, gamma_box + series.lam(n_max))
    certified = all(flags) and sep_ok and wilms_ok
    ctx.equal("status", p["status"], "certified" if certified else "refused")


def _small_irreducibles(max_degree: int, bound: int):
    rng = range(-bound, bound + 1)
    for d in range(1, max_degree + 1):
        for lead in range(1, bound + 1):
            for rest in itertools.product(rng, repeat=d):
                f = IntPoly(tuple(reversed(rest)) + (lead,))
                if f.coeffs[0] == 0 and d > 1:
                    continue
                if math.gcd(*f.coeffs) != 1:
                    continue
                if d > 1 and _rational_root(f):
                    continue
                yield f


def _rational_root(f: IntPoly) -> bool:
    a0, an = abs(f.coeffs[0]), f.coeffs[-1]
    if a0 == 0:
        return True
    for num in (k for k in range(1, a0 + 1) if a0 % k == 0):
        for den in (k for k in range(1, an + 1) if an % k == 0):
            if f.eval_fraction(Fraction(num, den)) == 0 or f.eval_fraction(Fraction(-num, den)) == 0:
                return True
    return False


def _check_im_separation(ctx: _Ctx, s: dict, f: IntPoly, kappa: ComplexBox) -> bool:
    m = f.degree
    K = m**3 * (m - 1)
    ctx.equal("separation degree m = deg gamma", s["m"], m)
    ctx.equal("K = m^3 (m-1)", s["K"], K)
    hb = LogExpr.of(sum(c * c for c in f.coeffs)) / (2 * m)
    _log_check(ctx, "h(gamma) <= log(sum a_i^2)/(2m)", s["h_gamma_bound"], hb)
    inner = hb * 2 + LOG2 * 5
    _log_check(ctx, "inner = 2 h(gamma) + 5 log 2", s["inner"], inner)
    big = inner.enclosure(256).lo > 2
    if "rational" in s["C"]:
        C_val = parse_rational(s["C"]["rational"])
        ctx.expect("C = 2K when inner <= 2", not big and C_val == 2 * K)
        C_enc = Interval.point(C_val)
    else:
        C_expr = LogExpr.from_json(s["C"])
        ctx.expect("C = K * inner when inner > 2", big and C_expr == inner * K)
        ctx.equal("C float rendering", s["C"].get("float"), C_expr.render_float())
        C_enc = C_expr.enclosure(128)
    checks = s["checks"]
    bound = checks.get("coeff_bound", 2)
    max_degree = checks.get("max_degree", min(m - 1, 3))
    count = 0
    worst = None
    ok = True
    with working_precision(128):
        for g in _small_irreducibles(max_degree, bound):
            boxes = isolate_roots(g)
            h = log_mahler_measure(g, boxes) / g.degree
            for b in boxes:
                d2 = (kappa - b).abs_sq()
                if d2.lo <= 0:
                    ok = False
                    break
                slack = _lo(mpmath.iv.log(_iv(d2.lo, d2.hi))) / 2 + C_enc.hi * (h.hi + 1)
                if slack <= 0:
                    ok = False
                worst = slack if worst is None else min(worst, slack)
                count += 1
    ctx.expect("|kappa - beta| >= exp(-C (h(beta) + 1)) for all small beta", ok)
    ctx.equal("separation checks counted", checks.get("checked"), count)
    ctx.equal("separation flag", checks.get("ok"), ok)
    if worst is not None and checks.get("min_log_slack") is not None:
        stored = float(checks["min_log_slack"])
        ctx.expect("minimal log slack", abs(stored - float(worst)) <= 1e-9 * max(1.0, abs(float(worst))),
                   f"stored {stored}, recomputed {float(worst)}")
    return ok


def _raw(x: Fraction, rnd: str):
    return from_rational(x.numerator, x.denominator, 192, rnd)


def _iv(lo: Fraction, hi: Fraction | None = None):
    """Outward mpmath interval around exact rational endpoints."""
    hi = lo if hi is None else hi
    return mpmath.iv.make_mpf((_raw(lo, "d"), _raw(hi, "u")))


def _lo(x) -> Fraction:
    return Fraction(*to_rational(x._mpi_[0]))


def _hi(x) -> Fraction:
    return Fraction(*to_rational(x._mpi_[1]))


# -- small documents ----------------------------------------------------------------------------


def check_binomial(ctx: _Ctx, p: dict) -> None:
    m = p["m"]
    a = parse_rational(p["a"])
    reason = _binomial_reducible(m, a) if m > 1 else None
    ctx.equal("binomial irreducibility verdict", p["irreducible"], reason is None)
    w = p.get("witness")
    if reason is not None:
        ok = False
        if w and "prime" in w:
            ok = m % w["prime"] == 0 and parse_rational(w["root"]) ** w["prime"] == a
        elif w and "minus_four_c4" in w:
            ok = m % 4 == 0 and -4 * parse_rational(w["minus_four_c4"]) ** 4 == a
        ctx.expect("reducibility witness reproduces a", ok)


def check_genus(ctx: _Ctx, p: dict) -> None:
    n = p["n"]
    Q = IntPoly.from_json(p["poly"])
    g = _genus(n, Q)
    ctx.equal("Riemann-Hurwitz genus", p["genus"], g)
    if g is not None:
        ctx.equal("branch points", p["branch_points"], _branch_points(n, Q))


# -- gap scan ------------------------------------------------------------------------------------


def _gap_candidates(m: int, B: int):
    """(minpoly, re, im, h) with mpmath intervals, in the documented scan order."""
    iv = mpmath.iv
    rng = range(-B, B + 1)
    for a in range(1, B + 1):
        for b in rng:
            if math.gcd(a, b) == 1:
                h = iv.log(iv.mpf(max(abs(b), a)))
                yield IntPoly((b, a)), _iv(Fraction(-b, a)), iv.mpf(0), h
    if m < 2:
        return
    for a in range(1, B + 1):
        for b, c in itertools.product(rng, rng):
            disc = b * b - 4 * a * c
            if c == 0 or math.gcd(a, b, c) != 1 or (disc >= 0 and math.isqrt(disc) ** 2 == disc):
                continue
            f = IntPoly((c, b, a))
            if disc < 0:
                h = iv.log(iv.mpf(max(a, c))) / 2
                re = iv.mpf(-b) / (2 * a)
                im = iv.sqrt(iv.mpf(-disc)) / (2 * a)
                yield f, re, im, h
                yield f, re, -im, h
                continue
            sq = iv.sqrt(iv.mpf(disc))
            r1, r2 = (sq - b) / (2 * a), (-sq - b) / (2 * a)
            # a * max(1,|r1|) * max(1,|r2|), with |r| as an interval
            h = iv.log(iv.mpf(a) * _max1(abs(r1)) * _max1(abs(r2))) / 2
            yield f, r1, iv.mpf(0), h
            yield f, r2, iv.mpf(0), h
    if m >= 3:
        raise ValueError("the checker re-runs exclusion scans only for m <= 2")


def _max1(x):
    return _iv(max(Fraction(1), _lo(x)), max(Fraction(1), _hi(x)))


def _label_poly(label: str) -> str:
    return label.split(" @ ")[0]


def check_gap(ctx: _Ctx, p: dict) -> None:
    root = p["root"]
    before = len(ctx.report.failures)
    check_um_root(ctx, root)
    ctx.expect("source root certificate verifies", len(ctx.report.failures) == before)
    rep = p["report"]
    m = root["m"]
    B = rep["coeff_bound"]
    ctx.equal("scan degree m", rep["m"], m)
    Q = IntPoly.from_json(root["Q"])
    series = _Series(root["series"])
    members = {str(IntPoly.from_json(r["beta_minpoly"])) for r in root["rows"]}
    h_rows = [LogExpr.from_json(r["h_beta"]) for r in root["rows"]]
    max_h = max(float(h.enclosure(128).hi) for h in h_rows)
    top = 2 * m * (m + 1) * max_h
    grid = [1 << k for k in range(0, 64) if (1 << k) <= max(top, 1)]
    ctx.equal("eta grid: powers of 2 up to 2m(m+1) max h(beta_n)", [t["eta"] for t in rep["table"]], grid)
    hb = parse_rational(rep["height_bound"]) if rep["height_bound"] is not None else None

    branch = _branch_of(root)
    with working_precision(4096):
        kappa = _kappa(Q, series.lam(root["range"][1]), m, branch)
    iv = mpmath.iv
    old = iv.prec
    iv.prec = 160
    try:
        if isinstance(kappa, ComplexBox):
            k_re, k_im = _iv(kappa.re.lo, kappa.re.hi), _iv(kappa.im.lo, kappa.im.hi)
        else:
            k_re, k_im = _iv(kappa.lo, kappa.hi), iv.mpf(0)
        tol = Fraction(1, 1 << 100)
        best: dict[int, tuple[Fraction, set[str]]] = {}
        scanned = excluded = 0
        undecided = []
        for f, re, im, h in _gap_candidates(m, B):
            h_lo = _lo(h)
            if hb is not None and h_lo > hb:
                continue
            if str(f) in members:
                excluded += 1
                continue
            scanned += 1
            d2 = (k_re - re) ** 2 + (k_im - im) ** 2
            if _lo(d2) <= 0:
                undecided.append(str(f))
                continue
            log_d = _lo(iv.log(d2)) / 2
            for eta in grid:
                value = log_d + eta * h_lo
                cur = best.get(eta)
                if cur is None or value < cur[0] - tol:
                    best[eta] = (value, {str(f)})
                elif value <= cur[0] + tol:
                    cur[1].add(str(f))
                    best[eta] = (min(value, cur[0]), cur[1])
        table = {t["eta"]: t for t in rep["table"]}
        for eta in grid:
            if eta not in table or eta not in best:
                continue
            value, polys = best[eta]
            c = _pub_down(_lo(iv.exp(_iv(value))))
            t = table[eta]
            ctx.equal(f"fitted c(eta): min over gamma of |kappa-gamma| e^(eta h(gamma)) [eta={eta}]",
                      parse_exact(t["c"]), c)
            ctx.expect(f"extremal candidate [eta={eta}]", _label_poly(t["argmin"]) in polys, t["argmin"])
    finally:
        iv.prec = old
    ctx.equal("candidates scanned", rep["scanned"], scanned)
    ctx.equal("beta_n excluded from the scan", rep["excluded_members"], excluded)
    ctx.expect("every candidate distance decided", not undecided, ", ".join(undecided[:5]))
    ctx.equal("exception list empty", rep["exceptions"], [])
    last = rep["table"][-1] if rep["table"] else None
    ctx.expect("selected pair is the largest on the grid",
               last is not None and rep["selected"] == {"eta": last["eta"], "c": last["c"]})
    ctx.equal("Liouville checks counted", rep["liouville_checks"], scanned * len(root["rows"]))
    ctx.equal("status", rep["status"], "certified" if rep["liouville_consistent"] and not rep["exceptions"] else "refused")


# -- entry point ----------------------------------------------------------------------------------

_DISPATCH: dict[str, Callable[[_Ctx, dict], object]] = {
    "L-number": check_L,
    "um-root": check_um_root,
    "um-translate": check_um_translate,
    "galois": check_galois,
    "wilms": check_wilms,
    "genus": check_genus,
    "hypotheses": check_hypotheses,
    "binomial": check_binomial,
    "gap-scan": check_gap,
}


def verify_document(doc: dict) -> VerifyReport:
    """Re-derive every stored quantity of a certificate document."""
    kind = doc.get("kind", "?") if isinstance(doc, dict) else "?"
    report = VerifyReport(kind)
    ctx = _Ctx(report)
    if not ctx.expect("document is an object", isinstance(doc, dict)):
        return report
    ctx.equal("schema version", doc.get("schema"), SCHEMA_VERSION)
    ctx.expect("document hash", doc.get("sha256") == document_hash(doc), "sha256 does not match the canonical body")
    check = _DISPATCH.get(kind)
    if not ctx.expect("known certificate kind", check is not None, kind):
        return report
    try:
        check(ctx, doc["payload"])
    except (KeyError, TypeError, ValueError, IndexError, ArithmeticError) as exc:
        report.failures.append(("malformed certificate", f"{type(exc).__name__}: {exc}"))
    return report
