import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from umlab.certify import (
    GRID,
    LiouvilleSeries,
    RefusedError,
    binomial_approximant,
    certify_L,
    construct_um_root,
    gap_exclusion_scan,
    im_separation_constant,
    make_document,
    wilms_check,
)
from umlab.certify.codec import (
    document_hash,
    format_exact,
    parse_exact,
    publish_interval,
    publish_lower,
    publish_upper,
    rows_to_csv,
)
from umlab.certify.errors import BudgetError
from umlab.certify.gap import candidates, eta_grid
from umlab.exactnum import Interval, LogExpr, roots_of
from umlab.polyring import IntPoly, parse_poly

from conftest import QUINTIC


def mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def lam(prec_bits: int, terms: int = 10):
    with mpmath.workprec(prec_bits):
        return mpmath.fsum(mpmath.ldexp(1, -math.factorial(j)) for j in range(1, terms + 1))


# -- codec ---------------------------------------------------------------------------------------


@given(st.fractions(min_value=-(10**40), max_value=10**40))
def test_exact_text_roundtrip(x):
    assert parse_exact(format_exact(x)) == x


def test_scaled_form_for_wide_dyadics():
    x = Fraction(12345, 2**300)
    assert format_exact(x) == "12345*2^-300"
    assert parse_exact("12345*2^-300") == x


@given(st.fractions(min_value=Fraction(1, 10**30), max_value=10**30))
def test_publication_rounds_outward(x):
    lo, hi = publish_lower(x), publish_upper(x)
    assert lo < x < hi
    for y in (lo, hi):
        odd = y.numerator >> ((y.numerator & -y.numerator).bit_length() - 1)
        assert odd.bit_length() <= 64


def test_publish_interval_contains_input():
    box = Interval(Fraction(1, 3), Fraction(2, 3))
    pub = publish_interval(box)
    assert pub.lo <= box.lo and box.hi <= pub.hi


def test_hash_ignores_timestamp():
    a = make_document("binomial", {"m": 2}, timestamp="2000-01-01T00:00:00+00:00")
    b = make_document("binomial", {"m": 2}, timestamp="2020-01-01T00:00:00+00:00")
    assert a["sha256"] == b["sha256"] == document_hash(b)
    assert a["schema"] == "umlab-cert/1"


def test_csv_header():
    text = rows_to_csv([{"n": 1, "h_alpha": "0.69", "v_n": "1.0", "h_beta": "", "w_n": ""}])
    assert text.splitlines()[:2] == ["# umlab-csv/1", "n,h_alpha,v_n,h_beta,w_n"]


# -- L-numbers -----------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def l_cert():
    return certify_L(LiouvilleSeries.factorial(2), (1, 9))


def test_v_matches_closed_form(l_cert):
    # tail bound 2 * 2^-e_(n+1) and h(alpha_n) = n! log 2 give v_n = ((n+1)! - 1)/n!
    for row in l_cert.rows:
        n = row.n
        assert row.v == Fraction(math.factorial(n + 1) - 1, math.factorial(n))
    assert l_cert.v_values()[2] == Fraction(5, 2)
    assert l_cert.v_values()[3] == Fraction(23, 6)


def test_minimal_A(l_cert):
    assert l_cert.A == 2 and l_cert.A_exact


def test_tail_soundness():
    series = LiouvilleSeries.factorial(2)
    for n in range(1, 6):
        partial = sum(Fraction(1, 2 ** math.factorial(j)) for j in range(n + 1, n + 6))
        assert partial <= series.tail_interval(n).hi
        assert partial <= Fraction(2, 2 ** math.factorial(n + 1))


def test_rows_satisfy_approximation_inequality(l_cert):
    # |lambda - alpha_n| <= exp(-v_n h(alpha_n)) checked in mpmath
    with mpmath.workprec(20000):
        value = lam(20000, 9)
        for row in l_cert.rows[:6]:
            dist = abs(value - mp(row.alpha))
            assert dist <= mpmath.exp(-mp(row.v) * math.factorial(row.n) * mpmath.log(2))


def test_bit_budget_is_enforced():
    with pytest.raises(BudgetError):
        certify_L(LiouvilleSeries.factorial(2), (1, 9), bit_budget=1000)


def test_explicit_exponents():
    series = LiouvilleSeries.explicit(3, [1, 3, 9, 27, 81])
    cert = certify_L(series, (1, 3))
    assert cert.certified
    assert cert.rows[0].alpha == Fraction(1, 3)


# -- m-th root construction -----------------------------------------------------------------


@pytest.fixture(scope="module")
def root_cert():
    return construct_um_root(LiouvilleSeries.factorial(2), parse_poly(QUINTIC), 2, n_range=(1, 7))


def test_first_row_fixture(root_cert):
    row = root_cert.rows[0]
    assert row.approximant.minpoly == parse_poly("32x^2 - 105")
    assert row.h_beta == LogExpr.of(105) / 2


def test_rows_are_binomially_irreducible(root_cert):
    for row in root_cert.rows:
        assert row.approximant.verdict.irreducible
        assert row.h_beta == LogExpr.of(max(abs(row.approximant.value.numerator), row.approximant.value.denominator)) / 2


def test_height_sandwich(root_cert):
    N, m = 5, 2
    for row in root_cert.rows:
        assert row.h_beta <= row.h_alpha * (2 * N)
        assert row.h_alpha <= row.h_beta * (2 * m)
        assert row.sandwich_upper and row.sandwich_lower


def test_B_within_claim(root_cert):
    assert root_cert.B_claimed == 8 * 25 * 2 * 2 == 800
    assert root_cert.B_empirical <= root_cert.B_claimed
    assert root_cert.certified


def test_w_increasing(root_cert):
    assert root_cert.w_increasing
    for row in root_cert.rows:
        assert (row.w * GRID).denominator == 1


def test_distance_encloses_independent_value(root_cert):
    bits = 9 * 40320
    with mpmath.workprec(bits):
        value = lam(bits, 9)
        q = mpmath.fprod(value - k for k in range(5))
        kappa = mpmath.sqrt(q)
        for row in root_cert.rows:
            beta = mpmath.sqrt(mp(row.approximant.value))
            d = abs(kappa - beta)
            assert mp(row.distance.lo) <= d <= mp(row.distance.hi), row.n


def test_w_is_sound(root_cert):
    # |kappa - beta_n| <= exp(-w_n h(beta_n)) on every row with C = 1
    for row in root_cert.rows:
        log_d = mpmath.log(mp(row.distance.hi))
        assert log_d <= -mp(row.w) * float(row.h_beta) + 1e-12


def test_reducible_row_is_refused():
    # Q = x^2 makes Q(alpha) a square: X^2 - Q(alpha) splits
    with pytest.raises(RefusedError):
        binomial_approximant(parse_poly("x^2"), 2, Fraction(1, 2))


def test_hypotheses_failure_refuses():
    with pytest.raises(RefusedError):
        construct_um_root(LiouvilleSeries.factorial(2), parse_poly("x*(x-1)*(x-2)"), 2, n_range=(1, 3))


# -- translate construction --------------------------------------------------------------------


def test_wilms_fixtures():
    good = wilms_check(parse_poly("x^4 - x - 1"))
    assert good.certified and good.degree_claim == 12
    assert mpmath.mpf(good.numeric_gap) > mpmath.mpf("1e-30")
    bad = wilms_check(parse_poly("x^4 - 2x^2 + 9"))
    assert not bad.certified
    assert any("D not squarefree" in r for r in bad.reasons)
    quad = wilms_check(parse_poly("x^2 + 1"))
    assert quad.certified and quad.degree_claim == 2


def test_wilms_differences_distinct_at_50_digits():
    with mpmath.workdps(50):
        roots = mpmath.polyroots([1, 0, 0, -1, -1], maxsteps=200, extraprec=200)
        diffs = [a - b for a in roots for b in roots if a is not b]
        assert len(diffs) == 12
        gap = min(abs(x - y) for i, x in enumerate(diffs) for y in diffs[i + 1 :])
        assert gap > mpmath.mpf("1e-30")


def test_im_separation_constant_is_finite_exact():
    gamma = next(r for r in roots_of(parse_poly("x^4 - x - 1"), irreducible=True) if r.is_nonreal())
    sep = im_separation_constant(gamma)
    assert sep.K == 4**3 * 3
    assert math.isfinite(float(sep.C_enclosure().hi))


def test_translate_rows(translate_doc):
    p = translate_doc["payload"]
    assert p["status"] == "certified"
    assert p["constants"]["C"] == "1"
    assert p["im_separation"]["checks"]["ok"]
    series = LiouvilleSeries.factorial(2)
    for r in p["rows"]:
        # distance is literally the series tail
        assert r["distance"] == series.tail_text(r["n"])
        assert r["within_shift"] and r["within_factor_two"]


def test_translate_height_against_mpmath(translate_doc):
    p = translate_doc["payload"]
    with mpmath.workdps(60):
        gammas = mpmath.polyroots([1, 0, 0, -1, -1], maxsteps=200, extraprec=200)
        for r in p["rows"][:4]:
            alpha = mp(Fraction(r["alpha"]))
            den = Fraction(r["alpha"]).denominator
            ref = (4 * mpmath.log(den) + sum(mpmath.log(max(1, abs(g + alpha))) for g in gammas)) / 4
            lo, hi = (parse_exact(t) for t in r["h_beta"])
            assert mp(lo) - mpmath.mpf(10) ** -40 <= ref <= mp(hi) + mpmath.mpf(10) ** -40


# -- gap scan -----------------------------------------------------------------------------------------


def test_eta_grid():
    assert eta_grid(2, 1.0) == [1, 2, 4, 8]
    assert eta_grid(2, 0.0) == [1]


def test_candidate_count_matches_brute_force():
    B = 3
    found = {str(c.minpoly) for c in candidates(2, B)}
    x = sympy.Symbol("x")
    expected = set()
    for a in range(1, B + 1):
        for b in range(-B, B + 1):
            if math.gcd(a, b) == 1:
                expected.add(str(IntPoly((b, a))))
            for c in range(-B, B + 1):
                if c == 0 or math.gcd(math.gcd(a, b), c) != 1:
                    continue
                if sympy.Poly(a * x**2 + b * x + c, x).is_irreducible:
                    expected.add(str(IntPoly((c, b, a))))
    assert found == expected


def test_gap_bound_against_mpmath(root_cert):
    report = gap_exclusion_scan(root_cert, parse_poly(QUINTIC), coeff_bound=3)
    assert report.passed and not report.exceptions
    eta, c = report.selected
    bits = 9 * 40320
    with mpmath.workprec(bits):
        kappa = mpmath.sqrt(mpmath.fprod(lam(bits, 9) - k for k in range(5)))
    with mpmath.workdps(60):
        for cand in candidates(2, 3):
            coeffs = list(reversed(cand.minpoly.coeffs))
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200) if len(coeffs) > 2 else [
                mpmath.mpf(-coeffs[1]) / coeffs[0]
            ]
            h = mpmath.log(abs(coeffs[0])) + sum(mpmath.log(max(1, abs(z))) for z in roots)
            h /= len(roots)
            d = min(abs(mpmath.mpf(kappa) - z) for z in roots)
            assert d >= mp(c) * mpmath.exp(-eta * h)
