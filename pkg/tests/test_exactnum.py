from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umlab.exactnum import (
    LOG2,
    AlgebraicNumber,
    ComplexBox,
    DomainError,
    Interval,
    LogExpr,
    UncertifiedError,
    algebraic_height,
    complex_nth_root,
    exp,
    height_of_binomial_root,
    height_rational,
    isolate_roots,
    liouville_lower_bound,
    log,
    nth_root,
    parse_rational,
    refine_isolator,
    roots_of,
    working_precision,
)
from umlab.exactnum.rational import exact_root, format_rational, round_down, round_up
from umlab.polyring import IntPoly, binomial_irreducible, parse_poly

fractions = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
positive = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**6)


def intervals(values=fractions):
    return st.tuples(values, values).map(lambda t: Interval(min(t), max(t)))


# -- rationals ------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, value",
    [("3/6", Fraction(1, 2)), ("-7", Fraction(-7)), ("−2/4", Fraction(-1, 2)), (" 10/4 ", Fraction(5, 2))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/", "a/3", "1.5", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_parse_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_format_rational_handles_huge_integers():
    big = 7**20000
    text = format_rational(Fraction(big, 3))
    assert parse_rational(text) == Fraction(big, 3)


@given(fractions)
def test_format_parse_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


@given(st.fractions(min_value=Fraction(1, 10**30), max_value=10**30), st.integers(8, 80))
def test_round_down_is_tight(x, bits):
    lo, hi = round_down(x, bits), round_up(x, bits)
    assert lo <= x <= hi
    # dyadic with at most `bits` significant bits, unless x was already that small
    if max(x.numerator.bit_length(), x.denominator.bit_length()) > bits:
        odd = lo.numerator >> ((lo.numerator & -lo.numerator).bit_length() - 1)
        assert odd.bit_length() <= bits and lo.denominator & (lo.denominator - 1) == 0
    # the gap below x is at most one unit in the last of `bits` places
    assert x - lo <= x / 2 ** (bits - 1)


def test_round_down_exponent_boundary():
    # 2^64 - 1 over 2: numerator just below a power of two
    x = Fraction(2**65 - 1, 2**200)
    r = round_down(x, 64)
    assert r <= x and r.numerator.bit_length() <= 64


@given(st.integers(-10**5, 10**5).filter(bool), st.integers(1, 6))
def test_exact_root_of_powers(c, k):
    value = Fraction(c) ** k
    root = exact_root(value, k)
    assert root is not None and root**k == value


def test_exact_root_rejects():
    assert exact_root(Fraction(2), 2) is None
    assert exact_root(Fraction(-4), 2) is None
    assert exact_root(Fraction(-8, 27), 3) == Fraction(-2, 3)


# -- intervals -----------------------------------------------------------------


def test_interval_rejects_reversed_endpoints():
    with pytest.raises(ValueError):
        Interval(Fraction(1), Fraction(0))


unit = st.fractions(min_value=0, max_value=1, max_denominator=1000)


@given(intervals(), intervals(), unit, unit)
def test_interval_ops_contain_pointwise_results(a, b, s, t):
    x = a.lo + (a.hi - a.lo) * s
    y = b.lo + (b.hi - b.lo) * t
    assert x + y in a + b
    assert x - y in a - b
    assert x * y in a * b
    if not b.contains_zero():
        assert x / y in a / b


def test_division_by_interval_containing_zero():
    with pytest.raises(DomainError):
        Interval.point(1) / Interval(Fraction(-1), Fraction(1))


@given(positive, st.integers(2, 7))
@settings(max_examples=60)
def test_nth_root_encloses(x, n):
    box = nth_root(Interval.point(x), n, 128)
    assert box.lo**n <= x <= box.hi**n
    assert box.width < Fraction(1, 2**100) * max(1, box.hi)


@given(positive)
@settings(max_examples=60)
def test_log_exp_enclosures_match_mpmath(x):
    with mpmath.workprec(300):
        ref_log = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
        L = log(Interval.point(x), 160)
        assert mpmath.mpf(L.lo.numerator) / L.lo.denominator <= ref_log + mpmath.mpf(2) ** -250
        assert ref_log - mpmath.mpf(2) ** -250 <= mpmath.mpf(L.hi.numerator) / L.hi.denominator
        E = exp(Interval.point(x / 10**5), 160)
        ref_exp = mpmath.exp(mpmath.mpf(x.numerator) / (x.denominator * 10**5))
        assert float(E.lo) <= float(ref_exp) * (1 + 1e-15)
        assert float(E.hi) >= float(ref_exp) * (1 - 1e-15)


def test_log_of_nonpositive_interval():
    with pytest.raises(DomainError):
        log(Interval(Fraction(-1), Fraction(1)))


def test_working_precision_restores():
    from umlab.exactnum.interval import get_precision

    before = get_precision()
    with working_precision(77):
        assert get_precision() == 77
    assert get_precision() == before


def test_complex_nth_root_branch():
    w = ComplexBox.point(-4)
    root = complex_nth_root(w, 2, ComplexBox.from_bounds(-1, 1, 1, 3), 128)
    assert Fraction(2) in root.im and Fraction(0) in root.re
    sq = root * root
    assert Fraction(-4) in sq.re and Fraction(0) in sq.im


# -- logarithmic expressions -------------------------------------------------------------


def test_logexpr_collects_perfect_powers():
    assert LogExpr.of(8) == LOG2 * 3
    assert LogExpr.of(Fraction(1, 4)) == LOG2 * -2
    assert (LogExpr.of(105) / 2).single() == (Fraction(1, 2), 105)


@given(positive, positive)
def test_logexpr_order_matches_rationals(a, b):
    assert (LogExpr.of(a) < LogExpr.of(b)) == (a < b)
    assert (LogExpr.of(a) - LogExpr.of(b)).sign() == (a > b) - (a < b)


def test_logexpr_json_roundtrip():
    e = LogExpr.of(105) / 2 - LOG2 * 7
    assert LogExpr.from_json(e.to_json()) == e


# -- heights --------------------------------------------------------------------


@given(fractions.filter(bool))
def test_height_rational(r):
    assert float(height_rational(r)) == pytest.approx(
        float(mpmath.log(max(abs(r.numerator), r.denominator))), abs=1e-12
    )


def _mahler_oracle(coeffs):
    roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
    value = mpmath.log(abs(coeffs[-1]))
    for z in roots:
        value += mpmath.log(max(1, abs(z)))
    return value / (len(coeffs) - 1)


@pytest.mark.parametrize(
    "text", ["x^2 - 2", "32x^2 - 105", "x^4 - x - 1", "2x^3 - 3x + 7", "x^4 + x^3 + x^2 + x + 1", "5x^2+3x+7"]
)
def test_algebraic_height_matches_mpmath(text):
    f = parse_poly(text)
    with mpmath.workdps(50):
        ref = _mahler_oracle(list(f.coeffs))
    h = algebraic_height(f)
    assert float(h.lo) <= float(ref) + 1e-14 and float(ref) - 1e-14 <= float(h.hi)
    assert h.width < Fraction(1, 10**20)


def test_binomial_root_height_requires_certificate():
    verdict = binomial_irreducible(2, Fraction(105, 32))
    assert height_of_binomial_root(2, Fraction(105, 32), verdict) == LogExpr.of(105) / 2
    with pytest.raises(UncertifiedError):
        height_of_binomial_root(2, Fraction(4), binomial_irreducible(2, 4))
    with pytest.raises(UncertifiedError):
        height_of_binomial_root(2, Fraction(3), None)


def test_liouville_bound_exact_for_integer_exponents():
    bound = liouville_lower_bound(1, 1, LogExpr.of(3), LogExpr.of(5))
    assert bound.value_lower == Fraction(1, 30)


def test_liouville_bound_holds_for_close_rationals():
    a, b = Fraction(355, 113), Fraction(22, 7)
    bound = liouville_lower_bound(1, 1, height_rational(a), height_rational(b))
    assert abs(a - b) >= bound.value_lower


# -- algebraic numbers -------------------------------------------------------------


@pytest.mark.parametrize("text", ["x^4 - x - 1", "x^5 - 4x^3 + 2x", "x^2 + 1", "3x^3 - x + 5"])
def test_isolation_boxes_are_disjoint_and_contain_roots(text):
    f = parse_poly(text)
    boxes = isolate_roots(f)
    assert len(boxes) == f.degree
    for i, a in enumerate(boxes):
        for b in boxes[i + 1 :]:
            assert not a.intersects(b)
    with mpmath.workdps(40):
        for z in mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=200, extraprec=100):
            re, im = Fraction(str(z.real)), Fraction(str(z.imag))
            assert any(
                b.re.lo - Fraction(1, 10**30) <= re <= b.re.hi + Fraction(1, 10**30)
                and b.im.lo - Fraction(1, 10**30) <= im <= b.im.hi + Fraction(1, 10**30)
                for b in boxes
            )


def test_refine_isolator_reaches_target_width():
    gamma = next(r for r in roots_of(parse_poly("x^4 - x - 1"), irreducible=True) if r.is_nonreal())
    fine = refine_isolator(gamma, Fraction(1, 2**200))
    assert fine.isolator.width <= Fraction(1, 2**200)
    # same root: the refined box sits inside the original one
    assert gamma.isolator.intersects(fine.isolator)


def test_algebraic_number_from_rational():
    a = AlgebraicNumber.from_rational(Fraction(-3, 4))
    assert a.degree == 1 and a.is_real()
    assert Fraction(-3, 4) in a.isolator.re


def test_real_roots_of_product():
    f = IntPoly.from_roots([0, 1, 2, 3, 4])
    boxes = isolate_roots(f)
    for k, box in zip(range(5), sorted(boxes, key=lambda b: b.re.lo)):
        assert Fraction(k) in box.re
