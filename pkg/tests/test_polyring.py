from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from umlab.polyring import (
    IntPoly,
    ParseError,
    binomial_irreducible,
    count_simple_roots,
    difference_polynomial,
    discriminant,
    gcd,
    is_pth_power,
    is_squarefree,
    parse_poly,
    prime_divisors,
    resultant,
    squarefree_decomposition,
)

from oracles import binomial_reducible_oracle

X = sympy.Symbol("x")


def to_sympy(f: IntPoly) -> sympy.Poly:
    return sympy.Poly(list(reversed(f.coeffs)) or [0], X)


def sylvester(f: IntPoly, g: IntPoly) -> sympy.Matrix:
    m, n = f.degree, g.degree
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f.coeffs)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g.coeffs)) + [0] * (m - 1 - i))
    return sympy.Matrix(rows)


coeff_lists = st.lists(st.integers(-30, 30), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)
polys = coeff_lists.map(lambda c: IntPoly(tuple(c)))


# -- parsing ------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("x^2 - 2", (-2, 0, 1)),
        ("32x^2 - 105", (-105, 0, 32)),
        ("x**3 + x", (0, 1, 0, 1)),
        ("-x + 1", (1, -1)),
        ("2(x+1)^2", (2, 4, 2)),
        ("x*(x-1)*(x-2)", (0, 2, -3, 1)),
        ("x^4 − x − 1", (-1, -1, 0, 0, 1)),
        ("[-1,-1,0,0,1]", (-1, -1, 0, 0, 1)),
        ('{"coeffs": ["-2", "0", "1"]}', (-2, 0, 1)),
        ("7", (7,)),
        ("t^2 + 3t", (0, 3, 1)),
    ],
)
def test_parse_forms(text, coeffs):
    assert parse_poly(text).coeffs == coeffs


@pytest.mark.parametrize(
    "text, column",
    [("x^2 + $", 6), ("x^2 +", 5), ("x + y", 4), ("(x + 1", 6), ("x^-2", 2), ("[1, x]", 4)],
)
def test_parse_errors_report_column(text, column):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.position == column
    assert f"column {column}" in str(info.value)


@given(polys)
def test_str_parse_roundtrip(f):
    assert parse_poly(str(f)) == f


@given(polys)
def test_json_roundtrip(f):
    assert IntPoly.from_json(f.to_json()) == f


def test_str_handles_huge_coefficients():
    big = 10**5000 + 7
    f = IntPoly((-big, 0, 3 * big))
    assert parse_poly(str(f)) == f


# -- arithmetic against sympy ---------------------------------------------------------


@given(polys, polys)
def test_ring_ops_match_sympy(f, g):
    assert to_sympy(f * g) == to_sympy(f) * to_sympy(g)
    assert to_sympy(f + g) == to_sympy(f) + to_sympy(g)
    assert to_sympy(f - g) == to_sympy(f) - to_sympy(g)


@given(polys, st.integers(-5, 5))
def test_taylor_shift(f, a):
    assert to_sympy(f.taylor_shift(a)) == sympy.Poly(to_sympy(f).as_expr().subs(X, X + a), X)


@given(polys, polys)
@settings(max_examples=60)
def test_gcd_matches_sympy(f, g):
    ours = to_sympy(gcd(f, g))
    ref = sympy.gcd(to_sympy(f), to_sympy(g))
    # both primitive up to sign
    ref = ref.primitive()[1]
    if ref.LC() < 0:
        ref = -ref
    assert ours == ref


@given(polys, polys)
@settings(max_examples=60)
def test_resultant_matches_sylvester_determinant(f, g):
    # sympy.resultant flips the sign when deg f < deg g, so use the definition
    assert resultant(f, g) == sylvester(f, g).det()


def test_resultant_sign_convention():
    # Res(f, g) = lc(f)^deg g * prod g(alpha) over the roots alpha of f
    assert resultant(parse_poly("x - 2"), parse_poly("x^3 - 1")) == 7
    assert resultant(parse_poly("x + 1"), parse_poly("x^3")) == -1


@given(polys)
@settings(max_examples=60)
def test_discriminant_matches_sympy(f):
    assert discriminant(f) == sympy.discriminant(to_sympy(f))


@given(st.lists(st.tuples(coeff_lists.filter(lambda c: len(c) <= 3), st.integers(1, 3)), min_size=1, max_size=3))
@settings(max_examples=60)
def test_squarefree_decomposition_multiplies_back(parts):
    f = IntPoly((1,))
    for coeffs, k in parts:
        f = f * IntPoly(tuple(coeffs)) ** k
    profile = squarefree_decomposition(f)
    expanded = profile.expand()
    ratio = Fraction(f.lc, expanded.lc)
    assert [Fraction(c) for c in f.coeffs] == [ratio * c for c in expanded.coeffs]
    ref = sympy.sqf_list(to_sympy(f))[1]
    ref_simple = sum(p.degree() for p, k in ref if k == 1)
    assert count_simple_roots(f) == ref_simple
    for poly, _ in profile.factors:
        assert is_squarefree(poly)


def test_difference_polynomial_roots_are_differences():
    f = parse_poly("x^2 + 1")  # roots +-i: differences +-2i
    assert difference_polynomial(f) == parse_poly("x^2 + 4")
    d = difference_polynomial(parse_poly("x^4 - x - 1"))
    assert d.degree == 12
    ref = sympy.resultant(
        to_sympy(parse_poly("x^4 - x - 1")).as_expr().subs(X, sympy.Symbol("y")),
        to_sympy(parse_poly("x^4 - x - 1")).as_expr().subs(X, sympy.Symbol("y") + X),
        sympy.Symbol("y"),
    )
    assert sympy.Poly(sympy.expand(ref / X**4), X) == to_sympy(d)


# -- binomials ------------------------------------------------------------------


def test_prime_divisors():
    assert prime_divisors(1) == []
    assert prime_divisors(12) == [2, 3]
    assert prime_divisors(97) == [97]


def test_is_pth_power():
    assert is_pth_power(Fraction(8, 27), 3)
    assert is_pth_power(-8, 3)
    assert not is_pth_power(-4, 2)
    with pytest.raises(ValueError):
        is_pth_power(4, 4)


@pytest.mark.parametrize(
    "m, a, irreducible",
    [(2, 2, True), (2, 4, False), (3, -8, False), (4, -4, False), (4, -64, False), (4, 4, False), (4, -1, True),
     (6, 8, False), (6, 9, False), (5, 32, False), (8, -4, False), (2, Fraction(105, 32), True)],
)
def test_binomial_fixtures(m, a, irreducible):
    assert binomial_irreducible(m, a).irreducible is irreducible


def test_binomial_minus_four_witness():
    verdict = binomial_irreducible(4, -4)
    assert verdict.witness == {"minus_four_c4": "1"}
    assert "-4Q^4" in verdict.reason


@given(
    st.integers(1, 4),
    st.integers(-50, 50).filter(bool),
    st.integers(1, 50),
)
@settings(max_examples=150)
def test_binomial_agrees_with_factor_search(m, num, den):
    a = Fraction(num, den)
    assert binomial_irreducible(m, a).irreducible is not binomial_reducible_oracle(m, a)


@given(st.integers(2, 12), st.fractions(min_value=-20, max_value=20, max_denominator=20).filter(bool))
@settings(max_examples=80)
def test_binomial_matches_sympy_factorization(m, a):
    poly = sympy.Poly(X**m - sympy.Rational(a.numerator, a.denominator), X)
    assert binomial_irreducible(m, a).irreducible is poly.is_irreducible
