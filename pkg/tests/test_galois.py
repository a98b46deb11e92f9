import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from umlab.galois import (
    CONTAINS_ALTERNATING,
    INCONCLUSIVE,
    SYMMETRIC,
    certify_symmetric,
    distinct_degree_pattern,
    factor_pattern_mod_p,
    reduce_mod,
)
from umlab.polyring import IntPoly, discriminant, parse_poly

from oracles import naive_pattern_mod_p

SMALL_PRIMES = list(sympy.primerange(2, 50))


@pytest.mark.parametrize("text", ["x^4 - x - 1", "x^4 - 2x^2 + 9", "x^4 + x^3 + x^2 + x + 1", "x^5 - x - 1"])
def test_patterns_match_naive_oracle(text):
    f = parse_poly(text)
    disc = discriminant(f)
    for p in SMALL_PRIMES:
        if disc % p == 0:
            assert factor_pattern_mod_p(f, p).ramified
            continue
        sample = factor_pattern_mod_p(f, p)
        assert list(sample.pattern) == naive_pattern_mod_p(f.coeffs, p), p


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=5), st.sampled_from(SMALL_PRIMES[:8]))
@settings(max_examples=80)
def test_distinct_degree_against_oracle(lower, p):
    f = IntPoly(tuple(lower) + (1,))
    disc = discriminant(f)
    if disc % p == 0:
        return
    assert distinct_degree_pattern(reduce_mod(f, p), p) == naive_pattern_mod_p(f.coeffs, p)


def test_pattern_rejects_composite_and_leading_prime():
    f = parse_poly("x^2 - 2")
    with pytest.raises(ValueError):
        factor_pattern_mod_p(f, 4)
    with pytest.raises(ValueError):
        factor_pattern_mod_p(parse_poly("3x^2 - 2"), 3)


def test_quartic_certified_symmetric_with_witnesses():
    cert = certify_symmetric(parse_poly("x^4 - x - 1"), prime_budget=200)
    assert cert.verdict == SYMMETRIC
    assert [(w.prime, w.pattern) for w in cert.witnesses] == [(2, (4,)), (7, (3, 1)), (17, (2, 1, 1))]
    # every witness pattern is the oracle's factorization
    for w in cert.witnesses:
        assert list(w.pattern) == naive_pattern_mod_p(cert.polynomial.coeffs, w.prime)
    assert cert.discriminant == -283 and not cert.discriminant_square


@pytest.mark.parametrize("text", ["x^4 - 2x^2 + 9", "x^4 + x^3 + x^2 + x + 1"])
def test_small_groups_are_inconclusive(text):
    # Klein four and cyclic groups: never S_4, and the certificate never claims otherwise
    cert = certify_symmetric(parse_poly(text), prime_budget=1000)
    assert cert.verdict == INCONCLUSIVE
    assert cert.primes_scanned > 100


def test_alternating_group_never_symmetric():
    # x^3 - 3x - 1 has square discriminant 81 and group A_3: no transposition ever appears
    cert = certify_symmetric(parse_poly("x^3 - 3x - 1"), prime_budget=500)
    assert cert.discriminant_square
    assert cert.verdict != SYMMETRIC


def test_quintic_symmetric():
    cert = certify_symmetric(parse_poly("x^5 - x - 1"), prime_budget=300)
    assert cert.verdict == SYMMETRIC


def test_a5_quintic_reaches_alternating_only():
    # x^5 + 20x + 16 has Galois group A_5
    cert = certify_symmetric(parse_poly("x^5 + 20x + 16"), prime_budget=1000)
    assert cert.verdict in (CONTAINS_ALTERNATING, INCONCLUSIVE)
    assert cert.discriminant_square


def test_certificate_json_shape():
    data = certify_symmetric(parse_poly("x^4 - x - 1"), prime_budget=200).to_json()
    assert data["verdict"] == "S_m"
    assert data["disc"] == "-283"
    assert [w["role"] for w in data["witnesses"]] == ["m_cycle", "m_minus_1_cycle", "transposition"]


def test_certify_rejects_non_squarefree():
    with pytest.raises(ValueError):
        certify_symmetric(parse_poly("(x^2 - 2)^2"))
