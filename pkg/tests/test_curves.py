import random
from fractions import Fraction

import pytest

from umlab.curves import (
    CurveError,
    SuperellipticCurve,
    branch_point_count,
    simple_root_threshold,
    superelliptic_genus,
    verify_degm_hypotheses,
)
from umlab.polyring import IntPoly, is_squarefree, parse_poly


def random_squarefree(rng: random.Random, degree: int) -> IntPoly:
    while True:
        coeffs = [rng.randint(-20, 20) for _ in range(degree)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        f = IntPoly(tuple(coeffs))
        if is_squarefree(f):
            return f


def test_hyperelliptic_closed_form_on_random_cases():
    rng = random.Random(20240601)
    for _ in range(100):
        d = rng.randint(3, 12)
        f = random_squarefree(rng, d)
        curve = SuperellipticCurve.build(2, f)
        assert superelliptic_genus(curve) == (d - 1) // 2


@pytest.mark.parametrize(
    "q, Q, genus",
    [
        (2, "x*(x-1)*(x-2)*(x-3)*(x-4)", 2),  # k = 5
        (2, "x*(x-1)*(x-2)*(x-3)", 1),  # k = 4
        (3, "x*(x-1)*(x-2)*(x-3)", 3),  # k = 4
        (5, "x*(x-1)", 2),  # k = 2
    ],
)
def test_table_boundary_cases(q, Q, genus):
    assert superelliptic_genus(SuperellipticCurve.build(q, parse_poly(Q))) == genus


def test_quartic_case_with_five_simple_zeros():
    Q = parse_poly("x*(x-1)*(x-2)*(x-3)*(x-4)")
    g = superelliptic_genus(SuperellipticCurve.build(4, Q, Fraction(-1, 4)))
    assert g >= 5


def test_multiple_roots_lower_the_genus():
    # Y^2 = x^2 (x-1)(x-2)(x-3): the double root is unramified, genus 1
    Q = parse_poly("x^2*(x-1)*(x-2)*(x-3)")
    curve = SuperellipticCurve.build(2, Q)
    assert superelliptic_genus(curve) == 1
    assert branch_point_count(curve) == 4


def test_split_curve_is_refused():
    with pytest.raises(CurveError):
        SuperellipticCurve.build(2, parse_poly("(x^2+1)^2"))


def test_thresholds():
    assert [simple_root_threshold(p) for p in (2, 3, 5, 7)] == [5, 4, 2, 2]


def test_hypotheses_for_root_construction():
    report = verify_degm_hypotheses(2, parse_poly("x*(x-1)*(x-2)*(x-3)*(x-4)"))
    assert report.verdict and report.k_met
    assert (report.k_found, report.k_required) == (5, 5)
    assert [e.genus for e in report.entries] == [2]


def test_hypotheses_fail_for_too_few_simple_roots():
    report = verify_degm_hypotheses(2, parse_poly("x*(x-1)*(x-2)*(x-3)"))
    assert not report.verdict
    assert report.k_found == 4 < report.k_required


def test_hypotheses_with_quartic_entry():
    report = verify_degm_hypotheses(4, parse_poly("x*(x-1)*(x-2)*(x-3)*(x-4)"))
    assert report.quartic is not None and report.quartic.genus >= 5
    assert report.to_json()["quartic"]["q"] == 4
