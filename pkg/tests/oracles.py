"""Independent reference implementations used only by the tests.

None of these share code with the package: they trade speed for obviousness.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath


# -- naive factoring over GF(p) ------------------------------------------------------


def _divmod_p(a, b, p):
    """Long division of coefficient lists (low to high) over GF(p)."""
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] * inv % p
        q[k] = coef
        for j, c in enumerate(b):
            a[k + j] = (a[k + j] - coef * c) % p
    while a and a[-1] == 0:
        a.pop()
    return q, a


def naive_pattern_mod_p(coeffs, p):
    """Degrees of the irreducible factors of f mod p, by trial division.

    Assumes f is squarefree mod p.  Every monic polynomial of degree up to
    deg/2 is tried in increasing degree, so the first divisor found at each
    degree is irreducible.
    """
    f = [c % p for c in coeffs]
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    degrees = []
    d = 1
    while len(f) - 1 >= 2 * d:
        found = False
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            q, r = _divmod_p(f, g, p)
            if not r:
                degrees.append(d)
                f = q
                found = True
                break
        if not found:
            d += 1
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees, reverse=True)


# -- binomial reducibility by an explicit factor search -----------------------------


def _divides_exactly(m, a, p, q):
    """Does X^2 + pX + q divide X^m - a over Q?  Plain Fraction long division."""
    rem = [-a] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for k in range(m, 1, -1):
        c = rem[k]
        rem[k] = 0
        rem[k - 1] -= c * p
        rem[k - 2] -= c * q
    return rem[0] == 0 and rem[1] == 0


def binomial_reducible_oracle(m, a):
    """X^m - a reducible over Q, for m <= 4: look for a factor of degree 1 or 2.

    A reducible polynomial of degree <= 4 always has such a factor.  Candidate
    factors come from pairs of numerical roots; each is confirmed exactly.
    """
    if m > 4:
        raise ValueError("oracle only valid for m <= 4")
    a = Fraction(a)
    if m == 1:
        return False
    with mpmath.workdps(40):
        root = mpmath.root(mpmath.mpc(a.numerator) / a.denominator, m)
        roots = [root * mpmath.exp(2j * mpmath.pi * k / m) for k in range(m)]
        for z in roots:
            if abs(z.imag) < 1e-20:
                r = Fraction(mpmath.nstr(z.real, 30)).limit_denominator(10**6)
                if r**m == a:
                    return True
        if m < 4:
            return False
        for z1, z2 in itertools.combinations(roots, 2):
            s, t = -(z1 + z2), z1 * z2
            if abs(s.imag) > 1e-20 or abs(t.imag) > 1e-20:
                continue
            p = Fraction(mpmath.nstr(s.real, 30)).limit_denominator(10**6)
            q = Fraction(mpmath.nstr(t.real, 30)).limit_denominator(10**6)
            if _divides_exactly(m, a, p, q):
                return True
    return False
