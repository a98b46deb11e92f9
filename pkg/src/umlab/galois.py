"""One-sided Galois group certification from factorization patterns mod p.

For a prime p not dividing ``lc(f) * disc(f)``, the degrees of the irreducible
factors of ``f mod p`` form the cycle type of a Frobenius element of the
Galois group (Dedekind). Enough distinct cycle types pin the group down:

* an m-cycle and an (m-1)-cycle make the group 2-transitive, hence primitive;
* a primitive group containing a transposition is S_m;
* a primitive group containing an l-cycle with l prime, l <= m - 3, contains A_m.

The certificate never claims that a group is *not* S_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import gmpy2

from .exactnum.rational import int_to_decimal
from .polyring import IntPoly, discriminant, is_squarefree

SYMMETRIC = "S_m"
CONTAINS_ALTERNATING = "contains_A_m"
INCONCLUSIVE = "inconclusive"

DEFAULT_PRIME_BUDGET = 1000


# -- polynomials over GF(p), coefficient lists low-to-high --------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        coef = (a[k] * inv) % p
        if coef:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - coef * m[j]) % p
    return _trim(a[:dm])


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _polydiv(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        coef = (a[k] * inv) % p
        q[k - db] = coef
        if coef:
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - coef * b[j]) % p
    if _trim(a):
        raise ArithmeticError("inexact division over GF(p)")
    return _trim(q)


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return _monic(a, p) if a else a


def _powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(base, m, p)
    while e:
        if e & 1:
            result = _polymod(_polymul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _polymod(_polymul(base, base, p), m, p)
    return result


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def reduce_mod(f: IntPoly, p: int) -> list[int]:
    return _trim([c % p for c in f.coeffs])


def distinct_degree_pattern(f_mod_p: list[int], p: int) -> list[int]:
    """Factor degrees of a squarefree polynomial over GF(p), descending."""
    g = _monic(f_mod_p, p)
    x = [0, 1]
    h = x
    degrees: list[int] = []
    d = 1
    while len(g) - 1 >= 2 * d:
        h = _powmod(h, p, g, p)
        factor = _polygcd(g, _sub(h, x, p), p)
        k = len(factor) - 1
        if k > 0:
            degrees.extend([d] * (k // d))
            g = _polydiv(g, factor, p)
            h = _polymod(h, g, p)
        d += 1
    if len(g) - 1 > 0:
        degrees.append(len(g) - 1)
    return sorted(degrees, reverse=True)


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class CycleTypeSample:
    prime: int
    pattern: tuple[int, ...] | None
    ramified: bool = False
    role: str = ""

    def to_json(self) -> dict:
        out: dict = {"p": self.prime, "pattern": list(self.pattern) if self.pattern else None}
        if self.ramified:
            out["ramified"] = True
        if self.role:
            out["role"] = self.role
        return out


def factor_pattern_mod_p(f: IntPoly, p: int, disc: int | None = None) -> CycleTypeSample:
    """Frobenius cycle type at ``p``, or a ramified flag when ``p | disc(f)``."""
    if not gmpy2.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.lc % p == 0:
        raise ValueError(f"p = {p} divides the leading coefficient of {f}")
    disc = discriminant(f) if disc is None else disc
    if disc % p == 0:
        return CycleTypeSample(p, None, ramified=True)
    return CycleTypeSample(p, tuple(distinct_degree_pattern(reduce_mod(f, p), p)))


def _primes_below(bound: int) -> Iterator[int]:
    p = 2
    while p < bound:
        yield p
        p = int(gmpy2.next_prime(p))


def _has_power_transposition(pattern: tuple[int, ...]) -> bool:
    # one 2-cycle, all other cycles odd: an odd power of it is a transposition
    return pattern.count(2) == 1 and all(c % 2 == 1 for c in pattern if c != 2)


def _prime_cycle_power(pattern: tuple[int, ...], limit: int) -> int | None:
    """A prime l <= limit such that some power of the element is an l-cycle."""
    for ell in sorted(set(pattern)):
        if ell < 2 or ell > limit or not gmpy2.is_prime(ell):
            continue
        if pattern.count(ell) == 1 and all(math.gcd(c, ell) == 1 for c in pattern if c != ell):
            return ell
    return None


@dataclass(frozen=True)
class GaloisCertificate:
    polynomial: IntPoly
    verdict: str
    witnesses: tuple[CycleTypeSample, ...]
    discriminant: int
    discriminant_square: bool
    prime_budget: int
    primes_scanned: int
    patterns_seen: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def is_symmetric(self) -> bool:
        return self.verdict == SYMMETRIC

    def to_json(self) -> dict:
        return {
            "poly": self.polynomial.to_json(),
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "disc": int_to_decimal(self.discriminant),
            "disc_square": self.discriminant_square,
            "prime_budget": self.prime_budget,
            "primes_scanned": self.primes_scanned,
            "patterns_seen": [list(p) for p in self.patterns_seen],
        }


def discriminant_is_square(f: IntPoly) -> tuple[bool, int]:
    disc = discriminant(f)
    if disc < 0:
        return False, disc
    return math.isqrt(disc) ** 2 == disc, disc


def certify_symmetric(f: IntPoly, prime_budget: int = DEFAULT_PRIME_BUDGET) -> GaloisCertificate:
    """Scan primes below ``prime_budget`` for the S_m (or A_m) witness patterns."""
    f = f.primitive()
    m = f.degree
    if m < 2:
        raise ValueError("Galois certification needs degree >= 2")
    if not is_squarefree(f):
        raise ValueError("Galois certification needs a squarefree polynomial")
    square, disc = discriminant_is_square(f)
    full = tuple([m])
    near = tuple([m - 1, 1])
    found: dict[str, CycleTypeSample] = {}
    seen: dict[tuple[int, ...], int] = {}
    scanned = 0
    for p in _primes_below(prime_budget):
        if f.lc % p == 0 or disc % p == 0:
            continue
        pattern = tuple(distinct_degree_pattern(reduce_mod(f, p), p))
        scanned += 1
        seen.setdefault(pattern, p)
        if pattern == full and "m_cycle" not in found:
            found["m_cycle"] = CycleTypeSample(p, pattern, role="m_cycle")
        if pattern == near and "m_minus_1_cycle" not in found:
            found["m_minus_1_cycle"] = CycleTypeSample(p, pattern, role="m_minus_1_cycle")
        if _has_power_transposition(pattern) and "transposition" not in found:
            found["transposition"] = CycleTypeSample(p, pattern, role="transposition")
        if "prime_cycle" not in found and _prime_cycle_power(pattern, m - 3) is not None:
            found["prime_cycle"] = CycleTypeSample(p, pattern, role="prime_cycle")
        if {"m_cycle", "m_minus_1_cycle", "transposition"} <= found.keys():
            break
    primitive = "m_cycle" in found and (bool(gmpy2.is_prime(m)) or "m_minus_1_cycle" in found)
    if primitive and "transposition" in found:
        verdict = SYMMETRIC
        roles = ("m_cycle", "m_minus_1_cycle", "transposition")
    elif primitive and "prime_cycle" in found:
        verdict = CONTAINS_ALTERNATING
        roles = ("m_cycle", "m_minus_1_cycle", "prime_cycle")
    else:
        verdict = INCONCLUSIVE
        roles = ("m_cycle", "m_minus_1_cycle", "transposition", "prime_cycle")
    witnesses = tuple(found[r] for r in roles if r in found)
    ordered_seen = tuple(sorted(seen, key=lambda pat: seen[pat]))
    return GaloisCertificate(f, verdict, witnesses, disc, square, prime_budget, scanned, ordered_seen)
