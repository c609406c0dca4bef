"""Homology orders of branched cyclic covers and the cyclotomic
classification criteria.

The order of the first homology of the n-fold branched cyclic cover is the
absolute value of the product of the Alexander polynomial over the
nontrivial n-th roots of unity; it is computed exactly as a quotient of
integer resultants.  An order of 0 encodes infinite homology, which happens
exactly when the polynomial vanishes at some n-th root of unity.

The classification facts used here: all prime power branched cyclic covers
are homology spheres iff every nontrivial irreducible factor of the
Alexander polynomial is a cyclotomic polynomial phi_n with n divisible by
three distinct primes, and all finite branched cyclic covers are homology
spheres iff the polynomial is 1.  Casson-Gordon style obstructions need a
prime power cover with nontrivial homology, so their applicability is the
negation of the first condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import laurent
from .laurent import LaurentPoly


@dataclass(frozen=True)
class CoverReport:
    """Order of H_1 of the n-fold branched cyclic cover; 0 means infinite."""

    n: int
    order: int

    @property
    def is_homology_sphere(self) -> bool:
        return self.order == 1

    def to_json(self) -> dict:
        return {"n": self.n, "order": self.order, "is_homology_sphere": self.is_homology_sphere}


@dataclass(frozen=True)
class LivingstonClassification:
    all_prime_power_covers_trivial: bool
    all_finite_covers_trivial: bool
    offending_factor: int | str | None
    cg_applicable: bool

    def to_json(self) -> dict:
        return {
            "all_prime_power_covers_trivial": self.all_prime_power_covers_trivial,
            "all_finite_covers_trivial": self.all_finite_covers_trivial,
            "offending_factor": self.offending_factor,
            "cg_applicable": self.cg_applicable,
        }


def _primitive_integer_coeffs(delta: LaurentPoly) -> tuple[int, ...]:
    """Ascending integer coefficients of the normalized polynomial, shifted
    to exponent 0 and divided by the content."""
    lo = delta.min_exp()
    span = delta.max_exp() - lo
    denom_lcm = 1
    for _, v in delta.items():
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(delta.coeff(lo + k) * denom_lcm) for k in range(span + 1)]
    content = 0
    for c in ints:
        content = gcd(content, c)
    return tuple(c // content for c in ints)


def cover_order(delta: LaurentPoly, n: int) -> int:
    """Exact order of H_1 of the n-fold branched cyclic cover.

    Computed as |Res(t^n - 1, D)| / |D(1)| over the integers, where D is the
    integer-cleared normalized polynomial; the j = 0 factor of the resultant
    is D(1) itself, so the quotient is the product over the nontrivial
    roots of unity.
    """
    if n < 2:
        raise ValueError("cover index must be at least 2")
    d = laurent.normalize_alexander(delta)
    coeffs = _primitive_integer_coeffs(d)
    tn1 = (-1,) + (0,) * (n - 1) + (1,)
    res = laurent.resultant(tn1, coeffs)
    if res == 0:
        return 0
    at_one = abs(sum(coeffs))
    assert abs(res) % at_one == 0
    return abs(res) // at_one


def _distinct_primes(n: int) -> tuple[int, ...]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def prime_powers_upto(bound: int) -> list[int]:
    return [q for q in range(2, bound + 1) if len(_distinct_primes(q)) == 1]


def prime_power_cover_scan(delta: LaurentPoly, bound: int) -> list[CoverReport]:
    """CoverReport for every prime power q <= bound."""
    if bound < 2:
        raise ValueError("scan bound must be at least 2")
    return [CoverReport(q, cover_order(delta, q)) for q in prime_powers_upto(bound)]


def classify(delta: LaurentPoly) -> LivingstonClassification:
    """Classify which families of branched cyclic covers are forced to be
    homology spheres by the Alexander polynomial."""
    d = laurent.normalize_alexander(delta)
    if d.is_one():
        return LivingstonClassification(True, True, None, False)
    fac = laurent.strip_cyclotomic_factors(d)
    offending: int | str | None = None
    for n, _mult in fac.cyclotomic_part:
        if len(_distinct_primes(n)) < 3:
            offending = n
            break
    if offending is None and not fac.remainder.is_one():
        offending = "non-cyclotomic remainder"
    trivial = offending is None
    return LivingstonClassification(
        all_prime_power_covers_trivial=trivial,
        all_finite_covers_trivial=False,
        offending_factor=offending,
        cg_applicable=not trivial,
    )
