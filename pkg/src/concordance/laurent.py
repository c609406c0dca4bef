"""Exact arithmetic in Q[t, t^-1], the Laurent polynomial ring over the
rationals.

A LaurentPoly is an immutable sparse map from integer exponents to nonzero
rational coefficients; the zero polynomial is the empty map.  On top of the
ring operations the module provides cyclotomic polynomials, recognition and
removal of cyclotomic factors, resultants of integer polynomials, and the
canonical normalization of Alexander polynomials.
"""

from __future__ import annotations

import cmath
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import _exact


class NotDivisible(ArithmeticError):
    """Raised by divide_exact when the division leaves a remainder."""


class NotAlexander(ValueError):
    """Raised when a polynomial fails the Alexander conditions."""


Coefficient = Union[int, str, Fraction]


class LaurentPoly:
    """Element of Q[t, t^-1].

    >>> p = LaurentPoly({1: 1, 0: -1})          # t - 1
    >>> q = LaurentPoly({1: 1, 0: 1})           # t + 1
    >>> print(p * q)
    t^2 - 1
    >>> print(LaurentPoly({-1: 1, 0: -1, 1: 1}))
    t - 1 + t^-1
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Coefficient] | None = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def t(cls, exp: int = 1) -> "LaurentPoly":
        return cls({exp: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Coefficient], min_exp: int = 0) -> "LaurentPoly":
        """Build from a dense coefficient array starting at exponent min_exp."""
        return cls({min_exp + i: v for i, v in enumerate(coeffs)})

    # -- structure ---------------------------------------------------------

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == {0: Fraction(1)}

    def is_unit(self) -> bool:
        """Units of Q[t, t^-1] are the nonzero monomials c * t^k."""
        return len(self._c) == 1

    def min_exp(self) -> int | None:
        return min(self._c) if self._c else None

    def max_exp(self) -> int | None:
        return max(self._c) if self._c else None

    @property
    def degree_span(self) -> int | None:
        """max exponent minus min exponent; None for the zero polynomial."""
        if not self._c:
            return None
        return max(self._c) - min(self._c)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for e, v in other._c.items():
            s = out.get(e, Fraction(0)) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = LaurentPoly.__new__(LaurentPoly)
        p._c = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = LaurentPoly.__new__(LaurentPoly)
        p._c = {e: -v for e, v in self._c.items()}
        return p

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + v1 * v2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        p = LaurentPoly.__new__(LaurentPoly)
        p._c = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers exist only for units")
            ((e, v),) = self._c.items()
            return LaurentPoly({-e: 1 / v}) ** (-n)
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        """Evaluate at x (rational, float, complex, or mpmath number)."""
        return sum((v * x**e for e, v in self._c.items()), start=0 * x)

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        p = LaurentPoly.__new__(LaurentPoly)
        p._c = {e + k: v for e, v in self._c.items()}
        return p

    def reversed_variable(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        p = LaurentPoly.__new__(LaurentPoly)
        p._c = {-e: v for e, v in self._c.items()}
        return p

    def equals_up_to_unit(self, other: "LaurentPoly") -> bool:
        """True when self = c * t^k * other for some nonzero rational c."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        a, b = self.items(), other.items()
        if len(a) != len(b):
            return False
        shift = a[0][0] - b[0][0]
        scale = a[0][1] / b[0][1]
        return all(ea == eb + shift and va == scale * vb for (ea, va), (eb, vb) in zip(a, b))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {str(e): str(v) for e, v in self.items()}

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        """Accepts the exponent map form {"0": "-1", "1": "1"} or the dense
        form {"coeffs": [...], "min_exp": k}."""
        if isinstance(obj, Mapping) and "coeffs" in obj:
            return cls.from_coeffs([Fraction(str(v)) for v in obj["coeffs"]],
                                   int(obj.get("min_exp", 0)))
        if isinstance(obj, Mapping):
            return cls({int(e): Fraction(str(v)) for e, v in obj.items()})
        raise ValueError(f"cannot read a polynomial from {type(obj).__name__}")

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({{{', '.join(f'{e}: {v!r}' for e, v in self.items())}}})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if v > 0 else f" - {body}")
        return "".join(parts)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x})
    return NotImplemented


# ---------------------------------------------------------------------------
# named ring operations


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Product in canonical form."""
    return p * q


def divide_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact quotient p / q in Q[t, t^-1].

    >>> p = LaurentPoly({3: 1, 0: 1})
    >>> q = LaurentPoly({1: 1, 0: 1})
    >>> print(divide_exact(p, q))
    t^2 - t + 1

    Raises NotDivisible when the long-division remainder is nonzero.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero()
    pmin, qmin = p.min_exp(), q.min_exp()
    num = {e - pmin: v for e, v in p._c.items()}
    den = {e - qmin: v for e, v in q._c.items()}
    dn = max(den)
    lead = den[dn]
    rem = dict(num)
    quot: dict[int, Fraction] = {}
    while rem and max(rem) >= dn:
        top = max(rem)
        c = rem[top] / lead
        shift = top - dn
        quot[shift] = c
        for e, v in den.items():
            s = rem.get(e + shift, Fraction(0)) - c * v
            if s:
                rem[e + shift] = s
            else:
                rem.pop(e + shift, None)
    if rem:
        raise NotDivisible(f"remainder {LaurentPoly(rem)} is nonzero")
    return LaurentPoly(quot).shifted(pmin - qmin)


# ---------------------------------------------------------------------------
# cyclotomic machinery


@functools.lru_cache(maxsize=None)
def _cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    poly = (-1,) + (0,) * (n - 1) + (1,)
    for d in range(1, n):
        if n % d == 0:
            poly = _exact.pdiv_exact(poly, _cyclotomic_coeffs(d))
    return poly


def cyclotomic(n: int) -> LaurentPoly:
    """The n-th cyclotomic polynomial, monic of degree phi(n).

    Computed by dividing t^n - 1 by the cyclotomic polynomials of the proper
    divisors of n.

    >>> print(cyclotomic(1))
    t - 1
    >>> print(cyclotomic(6))
    t^2 - t + 1
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    return LaurentPoly.from_coeffs(_cyclotomic_coeffs(n))


@functools.lru_cache(maxsize=8)
def _totients_upto(m: int) -> tuple[int, ...]:
    phi = list(range(m + 1))
    for i in range(2, m + 1):
        if phi[i] == i:  # prime
            for j in range(i, m + 1, i):
                phi[j] -= phi[j] // i
    return tuple(phi)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("totient of a nonpositive integer")
    return _totients_upto(n)[n] if n <= 10_000 else _phi_by_factoring(n)


def _phi_by_factoring(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


@dataclass(frozen=True)
class CyclotomicFactorization:
    """p = unit * prod of phi_n^mult * remainder, remainder cyclotomic-free.

    unit is the pair (c, k) encoding c * t^k; the remainder is monic with
    nonnegative exponents and nonzero constant term.
    """

    cyclotomic_part: tuple[tuple[int, int], ...]
    remainder: LaurentPoly
    unit: tuple[Fraction, int]

    def reconstruct(self) -> LaurentPoly:
        c, k = self.unit
        out = LaurentPoly({k: c})
        for n, mult in self.cyclotomic_part:
            out = out * cyclotomic(n) ** mult
        return out * self.remainder

    def to_json(self) -> dict:
        c, k = self.unit
        return {
            "cyclotomic_part": [[n, m] for n, m in self.cyclotomic_part],
            "remainder": self.remainder.to_json(),
            "unit": {"coefficient": str(c), "exponent": k},
        }


def strip_cyclotomic_factors(p: LaurentPoly) -> CyclotomicFactorization:
    """Greedily divide out every cyclotomic factor of p, with multiplicity.

    Candidate indices n are those with phi(n) <= span(p); they all satisfy
    n <= 2 * span(p)^2 because phi(n) >= sqrt(n/2).  A cheap numeric check
    at a primitive n-th root of unity filters candidates before the exact
    division is attempted.

    >>> f = strip_cyclotomic_factors(LaurentPoly({2: 1, 1: -1, 0: 1}))
    >>> f.cyclotomic_part, str(f.remainder)
    (((6, 1),), '1')
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    k = p.min_exp()
    q = p.shifted(-k)
    lead = q.coeff(q.max_exp())
    q = q * (1 / lead)
    span = q.max_exp()
    found: dict[int, int] = {}
    if span:
        phis = _totients_upto(2 * span * span)
        for n in range(1, len(phis)):
            cur = q.max_exp()
            if cur == 0:
                break
            if phis[n] > cur:
                continue
            if not _maybe_vanishes_at_primitive_root(q, n):
                continue
            phi_n = cyclotomic(n)
            mult = 0
            while True:
                try:
                    q = divide_exact(q, phi_n)
                except NotDivisible:
                    break
                mult += 1
            if mult:
                found[n] = mult
    return CyclotomicFactorization(tuple(sorted(found.items())), q, (lead, k))


def _maybe_vanishes_at_primitive_root(q: LaurentPoly, n: int) -> bool:
    z = cmath.exp(2j * cmath.pi / n)
    val = 0j
    size = 0.0
    for e, v in q._c.items():
        fv = float(v)
        val += fv * z**e
        size += abs(fv)
    return abs(val) <= 1e-8 * (1.0 + size)


# ---------------------------------------------------------------------------
# resultants of integer polynomials


def _int_poly_coeffs(p) -> tuple[int, ...]:
    if isinstance(p, LaurentPoly):
        if p.is_zero():
            raise ValueError("resultant of the zero polynomial")
        if p.min_exp() < 0:
            raise ValueError("resultant requires an ordinary polynomial (no negative exponents)")
        coeffs = [0] * (p.max_exp() + 1)
        for e, v in p.items():
            if v.denominator != 1:
                raise ValueError("resultant requires integer coefficients")
            coeffs[e] = v.numerator
        return tuple(coeffs)
    coeffs = _exact.ptrim(tuple(int(c) for c in p))
    if not coeffs:
        raise ValueError("resultant of the zero polynomial")
    return coeffs


def resultant(p, q) -> int:
    """Resultant of two nonzero integer polynomials, exactly.

    Computed as the determinant of the Sylvester matrix whose first deg(q)
    rows carry the coefficients of p; with this convention

        Res(p, q) = lc(p)^deg(q) * prod of q over the roots of p.

    >>> resultant([-1, 1], [-2, 1])     # Res(t - 1, t - 2) = q(1)
    -1
    >>> abs(resultant([-1, 0, 1], [1, -1, 1]))
    3
    """
    cp = _int_poly_coeffs(p)
    cq = _int_poly_coeffs(q)
    m, n = len(cp) - 1, len(cq) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    pdesc = list(reversed(cp))
    qdesc = list(reversed(cq))
    for i in range(n):
        rows.append([0] * i + pdesc + [0] * (size - i - len(pdesc)))
    for i in range(m):
        rows.append([0] * i + qdesc + [0] * (size - i - len(qdesc)))
    return _exact.int_det(rows)


# ---------------------------------------------------------------------------
# Alexander normalization


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of an Alexander polynomial.

    Requires p(1) = +-1 and palindromic coefficients up to a unit; returns
    the representative with p(1) = 1 and exponents centered so that
    p(t) = p(t^-1).

    >>> print(normalize_alexander(LaurentPoly({2: 1, 1: -1, 0: 1})))
    t - 1 + t^-1
    """
    if p.is_zero():
        raise NotAlexander("the zero polynomial is not an Alexander polynomial")
    v1 = p(Fraction(1))
    if v1 not in (1, -1):
        raise NotAlexander(f"value at t=1 is {v1}, expected +-1")
    k = p.min_exp() + p.max_exp()
    if any(p.coeff(e) != p.coeff(k - e) for e in p.exponents()):
        raise NotAlexander("coefficients are not symmetric under t -> 1/t")
    if k % 2:
        raise NotAlexander("coefficient symmetry has a half-integer center")
    q = p.shifted(-(k // 2))
    return q if v1 == 1 else -q
