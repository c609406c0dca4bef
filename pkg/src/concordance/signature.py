"""Levine-Tristram signature functions and their normalized integrals.

The circle is parameterized by theta in (0, 1), omega = exp(2 pi i theta).
The signature at omega is the signature of the Hermitian form
(1 - omega) V + (1 - conj(omega)) V^T; as omega moves around the circle it
is a step function whose jumps happen only at roots of the Alexander
polynomial.  Roots at rational angles come exactly from cyclotomic factors;
the remaining roots are isolated by Sturm bisection of the real polynomial
obtained from the substitution x = t + 1/t = 2 cos(2 pi theta), which gives
rational interval enclosures.

The normalized integral of the step function is the abelian von Neumann
rho invariant of the knot; it is an exact rational whenever every jump
angle is rational.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import mpmath as mp
import numpy as np

from . import laurent, seifert
from .laurent import LaurentPoly
from .seifert import SeifertMatrix

DEFAULT_GAP_TOL = 1e-9
DEFAULT_THETA_PRECISION = 1e-9


class AtJump(ArithmeticError):
    """The evaluation angle is within tolerance of a jump."""


class RootIsolationFailure(ArithmeticError):
    """Circle roots could not be separated at working precision."""


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class JumpAngle:
    """A jump position: an exact rational when lo == hi, otherwise a
    certified rational enclosure of an irrational angle."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mirrored(self) -> "JumpAngle":
        return JumpAngle(1 - self.hi, 1 - self.lo)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "exact": self.exact}


@dataclass(frozen=True)
class RhoValue:
    """Normalized signature integral with a rigorous error bound; the bound
    is zero when every jump angle is rational."""

    value: Fraction
    error_bound: Fraction

    def __float__(self) -> float:
        return float(self.value)

    def to_json(self) -> dict:
        return {"value": str(self.value), "error_bound": str(self.error_bound)}


@dataclass(frozen=True)
class SignatureFunction:
    """Integer-valued step function on the circle.

    values has one entry per open arc between consecutive jumps, so
    len(values) == len(jumps) + 1; the first and last arcs are the ones
    adjacent to theta = 0 and carry the value 0.
    """

    jumps: tuple[JumpAngle, ...]
    values: tuple[int, ...]

    def value_at(self, theta) -> int:
        th = _as_angle(theta)
        for k, j in enumerate(self.jumps):
            if th < j.lo:
                return self.values[k]
            if th <= j.hi:
                raise AtJump(f"theta = {th} lies in the jump enclosure [{j.lo}, {j.hi}]")
        return self.values[-1]

    def integral(self) -> RhoValue:
        cuts = [Fraction(0), *(j.midpoint for j in self.jumps), Fraction(1)]
        total = sum(
            (v * (cuts[i + 1] - cuts[i]) for i, v in enumerate(self.values)),
            start=Fraction(0),
        )
        err = sum(
            (abs(self.values[i + 1] - self.values[i]) * j.width / 2
             for i, j in enumerate(self.jumps)),
            start=Fraction(0),
        )
        return RhoValue(total, err)

    def samples(self, count: int = 512) -> list[tuple[float, int | None]]:
        """Uniform samples (theta, sigma); sigma is None inside jump
        enclosures, which plotting and CSV export skip."""
        out = []
        for k in range(count):
            th = Fraction(2 * k + 1, 2 * count)
            try:
                out.append((float(th), self.value_at(th)))
            except AtJump:
                out.append((float(th), None))
        return out

    def is_conjugation_symmetric(self) -> bool:
        mirrored = tuple(j.mirrored() for j in reversed(self.jumps))
        return mirrored == self.jumps and self.values == self.values[::-1]

    def to_json(self) -> dict:
        return {
            "jumps": [j.to_json() for j in self.jumps],
            "values": list(self.values),
        }


# ---------------------------------------------------------------------------
# pointwise signatures


def _as_angle(theta) -> Fraction:
    th = Fraction(theta)
    if not 0 < th < 1:
        raise ValueError(f"theta must lie strictly between 0 and 1, got {th}")
    return th


def _sym_and_skew(V: SeifertMatrix):
    arr = np.array(V.entries, dtype=float)
    return arr + arr.T, arr.T - arr


def _doubled(A, B):
    return np.block([[A, -B], [B, A]])


def _signature_numpy(V: SeifertMatrix, theta: Fraction, gap_tol: float):
    sym, skew = _sym_and_skew(V)
    ang = 2.0 * math.pi * (theta.numerator / theta.denominator)
    A = (1.0 - math.cos(ang)) * sym
    B = math.sin(ang) * skew
    D = _doubled(A, B)
    evs = np.linalg.eigvalsh(D)
    thr = gap_tol * max(1.0, float(np.abs(D).max()))
    pos = int((evs > thr).sum())
    neg = int((evs < -thr).sum())
    if pos + neg < 2 * V.size:
        return None
    return pos, neg


def _signature_mpmath(V: SeifertMatrix, theta: Fraction):
    n = V.size
    with mp.workdps(40):
        ang = 2 * mp.pi * mp.mpf(theta.numerator) / theta.denominator
        c, s = mp.cos(ang), mp.sin(ang)
        e = V.entries
        D = mp.zeros(2 * n, 2 * n)
        scale = mp.mpf(1)
        for i in range(n):
            for j in range(n):
                a = (1 - c) * (e[i][j] + e[j][i])
                b = s * (e[j][i] - e[i][j])
                D[i, j] = a
                D[n + i, n + j] = a
                D[i, n + j] = -b
                D[n + i, j] = b
                scale = max(scale, abs(a), abs(b))
        evs = mp.eigsy(D, eigvals_only=True)
        thr = scale * mp.mpf("1e-30")
        pos = sum(1 for v in evs if v > thr)
        neg = sum(1 for v in evs if v < -thr)
    if pos + neg < 2 * n:
        return None
    return pos, neg


def lt_signature_at(V, theta, *, gap_tol: float = DEFAULT_GAP_TOL) -> int:
    """Levine-Tristram signature at omega = exp(2 pi i theta).

    Computed from the real symmetric doubling of the Hermitian form; the
    eigenvalues must clear the gap tolerance, with one retry at quadruple
    precision, otherwise AtJump is raised.
    """
    V = seifert.validate(V)
    th = _as_angle(theta)
    if V.size == 0:
        return 0
    counted = _signature_numpy(V, th, gap_tol)
    if counted is None:
        counted = _signature_mpmath(V, th)
    if counted is None:
        raise AtJump(f"theta = {th} is within tolerance of a root of the Alexander polynomial")
    pos, neg = counted
    sig = (pos - neg) // 2
    assert sig % 2 == 0, "Levine-Tristram signatures away from jumps are even"
    return sig


# ---------------------------------------------------------------------------
# root isolation through x = t + 1/t


def _fractions(coeffs) -> tuple[Fraction, ...]:
    out = tuple(Fraction(c) for c in coeffs)
    end = len(out)
    while end and out[end - 1] == 0:
        end -= 1
    return out[:end]


def _fadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _fractions(out)


def _fscale(a, s):
    return _fractions(c * s for c in a)


def _fshift(a, k):
    return _fractions((Fraction(0),) * k + tuple(a))


def _fderiv(a):
    return _fractions(i * c for i, c in enumerate(a) if i)


def _feval(a, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def _fmod(a, b):
    """Remainder of the division a = qb + r over the rationals."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(_fractions(r)) - 1 >= db and any(r):
        r = list(_fractions(r))
        if len(r) - 1 < db:
            break
        c = r[-1] / lead
        shift = len(r) - 1 - db
        for i, v in enumerate(b):
            r[shift + i] -= c * v
        r = r[:-1]
    return _fractions(r)


def _fdiv_exact(a, b):
    q: list[Fraction] = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while True:
        r = list(_fractions(r))
        if len(r) - 1 < db or not r:
            break
        c = r[-1] / lead
        shift = len(r) - 1 - db
        q[shift] = c
        for i, v in enumerate(b):
            r[shift + i] -= c * v
    if any(r):
        raise ValueError("inexact division")
    return _fractions(q)


def _fgcd(a, b):
    a, b = _fractions(a), _fractions(b)
    while b:
        a, b = b, _fmod(a, b)
        if b:
            b = _fscale(b, 1 / b[-1])
    return _fscale(a, 1 / a[-1]) if a else a


def _squarefree(a):
    a = _fractions(a)
    if len(a) <= 2:
        return a
    g = _fgcd(a, _fderiv(a))
    if len(g) <= 1:
        return a
    return _fdiv_exact(a, g)


def _sturm_chain(p):
    chain = [p, _fderiv(p)]
    while chain[-1] and len(chain[-1]) > 1:
        rem = _fmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(_fscale(rem, -1))
    return [c for c in chain if c]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(chain, x: Fraction) -> int:
    signs = [s for s in (_sign(_feval(c, x)) for c in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _isolate(p, a: Fraction, b: Fraction):
    """Disjoint isolating intervals for the roots of a squarefree p in
    (a, b); endpoints of the output are nonroots, except for a point
    interval at an exact rational root."""
    chain = _sturm_chain(p)
    assert _feval(p, a) != 0 and _feval(p, b) != 0
    out = []
    stack = [(a, b, _variations(chain, a), _variations(chain, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _feval(p, mid) == 0:
            out.append((mid, mid))
            eps = (hi - lo) / 4
            while True:
                l, r = mid - eps, mid + eps
                if (_feval(p, l) != 0 and _feval(p, r) != 0
                        and _variations(chain, l) - _variations(chain, r) == 1):
                    break
                eps /= 2
            stack.append((lo, l, vlo, _variations(chain, l)))
            stack.append((r, hi, _variations(chain, r), vhi))
        else:
            vm = _variations(chain, mid)
            stack.append((lo, mid, vlo, vm))
            stack.append((mid, hi, vm, vhi))
    return sorted(out)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * (Fraction(2) ** exp if exp >= 0 else Fraction(1, 2 ** -exp))
    return -v if sign else v


def _clamp(u: float) -> float:
    return min(1.0, max(-1.0, u))


def _theta_bounds(xlo: Fraction, xhi: Fraction, precision: float) -> tuple[Fraction, Fraction]:
    """Enclosure of {acos(x/2) / 2pi : x in [xlo, xhi]}; acos is decreasing,
    so the lower theta bound comes from xhi."""
    if precision >= 1e-11:
        guard = Fraction(1, 10**13)
        tlo = Fraction(math.acos(_clamp(float(xhi) / 2)) / (2 * math.pi)) - guard
        thi = Fraction(math.acos(_clamp(float(xlo) / 2)) / (2 * math.pi)) + guard
    else:
        dps = max(30, int(-math.log10(precision)) + 15)
        with mp.workdps(dps):
            lo_m = mp.acos(mp.mpf(xhi.numerator) / xhi.denominator / 2) / (2 * mp.pi)
            hi_m = mp.acos(mp.mpf(xlo.numerator) / xlo.denominator / 2) / (2 * mp.pi)
            guard = Fraction(1, 10 ** (dps - 8))
            tlo = _mpf_to_fraction(lo_m) - guard
            thi = _mpf_to_fraction(hi_m) + guard
    return max(tlo, Fraction(0)), min(thi, Fraction(1, 2))


class _IsolatedRoot:
    """One root of the folded polynomial in x = 2 cos(2 pi theta), refined
    on demand until its theta enclosure is narrow enough."""

    __slots__ = ("poly", "xlo", "xhi", "slo", "exact_x")

    def __init__(self, poly, xlo: Fraction, xhi: Fraction):
        self.poly = poly
        self.xlo = xlo
        self.xhi = xhi
        self.exact_x = xlo == xhi
        self.slo = 0 if self.exact_x else _sign(_feval(poly, xlo))

    def theta_enclosure(self, precision: float) -> tuple[Fraction, Fraction]:
        if self.exact_x:
            return _theta_bounds(self.xlo, self.xlo, precision)
        for _ in range(4000):
            tlo, thi = _theta_bounds(self.xlo, self.xhi, precision)
            if float(thi - tlo) < precision:
                return tlo, thi
            mid = (self.xlo + self.xhi) / 2
            s = _sign(_feval(self.poly, mid))
            if s == 0:
                self.exact_x = True
                self.xlo = self.xhi = mid
                return _theta_bounds(mid, mid, precision)
            if s == self.slo:
                self.xlo = mid
            else:
                self.xhi = mid
        raise RootIsolationFailure("bisection failed to reach the requested theta precision")


def _fold_to_cos_poly(csym: Sequence[int]):
    """Coefficients of G with Delta(t) = G(t + 1/t), from the centered
    symmetric coefficients (c_0, c_1, ..., c_d) of Delta."""
    G = _fractions((csym[0],))
    pk_prev = _fractions((2,))
    pk = _fractions((0, 1))
    for k in range(1, len(csym)):
        if csym[k]:
            G = _fadd(G, _fscale(pk, csym[k]))
        pk_next = _fadd(_fshift(pk, 1), _fscale(pk_prev, -1))
        pk_prev, pk = pk, pk_next
    return G


def _remainder_circle_roots(remainder: LaurentPoly) -> list[_IsolatedRoot]:
    span = remainder.max_exp()
    if span == 0:
        return []
    assert span % 2 == 0, "Alexander remainders have even span"
    denom_lcm = 1
    for _, v in remainder.items():
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(remainder.coeff(e) * denom_lcm) for e in range(span + 1)]
    assert ints == ints[::-1], "Alexander remainders are palindromic"
    csym = ints[span // 2:]
    G = _squarefree(_fold_to_cos_poly(csym))
    two = Fraction(2)
    if _feval(G, two) == 0 or _feval(G, -two) == 0:
        raise RootIsolationFailure("unexpected root at theta = 0 or 1/2")
    return [_IsolatedRoot(G, lo, hi) for lo, hi in _isolate(G, -two, two)]


# ---------------------------------------------------------------------------
# the step function and its integral


def signature_function(V, *, gap_tol: float = DEFAULT_GAP_TOL,
                       theta_precision: float | None = None) -> SignatureFunction:
    """Full Levine-Tristram step function of a Seifert matrix.

    Jump angles from cyclotomic factors of the Alexander polynomial are
    exact rationals j/n; the remaining jumps are rational enclosures of
    width below theta_precision (default 1e-9).  Arc values are evaluated
    at arc midpoints.
    """
    V = seifert.validate(V)
    precision = DEFAULT_THETA_PRECISION if theta_precision is None else float(theta_precision)
    delta = seifert.alexander_poly(V)
    fac = laurent.strip_cyclotomic_factors(delta)
    exact_angles = []
    for n, _mult in fac.cyclotomic_part:
        assert n >= 3, "phi_1 and phi_2 never divide an Alexander polynomial"
        exact_angles.extend(Fraction(j, n) for j in range(1, n) if gcd(j, n) == 1)
    records = _remainder_circle_roots(fac.remainder)

    jumps: list[JumpAngle] = []
    prec = precision
    for _attempt in range(24):
        jumps = [JumpAngle(a, a) for a in exact_angles]
        for rec in records:
            tlo, thi = rec.theta_enclosure(prec)
            jumps.append(JumpAngle(tlo, thi))
            jumps.append(JumpAngle(1 - thi, 1 - tlo))
        jumps.sort(key=lambda j: (j.lo, j.hi))
        if all(jumps[k].hi < jumps[k + 1].lo for k in range(len(jumps) - 1)):
            break
        prec /= 64
    else:
        raise RootIsolationFailure("could not separate circle roots at working precision")

    mids = []
    prev_hi = Fraction(0)
    for j in jumps:
        mids.append((prev_hi + j.lo) / 2)
        prev_hi = j.hi
    mids.append((prev_hi + 1) / 2)
    try:
        values = [lt_signature_at(V, m, gap_tol=gap_tol) for m in mids]
    except AtJump as exc:
        raise RootIsolationFailure(f"arc midpoint landed inside an eigenvalue gap: {exc}") from exc

    kept_jumps: list[JumpAngle] = []
    kept_values = [values[0]]
    for k, j in enumerate(jumps):
        if values[k + 1] != kept_values[-1]:
            kept_jumps.append(j)
            kept_values.append(values[k + 1])
    fn = SignatureFunction(tuple(kept_jumps), tuple(kept_values))
    assert fn.values[0] == 0 and fn.values[-1] == 0, "arcs adjacent to theta = 0 carry value 0"
    return fn


def rho_integral(V, *, gap_tol: float = DEFAULT_GAP_TOL,
                 theta_precision: float | None = None) -> RhoValue:
    """Integral of the Levine-Tristram signatures over the circle of length
    one; additive under connected sum and negated by mirroring."""
    return signature_function(V, gap_tol=gap_tol, theta_precision=theta_precision).integral()


def env_theta_precision() -> float | None:
    """Working precision override for root isolation, from
    CONCORDANCE_PRECISION."""
    raw = os.environ.get("CONCORDANCE_PRECISION")
    if not raw:
        return None
    value = float(raw)
    if not 0 < value <= 1e-3:
        raise ValueError(f"CONCORDANCE_PRECISION must be in (0, 1e-3], got {raw}")
    return value
