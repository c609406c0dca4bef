"""Fraction-free exact kernels shared across the package.

Dense integer polynomials are tuples of coefficients in ascending order of
degree, the zero polynomial being the empty tuple.  Determinants use Bareiss
elimination (exact over Z and over Z[t]); block-diagonal inputs, which arise
from connected sums, are split into connected components first so large
direct sums stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


# ---------------------------------------------------------------------------
# dense integer polynomials


def ptrim(coeffs) -> tuple:
    coeffs = tuple(coeffs)
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return coeffs[:end]


def padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return ptrim(out)


def pneg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def psub(a: tuple, b: tuple) -> tuple:
    return padd(a, pneg(b))


def pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                if d:
                    out[i + j] += c * d
    return ptrim(out)


def pdiv_exact(num: tuple, den: tuple) -> tuple:
    """Quotient of an exact division in Z[t] (or Q[t]).

    Raises ValueError if den does not divide num; in the exact case the long
    division never leaves the coefficient ring, which is what Bareiss
    elimination guarantees for its internal divisions.
    """
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(ptrim(num)) == 0:
        return ()
    quot = [0] * (len(num) - dn) if len(num) > dn else []
    top = len(num) - 1
    while top >= dn:
        while top >= 0 and num[top] == 0:
            top -= 1
        if top < dn:
            break
        c = num[top]
        q, r = divmod(c, lead) if isinstance(c, int) and isinstance(lead, int) else (c / lead, 0)
        if r:
            raise ValueError("inexact polynomial division")
        shift = top - dn
        quot[shift] = q
        for i, d in enumerate(den):
            num[shift + i] -= q * d
        top -= 1
    if any(num):
        raise ValueError("inexact polynomial division")
    return ptrim(quot)


def peval(coeffs: tuple, x):
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


# ---------------------------------------------------------------------------
# block decomposition

def _components(n: int, nonzero) -> list[list[int]]:
    """Partition 0..n-1 by the symmetric closure of the nonzero pattern."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if nonzero(i, j) or nonzero(j, i):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


# ---------------------------------------------------------------------------
# determinants

def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    comps = _components(n, lambda i, j: rows[i][j] != 0)
    if len(comps) > 1:
        det = 1
        for idx in comps:
            det *= int_det([[rows[i][j] for j in idx] for i in idx])
        return det
    m = [list(map(int, row)) for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row = m[i]
            top = m[k]
            for j in range(k + 1, n):
                row[j] = (piv * row[j] - mik * top[j]) // prev
        prev = piv
    return sign * m[n - 1][n - 1]


def poly_det(rows: Sequence[Sequence[tuple]]) -> tuple:
    """Exact determinant of a square matrix over Z[t].

    Entries are ascending coefficient tuples; returns the determinant in the
    same encoding.  The empty matrix has determinant 1.
    """
    n = len(rows)
    if n == 0:
        return (1,)
    comps = _components(n, lambda i, j: bool(ptrim(rows[i][j])))
    if len(comps) > 1:
        det = (1,)
        for idx in comps:
            det = pmul(det, poly_det([[rows[i][j] for j in idx] for i in idx]))
        return det
    m = [[ptrim(e) for e in row] for row in rows]
    sign = 1
    prev = (1,)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return ()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                lhs = pmul(piv, m[i][j])
                rhs = pmul(mik, m[k][j]) if mik else ()
                num = psub(lhs, rhs)
                m[i][j] = pdiv_exact(num, prev) if num else ()
        prev = piv
    d = m[n - 1][n - 1]
    return pneg(d) if sign < 0 else d


def symmetric_signature(rows: Sequence[Sequence]) -> int:
    """Signature (positive minus negative inertia) of a symmetric rational
    matrix, by exact congruence reduction.

    Off-diagonal pivots with an all-zero diagonal are handled by the usual
    row+column addition, which turns a hyperbolic pair into one positive and
    one negative diagonal pivot.
    """
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    live = list(range(n))
    sig = 0
    while live:
        piv = next((i for i in live if a[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in live for j in live if i != j and a[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            for k in live:
                a[i][k] += a[j][k]
            for k in live:
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        sig += 1 if d > 0 else -1
        live.remove(piv)
        col = {r: a[r][piv] for r in live}
        for r in live:
            cr = col[r]
            if cr:
                top = a[piv]
                ar = a[r]
                for c in live:
                    ar[c] -= cr * top[c] / d
    return sig
