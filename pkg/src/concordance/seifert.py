"""Seifert matrices and the classical abelian knot invariants derived from
them: Alexander polynomial, Arf invariant, ordinary signature, connected
sums, and mirrors.

A Seifert matrix is a square integer matrix V of even size 2g whose skew
part V - V^T is unimodular with det(V - V^T) = 1; g is the genus of the
underlying surface.  The empty 0x0 matrix is the unknot.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Sequence

from . import _exact, laurent
from .laurent import LaurentPoly


class InvalidSeifert(ValueError):
    """Raised when an integer matrix is not a Seifert matrix."""


@dataclass(frozen=True)
class SeifertMatrix:
    """Validated Seifert matrix; immutable and safe to share."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check(self.entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return len(self.entries) // 2

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> list[list[int]]:
        return self.rows()

    def __str__(self):
        if not self.entries:
            return "[]"
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


def _check(entries) -> None:
    n = len(entries)
    for row in entries:
        if len(row) != n:
            raise InvalidSeifert("matrix is not square")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidSeifert(f"entry {x!r} is not an integer")
    if n % 2:
        raise InvalidSeifert("matrix size is odd; a Seifert matrix has even size 2g")
    skew = [[entries[i][j] - entries[j][i] for j in range(n)] for i in range(n)]
    d = _exact.int_det(skew)
    if d != 1:
        raise InvalidSeifert(f"det(V - V^T) = {d}, expected 1")


def validate(matrix: Sequence[Sequence[int]] | SeifertMatrix) -> SeifertMatrix:
    """Validate an integer matrix as a Seifert matrix.

    Accepts the empty matrix (the unknot).  Raises InvalidSeifert naming the
    violated condition.
    """
    if isinstance(matrix, SeifertMatrix):
        return matrix
    try:
        rows = tuple(tuple(operator.index(x) for x in row) for row in matrix)
    except TypeError as exc:
        raise InvalidSeifert(f"entries must be integers: {exc}") from exc
    return SeifertMatrix(rows)


# ---------------------------------------------------------------------------
# standard small knots


def unknot() -> SeifertMatrix:
    return SeifertMatrix(())


def right_trefoil() -> SeifertMatrix:
    return validate([[-1, 1], [0, -1]])


def left_trefoil() -> SeifertMatrix:
    return validate([[1, 0], [-1, 1]])


def figure_eight() -> SeifertMatrix:
    return validate([[1, 1], [0, -1]])


# ---------------------------------------------------------------------------
# invariants


def alexander_poly(V: SeifertMatrix) -> LaurentPoly:
    """Normalized Alexander polynomial det(V - t V^T).

    The determinant is taken exactly over Z[t] and then centered so that
    the result is symmetric in t -> 1/t with value 1 at t = 1.
    """
    n = V.size
    e = V.entries
    rows = [
        [_exact.ptrim((e[i][j], -e[j][i])) for j in range(n)]
        for i in range(n)
    ]
    det = _exact.poly_det(rows)
    return laurent.normalize_alexander(LaurentPoly.from_coeffs(det))


def arf(V: SeifertMatrix) -> int:
    """Arf invariant in Z/2, via the determinant criterion:
    Arf = 0 iff the Alexander polynomial at -1 is +-1 mod 8."""
    n = V.size
    e = V.entries
    d = _exact.int_det([[e[i][j] + e[j][i] for j in range(n)] for i in range(n)])
    return 0 if d % 8 in (1, 7) else 1


def ordinary_signature(V: SeifertMatrix) -> int:
    """Signature of the symmetric matrix V + V^T, exactly."""
    n = V.size
    e = V.entries
    return _exact.symmetric_signature(
        [[e[i][j] + e[j][i] for j in range(n)] for i in range(n)]
    )


def connected_sum(V1: SeifertMatrix, V2: SeifertMatrix) -> SeifertMatrix:
    """Block direct sum; Alexander polynomials multiply, Arf adds mod 2."""
    n1, n2 = V1.size, V2.size
    rows = []
    for i in range(n1):
        rows.append(tuple(V1.entries[i]) + (0,) * n2)
    for i in range(n2):
        rows.append((0,) * n1 + tuple(V2.entries[i]))
    return SeifertMatrix(tuple(rows))


def mirror_reverse(V: SeifertMatrix) -> SeifertMatrix:
    """Seifert matrix -V^T of the reversed mirror image."""
    n = V.size
    e = V.entries
    return SeifertMatrix(tuple(tuple(-e[j][i] for j in range(n)) for i in range(n)))


def alexander_module_presentation(V: SeifertMatrix) -> tuple[tuple[LaurentPoly, ...], ...]:
    """Presentation matrix t V - V^T of the rational Alexander module.

    Its determinant equals the Alexander polynomial up to units, and the
    module is nontrivial exactly when that polynomial is not 1.
    """
    n = V.size
    e = V.entries
    return tuple(
        tuple(LaurentPoly({1: e[i][j], 0: -e[j][i]}) for j in range(n))
        for i in range(n)
    )
