from fractions import Fraction

import pytest

from concordance.laurent import LaurentPoly, normalize_alexander
from concordance.seifert import (
    InvalidSeifert,
    alexander_module_presentation,
    alexander_poly,
    arf,
    connected_sum,
    figure_eight,
    left_trefoil,
    mirror_reverse,
    ordinary_signature,
    right_trefoil,
    unknot,
    validate,
)

from conftest import random_seifert

TREFOIL_DELTA = LaurentPoly({1: 1, 0: -1, -1: 1})
FIG8_DELTA = LaurentPoly({1: -1, 0: 3, -1: -1})


def laplace_det(matrix):
    """Independent Laurent-polynomial determinant by cofactor expansion,
    used as an oracle against the module presentation."""
    n = len(matrix)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return matrix[0][0]
    out = LaurentPoly.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * laplace_det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


class TestValidate:
    def test_trefoil_accepted(self):
        V = validate([[-1, 1], [0, -1]])
        assert V.genus == 1

    def test_unknot_accepted(self):
        assert validate([]).genus == 0

    def test_degenerate_skew_rejected(self):
        with pytest.raises(InvalidSeifert, match="det"):
            validate([[1, 0], [0, 1]])

    def test_odd_size_rejected(self):
        with pytest.raises(InvalidSeifert, match="odd"):
            validate([[1]])

    def test_non_square_rejected(self):
        with pytest.raises(InvalidSeifert, match="square"):
            validate([[1, 2, 3], [4, 5, 6]])

    def test_non_integer_rejected(self):
        with pytest.raises(InvalidSeifert, match="integer"):
            validate([[0.5, 1], [0, 0.5]])


class TestAlexander:
    def test_trefoil(self):
        assert alexander_poly(right_trefoil()) == TREFOIL_DELTA

    def test_unknot(self):
        assert alexander_poly(unknot()).is_one()

    def test_figure_eight(self):
        assert alexander_poly(figure_eight()) == FIG8_DELTA

    def test_value_one_at_one(self, rng):
        for _ in range(30):
            V = random_seifert(rng, rng.randint(1, 3))
            assert alexander_poly(V)(Fraction(1)) == 1

    def test_raw_determinant_at_one_is_skew_determinant(self, rng):
        # det(V - t V^T) at t = 1 is det(V - V^T) = 1 before any normalization
        from concordance import _exact

        for _ in range(20):
            V = random_seifert(rng, rng.randint(1, 3))
            n, e = V.size, V.entries
            rows = [
                [_exact.ptrim((e[i][j], -e[j][i])) for j in range(n)]
                for i in range(n)
            ]
            raw = _exact.poly_det(rows)
            assert _exact.peval(raw, 1) == 1

    def test_normalization_never_fails(self, rng):
        for _ in range(60):
            V = random_seifert(rng, rng.randint(1, 4))
            delta = alexander_poly(V)
            assert normalize_alexander(delta) == delta


class TestArf:
    def test_unknot(self):
        assert arf(unknot()) == 0

    def test_trefoil(self):
        assert arf(right_trefoil()) == 1

    def test_two_trefoils(self):
        assert arf(connected_sum(left_trefoil(), left_trefoil())) == 0

    def test_additive(self, rng):
        for _ in range(40):
            A = random_seifert(rng, rng.randint(1, 3))
            B = random_seifert(rng, rng.randint(1, 3))
            assert arf(connected_sum(A, B)) == arf(A) ^ arf(B)


class TestOrdinarySignature:
    def test_right_trefoil(self):
        assert ordinary_signature(right_trefoil()) == -2

    def test_left_trefoil(self):
        assert ordinary_signature(left_trefoil()) == 2

    def test_figure_eight(self):
        assert ordinary_signature(figure_eight()) == 0

    def test_mirror_negates(self, rng):
        for _ in range(40):
            V = random_seifert(rng, rng.randint(1, 3))
            assert ordinary_signature(mirror_reverse(V)) == -ordinary_signature(V)


class TestConnectedSum:
    def test_unknot_is_identity(self):
        V = figure_eight()
        assert connected_sum(V, unknot()) == V
        assert connected_sum(unknot(), V) == V

    def test_two_trefoils(self):
        W = connected_sum(right_trefoil(), right_trefoil())
        assert W.size == 4
        assert alexander_poly(W) == normalize_alexander(TREFOIL_DELTA * TREFOIL_DELTA)

    def test_trefoil_and_figure_eight(self):
        W = connected_sum(right_trefoil(), figure_eight())
        assert alexander_poly(W) == normalize_alexander(TREFOIL_DELTA * FIG8_DELTA)

    def test_alexander_multiplicative(self, rng):
        for _ in range(30):
            A = random_seifert(rng, rng.randint(1, 3))
            B = random_seifert(rng, rng.randint(1, 3))
            assert alexander_poly(connected_sum(A, B)) == normalize_alexander(
                alexander_poly(A) * alexander_poly(B)
            )

    def test_genus_adds(self, rng):
        A = random_seifert(rng, 2)
        B = random_seifert(rng, 3)
        assert connected_sum(A, B).genus == 5


class TestMirror:
    def test_right_to_left_trefoil(self):
        assert mirror_reverse(right_trefoil()) == left_trefoil()

    def test_unknot(self):
        assert mirror_reverse(unknot()) == unknot()

    def test_involution(self, rng):
        for _ in range(20):
            V = random_seifert(rng, rng.randint(1, 3))
            assert mirror_reverse(mirror_reverse(V)) == V

    def test_alexander_invariant(self, rng):
        for _ in range(20):
            V = random_seifert(rng, rng.randint(1, 3))
            assert alexander_poly(mirror_reverse(V)) == alexander_poly(V)


class TestModulePresentation:
    def test_unknot_trivial_module(self):
        assert alexander_module_presentation(unknot()) == ()

    def test_trefoil_determinant(self):
        P = alexander_module_presentation(right_trefoil())
        assert laplace_det([list(r) for r in P]).equals_up_to_unit(TREFOIL_DELTA)

    def test_connected_sum_with_mirror(self):
        V = connected_sum(right_trefoil(), mirror_reverse(right_trefoil()))
        P = alexander_module_presentation(V)
        assert len(P) == 4
        det = laplace_det([list(r) for r in P])
        assert det.equals_up_to_unit(normalize_alexander(TREFOIL_DELTA * TREFOIL_DELTA))

    def test_entries(self):
        P = alexander_module_presentation(right_trefoil())
        assert P[0][0] == LaurentPoly({1: -1, 0: 1})
        assert P[0][1] == LaurentPoly({1: 1})
        assert P[1][0] == LaurentPoly({0: -1})

    def test_determinant_matches_alexander(self, rng):
        for _ in range(15):
            V = random_seifert(rng, rng.randint(1, 2))
            P = alexander_module_presentation(V)
            assert laplace_det([list(r) for r in P]).equals_up_to_unit(alexander_poly(V))
