import math
from fractions import Fraction

import pytest

from concordance.seifert import (
    connected_sum,
    figure_eight,
    left_trefoil,
    mirror_reverse,
    right_trefoil,
    unknot,
    validate,
)
from concordance.signature import (
    AtJump,
    JumpAngle,
    env_theta_precision,
    lt_signature_at,
    rho_integral,
    signature_function,
)

from conftest import random_seifert, rho_riemann


def trefoil_sum(m):
    out = unknot()
    for _ in range(m):
        out = connected_sum(out, left_trefoil())
    return out


# A Seifert matrix whose Alexander polynomial 2t - 3 + 2t^-1 has circle
# roots at the irrational angle acos(3/4) / 2pi; exercises the interval
# enclosure path.
IRRATIONAL = validate([[1, 1], [0, 2]])
IRRATIONAL_THETA = math.acos(0.75) / (2 * math.pi)


class TestPointwise:
    def test_left_trefoil_at_half(self):
        assert lt_signature_at(left_trefoil(), Fraction(1, 2)) == 2

    def test_unknot_anywhere(self):
        for theta in (Fraction(1, 7), Fraction(1, 2), Fraction(9, 10)):
            assert lt_signature_at(unknot(), theta) == 0

    def test_figure_eight_at_third(self):
        assert lt_signature_at(figure_eight(), Fraction(1, 3)) == 0

    def test_at_jump_raises(self):
        with pytest.raises(AtJump):
            lt_signature_at(left_trefoil(), Fraction(1, 6))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            lt_signature_at(left_trefoil(), Fraction(3, 2))

    def test_conjugation_symmetry(self, rng):
        for _ in range(25):
            V = random_seifert(rng, rng.randint(1, 3))
            theta = Fraction(rng.randint(1, 99), 211)
            assert lt_signature_at(V, theta) == lt_signature_at(V, 1 - theta)

    def test_values_are_even(self, rng):
        for _ in range(25):
            V = random_seifert(rng, rng.randint(1, 3))
            theta = Fraction(rng.randint(1, 210), 211)
            assert lt_signature_at(V, theta) % 2 == 0


class TestStepFunction:
    def test_left_trefoil(self):
        fn = signature_function(left_trefoil())
        assert fn.jumps == (
            JumpAngle(Fraction(1, 6), Fraction(1, 6)),
            JumpAngle(Fraction(5, 6), Fraction(5, 6)),
        )
        assert fn.values == (0, 2, 0)

    def test_unknot(self):
        fn = signature_function(unknot())
        assert fn.jumps == () and fn.values == (0,)

    def test_figure_eight_constant(self):
        fn = signature_function(figure_eight())
        assert fn.jumps == () and fn.values == (0,)

    def test_irrational_jumps_are_enclosed(self):
        fn = signature_function(IRRATIONAL)
        assert len(fn.jumps) == 2
        first = fn.jumps[0]
        assert not first.exact
        assert float(first.width) < 1e-9
        assert first.lo < Fraction(IRRATIONAL_THETA) < first.hi
        assert fn.values == (0, 2, 0)
        with pytest.raises(AtJump):
            fn.value_at(first.midpoint)

    def test_value_at(self):
        fn = signature_function(left_trefoil())
        assert fn.value_at(Fraction(1, 12)) == 0
        assert fn.value_at(Fraction(1, 2)) == 2
        assert fn.value_at(Fraction(11, 12)) == 0

    def test_symmetry_random(self, rng):
        for _ in range(10):
            V = random_seifert(rng, rng.randint(1, 2))
            assert signature_function(V).is_conjugation_symmetric()

    def test_samples_skip_jumps(self):
        fn = signature_function(left_trefoil())
        got = dict(fn.samples(6))
        # sample points (2k+1)/12: 1/12, 3/12, ..., 11/12
        assert got[float(Fraction(1, 12))] == 0
        assert got[float(Fraction(5, 12))] == 2

    def test_json_shape(self):
        fn = signature_function(left_trefoil())
        out = fn.to_json()
        assert out["values"] == [0, 2, 0]
        assert out["jumps"][0] == {"lo": "1/6", "hi": "1/6", "exact": True}


class TestRhoIntegral:
    def test_left_trefoil_exact(self):
        rho = rho_integral(left_trefoil())
        assert rho.value == Fraction(4, 3)
        assert rho.error_bound == 0

    def test_unknot(self):
        rho = rho_integral(unknot())
        assert rho.value == 0 and rho.error_bound == 0

    def test_trefoil_sums_direct(self):
        for m in (2, 4):
            rho = rho_integral(trefoil_sum(m))
            assert rho.value == Fraction(4 * m, 3)
            assert rho.error_bound == 0

    def test_riemann_oracle(self):
        rho = rho_integral(left_trefoil())
        assert abs(float(rho.value) - rho_riemann(left_trefoil(), 10_000)) < 1e-3

    def test_irrational_case_has_error_bound(self):
        rho = rho_integral(IRRATIONAL)
        assert 0 < rho.error_bound < Fraction(1, 10**8)
        expected = 2 * (1 - 2 * IRRATIONAL_THETA)
        assert abs(float(rho.value) - expected) < 1e-8

    def test_additive_under_connected_sum(self, rng):
        for _ in range(10):
            A = random_seifert(rng, rng.randint(1, 2))
            B = random_seifert(rng, rng.randint(1, 2))
            ra, rb = rho_integral(A), rho_integral(B)
            rab = rho_integral(connected_sum(A, B))
            gap = abs(rab.value - ra.value - rb.value)
            assert gap <= rab.error_bound + ra.error_bound + rb.error_bound

    def test_mirror_negates(self, rng):
        for _ in range(10):
            V = random_seifert(rng, rng.randint(1, 2))
            r, rm = rho_integral(V), rho_integral(mirror_reverse(V))
            assert abs(r.value + rm.value) <= r.error_bound + rm.error_bound

    def test_algebraically_slice_form_vanishes(self, rng):
        for _ in range(8):
            V = random_seifert(rng, rng.randint(1, 2))
            W = connected_sum(V, mirror_reverse(V))
            rho = rho_integral(W)
            assert abs(rho.value) <= rho.error_bound

    def test_against_dense_sampling(self, rng):
        gap = 1.0 / 10_000
        for V in (left_trefoil(), figure_eight(), trefoil_sum(2),
                  connected_sum(right_trefoil(), figure_eight()), IRRATIONAL):
            fn = signature_function(V)
            approx = rho_riemann(V, 10_000)
            bound = 10 * max(1, len(fn.jumps)) * gap
            assert abs(float(fn.integral().value) - approx) <= bound


class TestMixedJumps:
    """Rational and irrational jump angles interleaved on one circle."""

    def test_interleaving(self):
        W = connected_sum(left_trefoil(), IRRATIONAL)
        fn = signature_function(W)
        assert [j.exact for j in fn.jumps] == [False, True, True, False]
        assert fn.values == (0, 2, 4, 2, 0)
        assert fn.jumps[1].lo == Fraction(1, 6)
        rho = fn.integral()
        expected = 4 / 3 + 2 * (1 - 2 * IRRATIONAL_THETA)
        assert abs(float(rho.value) - expected) <= float(rho.error_bound) + 1e-9

    def test_repeated_irrational_root_jumps_by_four(self):
        fn = signature_function(connected_sum(IRRATIONAL, IRRATIONAL))
        assert fn.values == (0, 4, 0)
        assert len(fn.jumps) == 2

    def test_irrational_slice_form_is_exactly_zero(self):
        W = connected_sum(IRRATIONAL, mirror_reverse(IRRATIONAL))
        fn = signature_function(W)
        assert fn.jumps == () and fn.values == (0,)
        rho = fn.integral()
        assert rho.value == 0 and rho.error_bound == 0


class TestEnvPrecision:
    def test_unset_is_none(self, monkeypatch):
        monkeypatch.delenv("CONCORDANCE_PRECISION", raising=False)
        assert env_theta_precision() is None

    def test_parses(self, monkeypatch):
        monkeypatch.setenv("CONCORDANCE_PRECISION", "1e-12")
        assert env_theta_precision() == 1e-12

    def test_rejects_junk(self, monkeypatch):
        monkeypatch.setenv("CONCORDANCE_PRECISION", "0.5")
        with pytest.raises(ValueError):
            env_theta_precision()

    def test_tighter_precision_honored(self):
        fn = signature_function(IRRATIONAL, theta_precision=1e-13)
        assert float(fn.jumps[0].width) < 1e-13
