"""Angle representations, reduction semantics and approximate conversions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcrotor import (
    EXACT,
    FLOAT64_DEGREES,
    AngleResidue,
    ApproxAngle,
    InvalidModulusError,
    ModeMismatchError,
    NumericMode,
    OpCounters,
    angles_equal,
    default_tolerance,
    fixed_point,
    parse_mode,
    project,
    reduce_by_subtraction,
    scale_angle,
    to_approx,
)


class TestNumericMode:
    def test_fixed_point_bit_bounds(self):
        assert fixed_point(8).fractional_bits == 8
        assert fixed_point(112).fractional_bits == 112
        with pytest.raises(ValueError):
            fixed_point(7)
        with pytest.raises(ValueError):
            fixed_point(113)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            NumericMode("decimal")

    def test_parse_round_trip(self):
        assert parse_mode("exact") is EXACT
        assert parse_mode("float64") is FLOAT64_DEGREES
        assert parse_mode("fixed:16") == fixed_point(16)
        assert str(fixed_point(16)) == "fixed:16"
        with pytest.raises(ValueError):
            parse_mode("fixed:lots")
        with pytest.raises(ValueError):
            parse_mode("quad")

    def test_default_tolerance(self):
        assert default_tolerance(EXACT, 373) == 0.0
        assert default_tolerance(FLOAT64_DEGREES, 360) == 0.5
        assert default_tolerance(fixed_point(8), 4) == 45.0
        with pytest.raises(InvalidModulusError):
            default_tolerance(FLOAT64_DEGREES, 1)


class TestProject:
    def test_zero_maps_to_zero(self):
        assert project(0, 373) == AngleResidue(0, 373)
        assert project(0, 373).degrees == 0

    def test_appendix_base(self):
        r = project(13, 373)
        assert r.numerator == 13
        assert r.degrees == Fraction(360 * 13, 373)

    def test_modulus_360_makes_unit_step(self):
        assert project(180, 360).degrees == 180

    def test_invalid_modulus(self):
        with pytest.raises(InvalidModulusError):
            project(0, 1)

    def test_residue_range_enforced(self):
        with pytest.raises(ValueError):
            project(373, 373)
        with pytest.raises(ValueError):
            project(-1, 373)


class TestScaleAngle:
    def test_identity(self):
        assert scale_angle(1, AngleResidue(13, 373)) == AngleResidue(13, 373)

    def test_square_step(self):
        # 13 * 13 = 169, the x^2 step of the worked trajectory
        assert scale_angle(13, AngleResidue(13, 373)) == AngleResidue(169, 373)

    def test_unreduced_result_allowed(self):
        assert scale_angle(2, AngleResidue(200, 360)) == AngleResidue(400, 360)

    def test_scale_must_be_positive(self):
        with pytest.raises(ValueError):
            scale_angle(0, AngleResidue(13, 373))

    @settings(max_examples=200)
    @given(st.integers(2, 500), st.data())
    def test_exact_mode_homomorphism(self, p, data):
        # scaling then true reduction agrees with modular multiplication
        a = data.draw(st.integers(1, p - 1))
        v = data.draw(st.integers(0, p - 1))
        reduced = scale_angle(a, project(v, p)).reduce()
        assert reduced.numerator == (a * v) % p
        assert 0 <= reduced.numerator < p


class TestReduceBySubtraction:
    def test_two_wraps(self):
        c = OpCounters()
        assert reduce_by_subtraction(730, 360, c) == 10
        assert c.subtractions == 2

    def test_already_reduced(self):
        c = OpCounters()
        assert reduce_by_subtraction(359, 360, c) == 359
        assert c.subtractions == 0

    def test_cube_of_appendix_base(self):
        # 13^3 = 2197; 2197 - 5*373 = 332
        c = OpCounters()
        assert reduce_by_subtraction(2197, 373, c) == 332
        assert c.subtractions == 5

    def test_strict_comparison_keeps_exact_bound(self):
        c = OpCounters()
        assert reduce_by_subtraction(360, 360, c) == 360
        assert c.subtractions == 0

    def test_exact_multiple_settles_at_bound_not_zero(self):
        c = OpCounters()
        assert reduce_by_subtraction(720, 360, c) == 360
        assert c.subtractions == 1
        c2 = OpCounters()
        assert reduce_by_subtraction(1080, 360, c2) == 360
        assert c2.subtractions == 2

    def test_zero_value(self):
        assert reduce_by_subtraction(0, 360, OpCounters()) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            reduce_by_subtraction(-1, 360, OpCounters())

    def test_float_literal_loop(self):
        c = OpCounters()
        assert reduce_by_subtraction(730.0, 360.0, c) == 10.0
        assert c.subtractions == 2

    def test_fixed_point_angle(self):
        mode = fixed_point(8)
        value = ApproxAngle(730 << 8, mode)
        c = OpCounters()
        reduced = reduce_by_subtraction(value, 360, c)
        assert reduced == ApproxAngle(10 << 8, mode)
        assert c.subtractions == 2

    def test_float64_angle(self):
        c = OpCounters()
        reduced = reduce_by_subtraction(ApproxAngle(365.5, FLOAT64_DEGREES), 360, c)
        assert reduced.raw == pytest.approx(5.5)
        assert c.subtractions == 1

    @settings(max_examples=300)
    @given(st.integers(0, 10**9), st.integers(1, 10**6))
    def test_matches_mod_except_exact_multiples(self, value, m):
        c = OpCounters()
        reduced = reduce_by_subtraction(value, m, c)
        if value % m != 0:
            assert reduced == value % m
        elif value > 0:
            assert reduced == m
        else:
            assert reduced == 0

    @settings(max_examples=300)
    @given(st.integers(1, 10**9), st.integers(1, 10**6))
    def test_subtraction_count_closed_form(self, value, m):
        c = OpCounters()
        reduce_by_subtraction(value, m, c)
        expected = (value - 1) // m if value > m else 0
        assert c.subtractions == expected


class TestToApprox:
    def test_zero(self):
        assert to_approx(AngleResidue(0, 373), FLOAT64_DEGREES).raw == 0.0

    def test_dyadic_fraction_exact(self):
        # 186/372 = 1/2, exactly representable
        assert to_approx(AngleResidue(186, 372), FLOAT64_DEGREES).raw == 180.0

    def test_correctly_rounded_float64(self):
        got = to_approx(AngleResidue(13, 373), FLOAT64_DEGREES)
        assert got.raw == float(Fraction(4680, 373))

    def test_fixed_round_to_nearest(self):
        got = to_approx(AngleResidue(13, 373), fixed_point(8))
        assert got.raw == round(Fraction(4680 * 256, 373))

    def test_exact_mode_rejected(self):
        with pytest.raises(ValueError):
            to_approx(AngleResidue(13, 373), EXACT)

    @pytest.mark.parametrize("p,multiplier", [(360, 1.0), (180, 2.0)])
    def test_round_trip_when_modulus_divides_360(self, p, multiplier):
        for v in range(p):
            assert to_approx(AngleResidue(v, p), FLOAT64_DEGREES).raw == v * multiplier


class TestAnglesEqual:
    def test_exact_equality(self):
        a = ApproxAngle(10.0, FLOAT64_DEGREES)
        assert angles_equal(a, ApproxAngle(10.0, FLOAT64_DEGREES), 0.0)

    def test_outside_tolerance(self):
        a = ApproxAngle(10.0, FLOAT64_DEGREES)
        b = ApproxAngle(10.5, FLOAT64_DEGREES)
        assert not angles_equal(a, b, 0.25)
        assert angles_equal(a, b, 0.5)

    def test_mode_mismatch(self):
        with pytest.raises(ModeMismatchError):
            angles_equal(
                ApproxAngle(1.0, FLOAT64_DEGREES), ApproxAngle(256, fixed_point(8)), 0.1
            )

    def test_negative_tolerance(self):
        a = ApproxAngle(1.0, FLOAT64_DEGREES)
        with pytest.raises(ValueError):
            angles_equal(a, a, -0.1)

    def test_fifth_power_matches_target_within_half_step(self):
        # 13^5 = 158 (mod 373), reached through scale/reduce on numerators
        p, x, y = 373, 13, 158
        acc = project(x, p)
        for _ in range(4):
            acc = scale_angle(x, acc)
            acc = AngleResidue(reduce_by_subtraction(acc.numerator, p, OpCounters()), p)
        assert acc.numerator == y
        tol = default_tolerance(FLOAT64_DEGREES, p)
        assert angles_equal(
            to_approx(acc, FLOAT64_DEGREES), to_approx(project(y, p), FLOAT64_DEGREES), tol
        )

    def test_fixed_tolerance_in_raw_units(self):
        mode = fixed_point(8)
        a = ApproxAngle(1000, mode)
        b = ApproxAngle(1002, mode)
        assert angles_equal(a, b, 2 / 256)
        assert not angles_equal(a, b, 1 / 256)


class TestAngleResidue:
    def test_reduce_normalises(self):
        assert AngleResidue(400, 360).reduce() == AngleResidue(40, 360)
        assert AngleResidue(720, 360).reduce() == AngleResidue(0, 360)

    def test_invariants_enforced(self):
        with pytest.raises(InvalidModulusError):
            AngleResidue(0, 1)
        with pytest.raises(ValueError):
            AngleResidue(-1, 5)

    def test_approx_angle_needs_approximate_mode(self):
        with pytest.raises(ValueError):
            ApproxAngle(1.0, EXACT)
