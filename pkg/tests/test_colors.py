import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from labfcm import (
    ColorPoint,
    ColorSet,
    lab_array_to_srgb_u8,
    lab_distance,
    load_colorset_csv,
    srgb_array_to_lab,
    srgb_to_lab,
)
from labfcm.errors import DomainError, EmptyInputError, ParseError, ShapeError

# round to 6 decimals so squared differences stay clear of float underflow
coord = st.floats(min_value=-150.0, max_value=150.0, allow_nan=False).map(
    lambda v: round(v, 6)
)
lab_triple = st.tuples(coord, coord, coord)


class TestLabDistance:
    def test_identity_is_zero(self):
        p = ColorPoint(12.5, -3.0, 60.0)
        assert lab_distance(p, p) == 0.0

    def test_hand_evaluated_value(self):
        # sqrt(5.00^2 + 2.27^2 + 1.52^2) against the origin
        expected = math.sqrt(25.0 + 5.1529 + 2.3104)
        got = lab_distance((5.00, 2.27, 1.52), (0.0, 0.0, 0.0))
        assert got == pytest.approx(expected, abs=1e-12)
        assert got == pytest.approx(5.697657, abs=1e-6)

    @given(lab_triple, lab_triple)
    def test_symmetry(self, p, q):
        assert lab_distance(p, q) == lab_distance(q, p)

    @given(lab_triple, lab_triple)
    def test_nonnegative_and_definite(self, p, q):
        d = lab_distance(p, q)
        assert d >= 0.0
        if p == q:
            assert d == 0.0
        else:
            assert d > 0.0

    @given(lab_triple, lab_triple, lab_triple)
    def test_triangle_inequality(self, p, q, r):
        lhs = lab_distance(p, r)
        rhs = lab_distance(p, q) + lab_distance(q, r)
        assert lhs <= rhs * (1.0 + 1e-9) + 1e-12


class TestSrgbToLab:
    def test_white(self):
        lab = srgb_to_lab(255, 255, 255)
        assert lab.L == pytest.approx(100.0, abs=0.01)
        assert lab.a == pytest.approx(0.0, abs=0.01)
        assert lab.b == pytest.approx(0.0, abs=0.01)

    def test_black(self):
        lab = srgb_to_lab(0, 0, 0)
        assert lab == pytest.approx((0.0, 0.0, 0.0), abs=1e-9)

    def test_red_against_reference_conversion(self):
        # Frozen from an independent converter (scikit-image, D65 2deg).
        lab = srgb_to_lab(255, 0, 0)
        assert lab.L == pytest.approx(53.2406, abs=0.05)
        assert lab.a == pytest.approx(80.0923, abs=0.05)
        assert lab.b == pytest.approx(67.2028, abs=0.05)

    def test_sampled_colors_against_skimage(self):
        skcolor = pytest.importorskip("skimage.color")
        rng = np.random.default_rng(7)
        rgb = rng.integers(0, 256, size=(64, 3))
        ours = srgb_array_to_lab(rgb)
        theirs = skcolor.rgb2lab(rgb[None, :, :] / 255.0)[0]
        assert np.abs(ours - theirs).max() < 0.05

    @given(st.integers(0, 254), st.integers(1, 255))
    def test_gray_axis_monotone_in_lightness(self, lo, step):
        hi = min(lo + step, 255)
        l_lo = srgb_to_lab(lo, lo, lo).L
        l_hi = srgb_to_lab(hi, hi, hi).L
        assert l_hi > l_lo

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            srgb_to_lab(300, 0, 0)
        with pytest.raises(DomainError):
            srgb_array_to_lab(np.array([[-1.0, 0.0, 0.0]]))

    def test_round_trip_through_lab(self):
        rng = np.random.default_rng(11)
        rgb = rng.integers(0, 256, size=(256, 3)).astype(np.uint8)
        back = lab_array_to_srgb_u8(srgb_array_to_lab(rgb))
        assert np.array_equal(back, rgb)

    def test_out_of_gamut_lab_clamps(self):
        out = lab_array_to_srgb_u8(np.array([[150.0, 0.0, 0.0], [-20.0, 0.0, 0.0]]))
        assert out.tolist() == [[255, 255, 255], [0, 0, 0]]


class TestColorSet:
    def test_preserves_out_of_gamut_coordinates(self):
        cs = ColorSet(np.array([[-8.04, -1.00, -30.34]]))
        assert cs.point(0) == (-8.04, -1.00, -30.34)

    def test_rejects_empty(self):
        with pytest.raises(EmptyInputError):
            ColorSet(np.empty((0, 3)))

    def test_rejects_bad_shape(self):
        with pytest.raises(ShapeError):
            ColorSet(np.zeros((4, 2)))

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            ColorSet(np.array([[np.nan, 0.0, 0.0]]))

    def test_order_preserved(self, sample_colorset):
        assert sample_colorset.n == 10
        assert sample_colorset.point(9) == (5.00, 2.27, 1.52)


class TestCsvLoading:
    def test_sample_file(self, sample_csv):
        cs = load_colorset_csv(sample_csv)
        assert cs.n == 10
        assert cs.point(0) == (32.65, 55.94, 28.89)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("# only a comment\n\n", encoding="utf-8")
        with pytest.raises(EmptyInputError):
            load_colorset_csv(path)

    def test_non_numeric_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n", encoding="utf-8")
        with pytest.raises(ParseError) as exc:
            load_colorset_csv(path)
        assert exc.value.line == 1

    def test_wrong_field_count(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.0,2.0\n3.0,4.0,5.0,6.0\n", encoding="utf-8")
        with pytest.raises(ParseError) as exc:
            load_colorset_csv(path)
        assert exc.value.line == 1

    def test_error_names_later_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2,3\n# fine\n4,5,oops\n", encoding="utf-8")
        with pytest.raises(ParseError) as exc:
            load_colorset_csv(path)
        assert exc.value.line == 3

    def test_rejects_non_finite_value(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,nan,3\n", encoding="utf-8")
        with pytest.raises(ParseError):
            load_colorset_csv(path)
