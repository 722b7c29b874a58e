import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdfink.corpus import Stroke
from fdfink.features import (
    DIRECTION_CENTERS,
    FdfMatrix,
    FeatureError,
    angle_between,
    deg2fuzzydir,
    dominant_direction,
    fdf_matrix,
    fuzzy_membership,
    mean_fdf,
)
from fdfink.pipeline import analyze_stroke, extract_fdf
from fdfink.smoothing import SmoothingConfig
from fdfink.turning import CriticalPoints

angles = st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False)


class TestAngleBetween:
    def test_diagonal(self):
        assert angle_between((1, 1), (0, 0)) == pytest.approx(math.pi / 4)

    def test_negative_x_axis(self):
        assert angle_between((-1, 0), (0, 0)) == pytest.approx(math.pi)

    def test_downward(self):
        assert angle_between((0, -2), (0, 0)) == pytest.approx(-math.pi / 2)

    def test_coincident_raises(self):
        with pytest.raises(FeatureError):
            angle_between((1.0, 2.0), (1.0, 2.0))

    def test_never_returns_negative_pi(self):
        assert angle_between((-1.0, -0.0), (0.0, 0.0)) == pytest.approx(math.pi)
        assert angle_between((-1.0, -0.0), (0.0, 0.0)) > 0


class TestFuzzyMembership:
    def test_exact_center(self):
        assert fuzzy_membership(0.0, 0.0) == 1.0

    def test_halfway(self):
        assert fuzzy_membership(0.0, math.pi / 8) == pytest.approx(0.5, abs=1e-9)

    def test_wraps_at_seam(self):
        assert fuzzy_membership(math.pi, -7 * math.pi / 8) == pytest.approx(0.5, abs=1e-9)

    def test_every_direction_center_scores_one(self):
        for d, center in enumerate(DIRECTION_CENTERS, start=1):
            assert fuzzy_membership(center, center) == 1.0
            assert deg2fuzzydir(center).primary == (d, 1.0)

    def test_piecewise_linear_slope(self):
        # Finite differences against the analytic slope 4/pi.
        rng = np.random.default_rng(3)
        h = 1e-6
        slope = 4.0 / math.pi
        for _ in range(100):
            center = DIRECTION_CENTERS[rng.integers(0, 8)]
            delta = rng.uniform(0.05, math.pi / 4 - 0.05)
            sign = rng.choice([-1.0, 1.0])
            deg = center + sign * delta
            fd = (fuzzy_membership(center, deg + h) - fuzzy_membership(center, deg - h)) / (2 * h)
            assert fd == pytest.approx(-sign * slope, rel=1e-4)


class TestDeg2FuzzyDir:
    def test_center_of_direction_one(self):
        pair = deg2fuzzydir(0.0)
        assert pair.primary == (1, 1.0)
        assert pair.secondary == (2, 0.0)

    def test_equidistant_tie_prefers_lower_index(self):
        pair = deg2fuzzydir(math.pi / 8)
        assert pair.primary == (1, 0.5)
        assert pair.secondary == (2, 0.5)

    def test_seam_angle(self):
        pair = deg2fuzzydir(math.pi)
        assert pair.primary == (5, 1.0)
        assert pair.secondary == (6, 0.0)

    def test_negative_seam_matches_positive(self):
        assert deg2fuzzydir(-math.pi) == deg2fuzzydir(math.pi)

    def test_tie_across_the_wrap(self):
        pair = deg2fuzzydir(-math.pi / 8)
        assert pair.primary == (1, 0.5)
        assert pair.secondary == (8, 0.5)

    @settings(max_examples=300, deadline=None)
    @given(angles)
    def test_row_invariants(self, deg):
        pair = deg2fuzzydir(deg)
        (d1, m1), (d2, m2) = pair.primary, pair.secondary
        assert m1 + m2 == pytest.approx(1.0, abs=1e-9)
        assert m1 >= m2 >= 0.0
        assert (d1 - d2) % 8 in (1, 7)
        assert 1 <= d1 <= 8 and 1 <= d2 <= 8

    def test_matches_batch_kernel(self, backend):
        # The scalar route and the batched kernels are independent
        # implementations; they must agree everywhere.
        from fdfink._backends import kernels

        degs = np.linspace(-math.pi, math.pi, 20001)
        d1, m1, d2, m2 = kernels().fuzzy_pairs(degs)
        for i in (0, 1, 137, 5000, 10000, 15001, 20000):
            pair = deg2fuzzydir(float(degs[i]))
            assert pair.primary == (int(d1[i]), pytest.approx(float(m1[i]), abs=1e-12))
            assert pair.secondary == (int(d2[i]), pytest.approx(float(m2[i]), abs=1e-12))


class TestDominantDirection:
    def test_axis_aligned(self):
        assert dominant_direction((0, 0), (5, 0)) == 1
        assert dominant_direction((0, 0), (0, 5)) == 3

    def test_coincident_gives_zero(self):
        assert dominant_direction((1, 1), (1, 1)) == 0


class TestFdfMatrix:
    def test_single_segment_along_x(self, backend):
        cp = CriticalPoints(np.array([0, 1]), np.array([[0.0, 0.0], [4.0, 0.0]]))
        matrix = fdf_matrix(cp)
        rows = matrix.rows()
        assert len(rows) == 1
        assert rows[0].primary == (1, 1.0)
        assert rows[0].secondary == (2, 0.0)

    def test_l_shape(self, backend):
        cp = CriticalPoints(
            np.array([0, 4, 9]), np.array([[0.0, 0.0], [4.0, 0.0], [4.0, 4.0]])
        )
        rows = fdf_matrix(cp).rows()
        assert rows[0].primary == (1, 1.0) and rows[0].secondary == (2, 0.0)
        assert rows[1].primary == (3, 1.0) and rows[1].secondary == (4, 0.0)

    def test_row_count_is_k_minus_one(self, backend):
        pts = np.array([[0.0, 0.0], [1.0, 0.2], [2.0, 0.0], [3.0, 0.4], [4.0, 0.0]])
        matrix = fdf_matrix(CriticalPoints(np.arange(5), pts))
        assert len(matrix) == 4

    def test_degenerate_pairs_skipped(self, backend):
        pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
        matrix = fdf_matrix(CriticalPoints(np.array([0, 1, 2]), pts))
        assert len(matrix) == 1
        assert matrix.skipped == 1

    def test_all_degenerate_raises(self, backend):
        pts = np.array([[1.0, 1.0], [1.0, 1.0]])
        with pytest.raises(FeatureError):
            fdf_matrix(CriticalPoints(np.array([0, 1]), pts))


class TestMeanFdf:
    def test_single_axis_row(self):
        matrix = FdfMatrix(np.array([[1, 2]]), np.array([[1.0, 0.0]]))
        assert np.array_equal(mean_fdf(matrix), [1, 0, 0, 0, 0, 0, 0, 0])

    def test_averaging_rule(self):
        matrix = FdfMatrix(
            np.array([[1, 2], [1, 2]]), np.array([[0.5, 0.5], [1.0, 0.0]])
        )
        fdf = mean_fdf(matrix)
        assert fdf[0] == pytest.approx(0.75)
        assert fdf[1] == pytest.approx(0.25)
        assert np.array_equal(fdf[2:], np.zeros(6))

    def test_mean_divides_by_occurrences_per_direction(self):
        # Two rows record direction 1 with different memberships; its
        # mean is their average regardless of what other rows hold.
        m23, m34 = 0.8, 0.3
        matrix = FdfMatrix(
            np.array([[3, 4], [1, 2], [1, 8]]),
            np.array([[0.9, 0.1], [m23, 1 - m23], [m34, 1 - m34]]),
        )
        assert mean_fdf(matrix)[0] == pytest.approx((m23 + m34) / 2)

    def test_zero_membership_counts_as_occurrence(self):
        matrix = FdfMatrix(
            np.array([[1, 2], [2, 3]]), np.array([[1.0, 0.0], [0.6, 0.4]])
        )
        assert mean_fdf(matrix)[1] == pytest.approx(0.3)

    def test_empty_matrix_raises(self):
        matrix = FdfMatrix(np.empty((0, 2), dtype=np.int64), np.empty((0, 2)))
        with pytest.raises(FeatureError):
            mean_fdf(matrix)

    def test_components_in_unit_interval(self, jittered_corpus):
        for rec in jittered_corpus.items[:20]:
            fdf = extract_fdf(rec.stroke)
            assert np.all(fdf >= 0.0) and np.all(fdf <= 1.0)


class TestExtractFdf:
    def test_horizontal_stroke_one_hot(self, backend):
        pts = np.column_stack([np.linspace(0, 10, 12), np.zeros(12)])
        assert np.array_equal(extract_fdf(Stroke(pts)), [1, 0, 0, 0, 0, 0, 0, 0])

    def test_rotated_stroke_shifts_two_bins(self, backend):
        pts = np.column_stack([np.linspace(0, 10, 12), np.zeros(12)])
        rotated = np.column_stack([-pts[:, 1], pts[:, 0]])
        assert np.array_equal(extract_fdf(Stroke(rotated)), [0, 0, 1, 0, 0, 0, 0, 0])

    def test_all_coincident_raises(self, backend):
        with pytest.raises(FeatureError):
            extract_fdf(Stroke(np.ones((8, 2))))

    def test_translation_invariance_tolerance(self):
        # Arbitrary real translations agree to float noise; integer-grid
        # translations are exercised bit-exactly in the acceptance suite.
        rng = np.random.default_rng(9)
        pts = np.cumsum(rng.normal(0, 1, (40, 2)), axis=0)
        base = extract_fdf(Stroke(pts))
        shifted = extract_fdf(Stroke(pts + np.array([12.7, -3.9])))
        assert np.allclose(base, shifted, atol=1e-9)

    def test_analysis_matches_extract(self, jittered_corpus):
        rec = jittered_corpus.items[3]
        analysis = analyze_stroke(rec.stroke, SmoothingConfig())
        assert np.array_equal(analysis.fdf, extract_fdf(rec.stroke, SmoothingConfig()))
        assert analysis.trimmed.k <= analysis.critical.k
