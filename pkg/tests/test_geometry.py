import math

import numpy as np
import pytest

from earforge.errors import InvalidBlankError, ValidationError
from earforge.geometry import (BlankSpec, ClosedContour, ContourProfile,
                               CupSpec, blank_contour, deviation_vector,
                               ear_amplitude, initial_blank_diameter,
                               quarter_nodes, read_contour_csv,
                               uniform_theta, write_contour_csv)


def cosine_profile(n=144, mean=35.0, amplitudes=()):
    """Profile mean + sum(a_k * cos(k*theta)) on the uniform n-grid."""
    theta = uniform_theta(n)
    height = np.full(n, float(mean))
    for k, a in amplitudes:
        height = height + a * np.cos(k * theta)
    return ContourProfile(theta, height)


class TestBlankContour:
    def test_pure_circle(self):
        contour = blank_contour(BlankSpec(117.0), n_points=16)
        assert contour.n == 16
        assert np.allclose(contour.radius, 58.5, rtol=0, atol=1e-12)

    def test_two_lobe_radii(self):
        contour = blank_contour(BlankSpec(117.0, a1=1.5), n_points=16)
        assert contour.radius[0] == pytest.approx(60.0, abs=1e-12)
        # theta = pi/2 is sample 4 of 16
        assert contour.radius[4] == pytest.approx(57.0, abs=1e-12)

    def test_negative_radius_is_invalid_blank(self):
        with pytest.raises(InvalidBlankError) as err:
            blank_contour(BlankSpec(4.0, a2=2.5), n_points=16)
        # radius hits -0.5 at theta = pi/4
        assert f"{math.pi / 4:.6g}" in str(err.value)

    def test_mirror_symmetries(self):
        spec = BlankSpec(117.0, a1=0.7, a2=-1.1)
        contour = blank_contour(spec, n_points=144)
        n = contour.n
        r = contour.radius
        for k in range(1, n):
            assert r[k] == pytest.approx(r[n - k], abs=1e-12)          # theta -> -theta
        for k in range(n):
            assert r[k] == pytest.approx(r[(n // 2 - k) % n], abs=1e-12)  # theta -> pi - theta

    @pytest.mark.parametrize("n", [4, 7, 10, 15])
    def test_bad_sample_counts(self, n):
        with pytest.raises(ValidationError):
            blank_contour(BlankSpec(117.0), n_points=n)

    def test_blank_spec_validation(self):
        with pytest.raises(ValidationError):
            BlankSpec(0.0)
        with pytest.raises(ValidationError):
            BlankSpec(float("nan"))


class TestInitialBlankDiameter:
    @staticmethod
    def area_balance_root(d, h):
        """Independent oracle: bisect the area balance for the blank diameter."""
        def imbalance(d0):
            return math.pi * d0 * d0 / 4 - (math.pi * d * d / 4 + math.pi * d * h)
        lo, hi = d, d + 4 * h + 1.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if imbalance(mid) > 0:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    def test_reference_cup(self):
        d0 = initial_blank_diameter(CupSpec(66.03, 35.0))
        assert d0 == pytest.approx(116.63, abs=0.05)
        assert d0 == pytest.approx(self.area_balance_root(66.03, 35.0), abs=1e-9)
        assert d0 == pytest.approx(116.63687624417932, abs=1e-9)

    def test_zero_wall(self):
        assert initial_blank_diameter(CupSpec(50.0, 0.0)) == pytest.approx(50.0)

    def test_direct_formula(self):
        assert initial_blank_diameter(CupSpec(10.0, 10.0)) == pytest.approx(
            22.360679774997898, abs=1e-12)

    def test_monotone_in_both_arguments(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            d, h = rng.uniform(5, 200), rng.uniform(0.1, 100)
            base = initial_blank_diameter(CupSpec(d, h))
            assert initial_blank_diameter(CupSpec(d + 1.0, h)) > base
            assert initial_blank_diameter(CupSpec(d, h + 1.0)) > base

    def test_cup_validation(self):
        with pytest.raises(ValidationError):
            CupSpec(-1.0, 10.0)


class TestEarAmplitude:
    def test_flat_rim(self):
        assert ear_amplitude(cosine_profile()) == 0.0

    def test_four_lobe_peak_to_peak(self):
        profile = cosine_profile(amplitudes=[(4, 0.86)])
        assert ear_amplitude(profile) == pytest.approx(1.72, abs=1e-12)

    def test_shift_invariance(self):
        rng = np.random.default_rng(3)
        theta = uniform_theta(48)
        h = rng.uniform(30, 40, 48)
        base = ear_amplitude(ContourProfile(theta, h))
        shifted = ear_amplitude(ContourProfile(theta, h + 5.4))
        assert shifted == pytest.approx(base, abs=1e-12)

    def test_scaling_about_mean(self):
        rng = np.random.default_rng(4)
        theta = uniform_theta(48)
        h = rng.uniform(30, 40, 48)
        mean = h.mean()
        base = ear_amplitude(ContourProfile(theta, h))
        scaled = ear_amplitude(ContourProfile(theta, mean + 2.5 * (h - mean)))
        assert scaled == pytest.approx(2.5 * base, rel=1e-12)


class TestDeviationVector:
    def test_flat_profile_zero_deviation(self):
        dev = deviation_vector(cosine_profile(mean=35.0), 35.0)
        assert dev.shape == (36,)
        assert np.all(dev == 0.0)

    def test_pure_size_defect(self):
        dev = deviation_vector(cosine_profile(mean=34.0), 35.0)
        assert np.allclose(dev, -1.0, rtol=0, atol=1e-12)

    def test_exact_decimation_on_matching_grid(self):
        # 140 full-circle samples put every quarter node on a sample
        profile = cosine_profile(n=140, amplitudes=[(4, 1.0)])
        dev = deviation_vector(profile, 35.0)
        assert np.allclose(dev, np.cos(4 * quarter_nodes()), rtol=0, atol=1e-12)

    def test_linear_interpolation_on_default_grid(self):
        profile = cosine_profile(n=144, amplitudes=[(4, 1.0)])
        dev = deviation_vector(profile, 35.0)
        assert np.allclose(dev, np.cos(4 * quarter_nodes()), rtol=0, atol=5e-3)

    def test_constant_profile_entries_equal(self):
        dev = deviation_vector(cosine_profile(mean=37.25), 35.0)
        assert np.all(dev == dev[0])

    def test_amplitude_matches_deviation_range_when_extremes_on_nodes(self):
        # cos(2*theta) peaks at the quarter endpoints, which are always nodes
        profile = cosine_profile(amplitudes=[(2, 0.5)])
        dev = deviation_vector(profile, 35.0)
        assert ear_amplitude(profile) == pytest.approx(dev.max() - dev.min(),
                                                       abs=1e-9)

    def test_target_validation(self):
        with pytest.raises(ValidationError):
            deviation_vector(cosine_profile(), 0.0)


class TestContourTypes:
    def test_contour_rejects_nonuniform_spacing(self):
        theta = np.array([0.0, 0.1, 0.3, 0.6, 1.0, 1.5, 2.1, 2.8])
        with pytest.raises(ValidationError):
            ClosedContour(theta, np.ones(8))

    def test_contour_rejects_nonpositive_radius(self):
        theta = uniform_theta(8)
        radius = np.ones(8)
        radius[3] = 0.0
        with pytest.raises(ValidationError):
            ClosedContour(theta, radius)

    def test_profile_rejects_nonfinite_heights(self):
        theta = uniform_theta(8)
        height = np.ones(8)
        height[2] = np.nan
        with pytest.raises(ValidationError):
            ContourProfile(theta, height)

    def test_profile_rejects_decreasing_theta(self):
        theta = uniform_theta(8)[::-1].copy()
        with pytest.raises(ValidationError):
            ContourProfile(theta, np.ones(8))


class TestContourCsv:
    def test_roundtrip_is_exact(self, tmp_path):
        profile = cosine_profile(amplitudes=[(2, 0.3), (4, 0.86)])
        path = tmp_path / "profile.csv"
        write_contour_csv(path, profile.theta, profile.height)
        theta, values = read_contour_csv(path)
        assert np.array_equal(theta, profile.theta)
        assert np.array_equal(values, profile.height)

    def test_header_is_checked(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("angle,height\n0.0,35.0\n")
        with pytest.raises(ValidationError):
            read_contour_csv(path)

    def test_line_endings_are_lf(self, tmp_path):
        path = tmp_path / "profile.csv"
        write_contour_csv(path, np.array([0.0, 1.0]), np.array([35.0, 36.0]))
        raw = path.read_bytes()
        assert b"\r" not in raw
        assert raw.startswith(b"theta_rad,value_mm\n")
