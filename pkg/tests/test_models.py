import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsekit import (binarize, curvature, cv_velocity, edge_function,
                    edge_velocity, gradient_magnitude, rasterize_seeds,
                    region_means, region_velocity, zhang_velocity)

from conftest import square_seed, two_region_scene


def fig3c_config():
    """Dark object, bright background, seed blob surrounding the object."""
    image, truth = two_region_scene()
    phi = rasterize_seeds(square_seed(28, 28, 100, 100, -1), 128, 128)
    return image, truth, phi


class TestEdgeFunction:
    def test_constant_image_is_one_in_interior(self):
        # zero padding attenuates the smoothed field near borders, which
        # shows up as spurious gradient there; away from the border band
        # (half template + gradient stencil) the response is exactly flat
        g = edge_function(np.full((16, 16), 0.4), 1.0, 9)
        assert np.allclose(g[5:-5, 5:-5], 1.0, atol=1e-12)
        assert (g > 0).all() and (g <= 1.0).all()

    def test_step_column_darker_than_flat(self):
        image = np.zeros((16, 16))
        image[:, 8:] = 1.0
        g = edge_function(image, 1.0, 9)
        assert g[8, 8] < g[8, 11]
        assert g[8, 7] < g[8, 4]

    def test_additive_shift_invariance_in_interior(self):
        # zero padding makes the border bands differ, the interior must not
        rng = np.random.default_rng(0)
        image = rng.random((24, 24))
        a = edge_function(image, 1.0, 9)
        b = edge_function(image + 0.3, 1.0, 9)
        assert np.abs(a[6:-6, 6:-6] - b[6:-6, 6:-6]).max() <= 1e-9

    def test_range_is_unit_interval(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            g = edge_function(rng.random((12, 12)), 1.0, 9)
            assert (g > 0).all() and (g <= 1.0).all()


class TestEdgeVelocity:
    def test_support_is_interface_band(self):
        phi = np.ones((10, 10))
        phi[:, :5] = -1.0
        v = edge_velocity(np.ones((10, 10)), phi)
        assert not v[:, :3].any() and not v[:, 7:].any()
        assert (v[:, 4:6] > 0).all()

    def test_unit_g_on_ramp(self):
        phi = np.tile(np.arange(12.0), (6, 1))
        v = edge_velocity(np.ones((6, 12)), phi)
        assert np.allclose(v, 1.0)

    @settings(deadline=None, max_examples=30)
    @given(st.integers(0, 2 ** 16))
    def test_never_negative(self, seed):
        rng = np.random.default_rng(seed)
        g = rng.random((8, 8))
        phi = rng.standard_normal((8, 8))
        assert (edge_velocity(g, phi) >= 0).all()

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            edge_velocity(np.ones((4, 4)), np.ones((5, 5)))


class TestRegionVelocity:
    def test_data_term_signs_surrounding_seed(self):
        image, truth, phi = fig3c_config()
        c_plus, c_minus = region_means(image, phi)
        data = (c_plus - c_minus) * (2.0 * image - c_plus - c_minus)
        assert c_plus - c_minus > 0
        assert (data[truth] < 0).all()
        assert (data[~truth] > 0).all()

    def test_matches_stated_normalized_form(self):
        image, _, phi = fig3c_config()
        c_plus, c_minus = region_means(image, phi)
        data = (c_plus - c_minus) * (2.0 * image - c_plus - c_minus)
        expected = data / np.abs(data).max() * gradient_magnitude(phi)
        v, degenerate = region_velocity(image, phi)
        assert not degenerate
        assert np.abs(v - expected).max() <= 1e-15

    def test_normalizer_hits_one_on_unit_gradient(self):
        rng = np.random.default_rng(4)
        image = rng.random((32, 32))
        phi = np.tile(np.arange(32.0) - 15.5, (32, 1))  # |grad| = 1
        v, degenerate = region_velocity(image, phi)
        assert not degenerate
        assert np.abs(v).max() == pytest.approx(1.0, abs=1e-12)

    def test_constant_image_degenerate(self):
        phi = rasterize_seeds(square_seed(2, 2, 6, 6), 12, 12)
        v, degenerate = region_velocity(np.full((12, 12), 0.5), phi)
        assert degenerate and not v.any()

    def test_single_sign_phi_degenerate(self):
        rng = np.random.default_rng(5)
        v, degenerate = region_velocity(rng.random((8, 8)), np.ones((8, 8)))
        assert degenerate and not v.any()

    @settings(deadline=None, max_examples=30)
    @given(st.floats(0.1, 4.0), st.floats(-2.0, 2.0))
    def test_affine_intensity_invariance(self, a, b):
        image, _, phi = fig3c_config()
        v1, _ = region_velocity(image, phi)
        v2, _ = region_velocity(a * image + b, phi)
        assert np.abs(v1 - v2).max() <= 1e-12

    def test_partition_swap_flips_sign(self):
        image, _, phi = fig3c_config()
        v1, _ = region_velocity(image, phi)
        v2, _ = region_velocity(image, -phi)
        assert np.abs(v1 + v2).max() <= 1e-12


class TestCvVelocity:
    def test_mu_zero_equals_unnormalized_region_term(self):
        image, _, phi = fig3c_config()
        c_plus, c_minus = region_means(image, phi)
        data = (c_plus - c_minus) * (2.0 * image - c_plus - c_minus)
        expected = data * gradient_magnitude(phi)
        assert np.abs(cv_velocity(image, phi, mu=0.0) - expected).max() <= 1e-15

    def test_pure_curvature_flow_on_constant_image(self):
        n, r = 64, 20.0
        yy, xx = np.mgrid[0:n, 0:n]
        phi = np.hypot(xx - 31.5, yy - 31.5) - r
        image = np.full((n, n), 0.5)
        mu = 0.2
        v = cv_velocity(image, phi, mu=mu)
        band = np.abs(phi) <= 0.75
        # inward-shrinking circle: positive speed mu/r at the curve
        assert (v[band] > 0).all()
        assert np.allclose(v[band], mu * curvature(phi)[band]
                           * gradient_magnitude(phi)[band], atol=1e-15)
        assert np.allclose(v[band], mu / r, rtol=0.06)

    def test_degenerate_partition_leaves_curvature_term(self):
        rng = np.random.default_rng(6)
        image = rng.random((16, 16))
        phi = np.abs(rng.standard_normal((16, 16))) + 0.1  # single sign
        v = cv_velocity(image, phi, mu=0.3)
        expected = 0.3 * curvature(phi) * gradient_magnitude(phi)
        assert np.abs(v - expected).max() <= 1e-15


class TestZhangVelocity:
    def test_midpoint_identity(self):
        # (I - c+) + (I - c-) = 2 (I - (c+ + c-)/2), the midpoint form
        image, _, phi = fig3c_config()
        c_plus, c_minus = region_means(image, phi)
        lhs = (image - c_plus) + (image - c_minus)
        rhs = 2.0 * (image - 0.5 * (c_plus + c_minus))
        assert np.abs(lhs - rhs).max() <= 1e-12

    def test_matches_stated_form(self):
        image, _, phi = fig3c_config()
        c_plus, c_minus = region_means(image, phi)
        centered = image - 0.5 * (c_plus + c_minus)
        expected = 1.5 * centered / np.abs(centered).max() * gradient_magnitude(phi)
        v, degenerate = zhang_velocity(image, phi, nu=1.5)
        assert not degenerate
        assert np.abs(v - expected).max() <= 1e-15

    def test_constant_image_degenerate(self):
        phi = rasterize_seeds(square_seed(2, 2, 6, 6), 12, 12)
        v, degenerate = zhang_velocity(np.full((12, 12), 0.5), phi, nu=1.0)
        assert degenerate and not v.any()


class TestFiniteness:
    @pytest.mark.parametrize("trial", range(5))
    def test_no_nan_inf_from_finite_inputs(self, trial):
        rng = np.random.default_rng(trial)
        image = rng.random((16, 16))
        phi = binarize(rng.standard_normal((16, 16)))
        g = edge_function(image, 1.0, 9)
        for v in (edge_velocity(g, phi), region_velocity(image, phi)[0],
                  cv_velocity(image, phi, 0.1), zhang_velocity(image, phi, 1.0)[0]):
            assert np.isfinite(v).all()
