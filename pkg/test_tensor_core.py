# -*- coding: utf-8 -*-
"""
Test suite for the finite-difference tensor calculus.
Tests derivative stencils, Christoffel symbols, Ricci tensor, Hessian and soliton residual.
"""

import math
import unittest

import numpy as np

from services.exceptions import (
    ConfigurationError, DimensionError, DomainError, NonFiniteError, SingularMetricError
)
from services.tensor_core import (
    FDScheme, MetricField, ScalarField, christoffel, fd_partial, fd_second, hessian, ricci,
    scalar_jet, soliton_residual_field
)


def flat_metric(eps):
    eps = np.asarray(eps, dtype=float)
    return MetricField(dim=eps.size, func=lambda x: np.diag(eps), name="flat")


def exp_conformal_metric(eps):
    """g / phi^2 with phi = e^(x1)."""
    eps = np.asarray(eps, dtype=float)
    return MetricField(dim=eps.size, func=lambda x: np.diag(eps) * math.exp(-2 * x[0]), name="g_bar")


class TestFDScheme(unittest.TestCase):
    """Test cases for FDScheme validation."""

    def test_defaults(self):
        scheme = FDScheme()
        self.assertEqual(scheme.step, 1e-3)
        self.assertEqual(scheme.order, 2)
        self.assertEqual(scheme.reach, 1e-3)

    def test_order_four_reach(self):
        self.assertAlmostEqual(FDScheme(0.01, 4).reach, 0.02)

    def test_invalid_step(self):
        with self.assertRaises(ConfigurationError):
            FDScheme(step=0.0)
        with self.assertRaises(ConfigurationError):
            FDScheme(step=-1e-3)

    def test_invalid_order(self):
        with self.assertRaises(ConfigurationError) as context:
            FDScheme(step=1e-3, order=3)
        self.assertEqual(context.exception.error_code, "CONFIG_ERROR")


class TestFDPartial(unittest.TestCase):
    """Test cases for first and second central differences."""

    def test_constant_field_is_exactly_zero(self):
        field = ScalarField(dim=3, func=lambda x: 4.2)
        for axis in range(3):
            self.assertEqual(fd_partial(field, [0.3, -1.0, 2.0], axis), 0.0)
            self.assertEqual(fd_partial(field, [0.3, -1.0, 2.0], axis, FDScheme(1e-2, 4)), 0.0)

    def test_quadratic_is_exact(self):
        field = ScalarField(dim=2, func=lambda x: x[0] ** 2)
        for step in (1e-1, 1e-2, 1e-3):
            self.assertAlmostEqual(fd_partial(field, [1.5, 0.0], 0, FDScheme(step)), 3.0, places=10)

    def test_exponential_derivative_order_two(self):
        field = ScalarField(dim=1, func=lambda x: math.exp(x[0]))
        self.assertLess(abs(fd_partial(field, [0.0], 0, FDScheme(1e-3, 2)) - 1.0), 2e-7)

    def test_exponential_derivative_order_four(self):
        field = ScalarField(dim=1, func=lambda x: math.exp(x[0]))
        self.assertLess(abs(fd_partial(field, [0.0], 0, FDScheme(1e-2, 4)) - 1.0), 1e-9)

    def test_mixed_second_derivative(self):
        field = ScalarField(dim=2, func=lambda x: math.sin(x[0]) * math.exp(x[1]))
        point = [0.4, -0.2]
        expected = math.cos(0.4) * math.exp(-0.2)
        self.assertLess(abs(fd_second(field, point, 0, 1, FDScheme(1e-3)) - expected), 1e-6)
        self.assertLess(abs(fd_second(field, point, 1, 0, FDScheme(1e-2, 4)) - expected), 1e-8)

    def test_out_of_domain_stencil(self):
        field = ScalarField(dim=1, func=lambda x: math.log(x[0]), domain=lambda x: x[0] > 0, name="log")
        with self.assertRaises(DomainError) as context:
            fd_partial(field, [5e-4], 0, FDScheme(1e-3))
        self.assertEqual(context.exception.details['field'], "log")

    def test_nan_names_the_point(self):
        field = ScalarField(dim=2, func=lambda x: float('nan'), name="broken")
        with self.assertRaises(NonFiniteError) as context:
            fd_partial(field, [1.0, 2.0], 1)
        self.assertIn('point', context.exception.details)

    def test_wrong_point_dimension(self):
        field = ScalarField(dim=3, func=lambda x: 0.0)
        with self.assertRaises(DimensionError):
            fd_partial(field, [1.0, 2.0], 0)

    def test_jet_channels(self):
        analytic = ScalarField(
            dim=2, func=lambda x: x[0] * x[1],
            gradient=lambda x: np.array([x[1], x[0]]),
            hessian=lambda x: np.array([[0.0, 1.0], [1.0, 0.0]])
        )
        numeric = ScalarField(dim=2, func=lambda x: x[0] * x[1])
        self.assertEqual(scalar_jet(analytic, [1.0, 2.0]).channel, "analytic")
        jet = scalar_jet(numeric, [1.0, 2.0], FDScheme(0.1))
        self.assertEqual(jet.channel, "fd")
        np.testing.assert_allclose(jet.gradient, [2.0, 1.0], atol=1e-12)
        np.testing.assert_allclose(jet.hessian, [[0.0, 1.0], [1.0, 0.0]], atol=1e-12)


class TestChristoffel(unittest.TestCase):
    """Test cases for Christoffel symbols."""

    def test_flat_metric(self):
        gamma = christoffel(flat_metric([-1, 1, 1]), [0.3, 0.1, -0.7])
        self.assertLess(np.max(np.abs(gamma)), 1e-12)

    def test_two_dimensional_warped_metric(self):
        metric = MetricField(dim=2, func=lambda x: np.diag([1.0, x[0] ** 2]), domain=lambda x: x[0] > 0)
        gamma = christoffel(metric, [2.0, 0.5])
        expected = np.zeros((2, 2, 2))
        expected[1, 0, 1] = expected[1, 1, 0] = 1 / 2.0
        expected[0, 1, 1] = -2.0
        np.testing.assert_allclose(gamma, expected, atol=1e-8)

    def test_conformal_exponential_factor(self):
        gamma = christoffel(exp_conformal_metric([1, 1, 1]), [0.2, 0.0, 0.0], FDScheme(1e-3, 4))
        # Gamma^i_i1 = -1, Gamma^1_ii = +1 for i != 1, Gamma^1_11 = -1
        expected = np.zeros((3, 3, 3))
        for i in range(3):
            expected[i, i, 0] = expected[i, 0, i] = -1.0
        expected[0, 1, 1] = expected[0, 2, 2] = 1.0
        np.testing.assert_allclose(gamma, expected, atol=1e-7)

    def test_symmetry_is_exact(self):
        metric = MetricField(
            dim=3,
            func=lambda x: np.array([
                [2 + math.sin(x[0]), 0.1 * x[1], 0.0],
                [0.1 * x[1], 3 + x[2] ** 2, 0.2],
                [0.0, 0.2, 1 + math.exp(x[0]) / 10]
            ])
        )
        gamma = christoffel(metric, [0.1, 0.2, 0.3])
        np.testing.assert_array_equal(gamma, np.swapaxes(gamma, 1, 2))

    def test_singular_metric_rejected(self):
        metric = MetricField(dim=2, func=lambda x: np.diag([1.0, 1e-13]))
        with self.assertRaises(SingularMetricError) as context:
            christoffel(metric, [0.0, 0.0])
        self.assertGreater(context.exception.details['condition_number'], 1e12)

    def test_asymmetric_metric_rejected(self):
        metric = MetricField(dim=2, func=lambda x: np.array([[1.0, 0.5], [0.0, 1.0]]))
        with self.assertRaises(SingularMetricError):
            christoffel(metric, [0.0, 0.0])

    def test_regularity_hint(self):
        metric = MetricField(dim=2, func=lambda x: np.eye(2), regularity=1e-3)
        with self.assertRaises(DomainError):
            christoffel(metric, [0.0, 0.0], FDScheme(1e-3))
        christoffel(metric, [0.0, 0.0], FDScheme(1e-4))

    def test_metric_dimension_limit(self):
        with self.assertRaises(DimensionError):
            MetricField(dim=17, func=lambda x: np.eye(17))


class TestRicci(unittest.TestCase):
    """Test cases for the Ricci tensor."""

    def test_flat_metric(self):
        ric = ricci(flat_metric([1, -1, 1, 1]), [0.5, 0.5, 0.5, 0.5])
        self.assertLess(np.max(np.abs(ric)), 1e-10)

    def test_conformal_exponential_factor(self):
        # Closed form for phi = e^(x1), n = 3 Riemannian: diag(0, -1, -1)
        ric = ricci(exp_conformal_metric([1, 1, 1]), [0.1, -0.3, 0.2], FDScheme(1e-3))
        np.testing.assert_allclose(ric, np.diag([0.0, -1.0, -1.0]), atol=5e-6)

    def test_symmetric(self):
        metric = MetricField(
            dim=3,
            func=lambda x: np.array([
                [2 + math.sin(x[0]), 0.1 * x[1], 0.0],
                [0.1 * x[1], 3 + x[2] ** 2, 0.2 * x[0]],
                [0.0, 0.2 * x[0], 1 + math.exp(x[0]) / 10]
            ])
        )
        ric = ricci(metric, [0.1, 0.2, 0.3])
        self.assertLess(np.max(np.abs(ric - ric.T)), 1e-8)

    def test_second_order_convergence(self):
        metric = exp_conformal_metric([1, 1, 1])
        exact = np.diag([0.0, -1.0, -1.0])
        for point in ([0.1, 0.0, 0.0], [0.3, 0.2, -0.1], [-0.2, 0.5, 0.5], [0.0, -0.4, 0.1], [0.25, 0.1, 0.3]):
            coarse = np.max(np.abs(ricci(metric, point, FDScheme(2e-3)) - exact))
            fine = np.max(np.abs(ricci(metric, point, FDScheme(1e-3)) - exact))
            self.assertGreaterEqual(coarse / fine, 3.5)
            self.assertLessEqual(coarse / fine, 4.5)


class TestHessianAndResidual(unittest.TestCase):
    """Test cases for the covariant Hessian and the soliton residual."""

    def test_constant_potential(self):
        h = ScalarField(dim=3, func=lambda x: 1.0)
        np.testing.assert_array_equal(hessian(h, exp_conformal_metric([1, 1, 1]), [0.0, 0.0, 0.0]), np.zeros((3, 3)))

    def test_flat_quadratic_potential(self):
        eps = np.array([-1.0, 1.0, 1.0])
        h = ScalarField(dim=3, func=lambda x: 0.5 * float(np.sum(eps * x ** 2)))
        result = hessian(h, flat_metric(eps), [0.3, -0.2, 0.7], FDScheme(0.1))
        np.testing.assert_allclose(result, np.diag(eps), atol=1e-12)

    def test_dimension_mismatch(self):
        h = ScalarField(dim=2, func=lambda x: 0.0)
        with self.assertRaises(DimensionError):
            hessian(h, flat_metric([1, 1, 1]), [0.0, 0.0, 0.0])

    def test_gaussian_soliton(self):
        A = 0.7
        h = ScalarField(dim=3, func=lambda x: 0.5 * A * float(np.dot(x, x)))
        residual = soliton_residual_field(flat_metric([1, 1, 1]), h, A, [0.4, -0.1, 0.9], FDScheme(0.1))
        self.assertLess(np.max(np.abs(residual)), 1e-10)

    def test_uniform_failure(self):
        g = np.diag([-1.0, 1.0, 1.0])
        h = ScalarField(dim=3, func=lambda x: 0.0)
        residual = soliton_residual_field(flat_metric([-1, 1, 1]), h, 1.0, [0.0, 1.0, 2.0])
        np.testing.assert_array_equal(residual, -g)


if __name__ == '__main__':
    unittest.main()
