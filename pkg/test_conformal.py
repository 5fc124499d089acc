# -*- coding: utf-8 -*-
"""
Test suite for the closed-form conformal geometry.
Checks the formulas on exact cases and against the finite-difference oracle.
"""

import math
import unittest

import numpy as np

from services.conformal import (
    ConformalFactor, Signature, conformal_christoffel, conformal_hessian,
    conformal_laplacian_and_gradsq, conformal_metric, conformal_ricci
)
from services.exceptions import DimensionError, DomainError
from services.tensor_core import FDScheme, ScalarField, christoffel, hessian, ricci


def analytic_field(func, gradient, hessian_, name="phi"):
    return ScalarField(
        dim=3,
        func=lambda x: func(*x),
        gradient=lambda x: np.array(gradient(*x), dtype=float),
        hessian=lambda x: np.array(hessian_(*x), dtype=float),
        name=name
    )


def exp_factor():
    return analytic_field(
        lambda a, b, c: math.exp(a),
        lambda a, b, c: [math.exp(a), 0, 0],
        lambda a, b, c: [[math.exp(a), 0, 0], [0, 0, 0], [0, 0, 0]]
    )


def constant_factor(value=1.0):
    return analytic_field(lambda a, b, c: value, lambda a, b, c: [0, 0, 0], lambda a, b, c: np.zeros((3, 3)))


def factor_corpus():
    """Five positive analytic conformal factors on a neighbourhood of the origin."""
    polynomial = analytic_field(
        lambda a, b, c: 1 + 0.3 * a * a + 0.2 * b * c + 0.1 * c,
        lambda a, b, c: [0.6 * a, 0.2 * c, 0.2 * b + 0.1],
        lambda a, b, c: [[0.6, 0, 0], [0, 0, 0.2], [0, 0.2, 0]]
    )
    hyperbolic = analytic_field(
        lambda a, b, c: math.cosh(0.5 * a + 0.3 * b),
        lambda a, b, c: [0.5 * math.sinh(0.5 * a + 0.3 * b), 0.3 * math.sinh(0.5 * a + 0.3 * b), 0],
        lambda a, b, c: (math.cosh(0.5 * a + 0.3 * b)
                         * np.array([[0.25, 0.15, 0], [0.15, 0.09, 0], [0, 0, 0]]))
    )
    eps = np.array([1.0, -1.0, 1.0])

    def gauss(a, b, c):
        return math.exp(0.2 * (a * a - b * b + c * c))

    gaussian = analytic_field(
        gauss,
        lambda a, b, c: gauss(a, b, c) * 0.4 * eps * np.array([a, b, c]),
        lambda a, b, c: gauss(a, b, c) * (
            0.16 * np.outer(eps * np.array([a, b, c]), eps * np.array([a, b, c])) + 0.4 * np.diag(eps)
        )
    )
    trigonometric = analytic_field(
        lambda a, b, c: 2 + math.sin(a) * math.cos(b) + 0.1 * c,
        lambda a, b, c: [math.cos(a) * math.cos(b), -math.sin(a) * math.sin(b), 0.1],
        lambda a, b, c: [
            [-math.sin(a) * math.cos(b), -math.cos(a) * math.sin(b), 0],
            [-math.cos(a) * math.sin(b), -math.sin(a) * math.cos(b), 0],
            [0, 0, 0]
        ]
    )
    return [exp_factor(), polynomial, hyperbolic, gaussian, trigonometric]


class TestSignature(unittest.TestCase):
    """Test cases for Signature."""

    def test_helpers(self):
        self.assertEqual(Signature.riemannian(4).eps, (1, 1, 1, 1))
        self.assertEqual(Signature.lorentzian(3).eps, (-1, 1, 1))
        self.assertEqual(Signature((1, -1, 1)).flipped().eps, (-1, 1, -1))

    def test_dimension_below_three(self):
        with self.assertRaises(DimensionError):
            Signature((1, 1))

    def test_entries_must_be_units(self):
        with self.assertRaises(DimensionError):
            Signature((1, 2, 1))


class TestClosedForms(unittest.TestCase):
    """Exact evaluations of the conformal formulas."""

    def setUp(self):
        self.sig = Signature.riemannian(3)
        self.point = [0.2, -0.4, 0.9]

    def test_constant_factor(self):
        np.testing.assert_array_equal(conformal_christoffel(self.sig, constant_factor(), self.point),
                                      np.zeros((3, 3, 3)))
        np.testing.assert_array_equal(conformal_ricci(self.sig, constant_factor(2.0), self.point),
                                      np.zeros((3, 3)))

    def test_exponential_christoffel(self):
        gamma = conformal_christoffel(self.sig, exp_factor(), self.point)
        self.assertAlmostEqual(gamma[0, 0, 0], -1.0, places=14)
        self.assertAlmostEqual(gamma[1, 0, 1], -1.0, places=14)
        self.assertAlmostEqual(gamma[1, 1, 0], -1.0, places=14)
        self.assertAlmostEqual(gamma[0, 1, 1], 1.0, places=14)
        self.assertAlmostEqual(gamma[0, 2, 2], 1.0, places=14)
        self.assertEqual(gamma[0, 1, 2], 0.0)
        self.assertEqual(gamma[2, 0, 1], 0.0)

    def test_exponential_ricci(self):
        ric = conformal_ricci(self.sig, exp_factor(), self.point)
        np.testing.assert_allclose(ric, np.diag([0.0, -1.0, -1.0]), atol=1e-14)

    def test_flat_hessian(self):
        u = analytic_field(lambda a, b, c: a * b, lambda a, b, c: [b, a, 0],
                           lambda a, b, c: [[0, 1, 0], [1, 0, 0], [0, 0, 0]], name="u")
        expected = np.zeros((3, 3))
        expected[0, 1] = expected[1, 0] = 1.0
        np.testing.assert_array_equal(conformal_hessian(self.sig, constant_factor(), u, self.point), expected)

    def test_flat_laplacian(self):
        sig = Signature.lorentzian(3)
        eps = sig.array
        u = ScalarField(dim=3, func=lambda x: 0.5 * float(np.sum(eps * x ** 2)),
                        gradient=lambda x: eps * x, hessian=lambda x: np.diag(eps), name="u")
        laplacian, grad_sq = conformal_laplacian_and_gradsq(sig, constant_factor(), u, self.point)
        self.assertEqual(laplacian, 3.0)
        self.assertAlmostEqual(grad_sq, float(np.sum(eps * np.array(self.point) ** 2)), places=14)

    def test_exponential_laplacian(self):
        u = analytic_field(lambda a, b, c: a, lambda a, b, c: [1, 0, 0], lambda a, b, c: np.zeros((3, 3)), "u")
        laplacian, grad_sq = conformal_laplacian_and_gradsq(self.sig, exp_factor(), u, [0.0, 0.3, 0.1])
        self.assertAlmostEqual(laplacian, -1.0, places=14)
        self.assertAlmostEqual(grad_sq, 1.0, places=14)

    def test_constant_test_function(self):
        u = analytic_field(lambda a, b, c: 3.0, lambda a, b, c: [0, 0, 0], lambda a, b, c: np.zeros((3, 3)), "u")
        self.assertEqual(conformal_laplacian_and_gradsq(self.sig, exp_factor(), u, self.point), (0.0, 0.0))
        np.testing.assert_array_equal(conformal_hessian(self.sig, exp_factor(), u, self.point), np.zeros((3, 3)))

    def test_signature_flip(self):
        for phi in factor_corpus():
            sig = Signature((1, -1, 1))
            np.testing.assert_allclose(conformal_christoffel(sig, phi, self.point),
                                       conformal_christoffel(sig.flipped(), phi, self.point), atol=1e-15)
            np.testing.assert_allclose(conformal_ricci(sig, phi, self.point),
                                       conformal_ricci(sig.flipped(), phi, self.point), atol=1e-14)

    def test_nonpositive_factor(self):
        phi = analytic_field(lambda a, b, c: a, lambda a, b, c: [1, 0, 0], lambda a, b, c: np.zeros((3, 3)))
        with self.assertRaises(DomainError):
            conformal_ricci(self.sig, phi, [-0.5, 0.0, 0.0])
        with self.assertRaises(DomainError):
            ConformalFactor(phi).jet([0.0, 1.0, 1.0])

    def test_dimension_mismatch(self):
        phi = ScalarField(dim=4, func=lambda x: 1.0)
        with self.assertRaises(DimensionError):
            conformal_ricci(self.sig, phi, [0.0, 0.0, 0.0, 0.0])

    def test_fd_channel_matches_analytic(self):
        analytic = exp_factor()
        numeric = ScalarField(dim=3, func=analytic.func, name="phi")
        self.assertEqual(ConformalFactor(numeric).channel, "fd")
        np.testing.assert_allclose(
            conformal_ricci(self.sig, numeric, self.point, FDScheme(1e-3, 4)),
            conformal_ricci(self.sig, analytic, self.point),
            atol=1e-7
        )


class TestOracleAgreement(unittest.TestCase):
    """Closed forms against the finite-difference curvature of g_bar."""

    def setUp(self):
        self.points = ([0.2, -0.1, 0.3], [-0.3, 0.25, 0.1])
        self.signatures = (Signature.riemannian(3), Signature.lorentzian(3))

    def test_christoffel(self):
        for sig in self.signatures:
            for phi in factor_corpus():
                for point in self.points:
                    fd = christoffel(conformal_metric(sig, phi), point, FDScheme(1e-3))
                    np.testing.assert_allclose(conformal_christoffel(sig, phi, point), fd, atol=1e-6)

    def test_ricci(self):
        for sig in self.signatures:
            for phi in factor_corpus():
                for point in self.points:
                    fd = ricci(conformal_metric(sig, phi), point, FDScheme(1e-3, 4))
                    np.testing.assert_allclose(conformal_ricci(sig, phi, point), fd, atol=1e-7)

    def test_hessian(self):
        u = analytic_field(lambda a, b, c: b * b + a * c, lambda a, b, c: [c, 2 * b, a],
                           lambda a, b, c: [[0, 0, 1], [0, 2, 0], [1, 0, 0]], name="u")
        for sig in self.signatures:
            for phi in factor_corpus():
                for point in self.points:
                    fd = hessian(u, conformal_metric(sig, phi), point, FDScheme(1e-3))
                    np.testing.assert_allclose(conformal_hessian(sig, phi, u, point), fd, atol=1e-6)

    def test_fitted_constant(self):
        sig = Signature.lorentzian(3)
        point = self.points[0]
        for phi in factor_corpus():
            exact = conformal_ricci(sig, phi, point)
            for step in (2e-3, 1e-3):
                gap = np.max(np.abs(ricci(conformal_metric(sig, phi), point, FDScheme(step)) - exact))
                self.assertLessEqual(gap / step ** 2, 1e2)


if __name__ == '__main__':
    unittest.main()
