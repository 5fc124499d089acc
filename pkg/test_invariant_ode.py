# -*- coding: utf-8 -*-
"""
Test suite for the translation-invariant reduction.
Tests direction classification, reduced ODE residuals, PDE/ODE factorization
and the phase-plane reduction.
"""

import math
import unittest
from unittest.mock import patch

import numpy as np

from services.conformal import Signature
from services.exceptions import AnsatzError, DimensionError, DomainError, NonFiniteError, NullDirectionError
from services.invariant_ode import (
    Interval, PhaseState, ProfileTriple, ScalarProfile, check_null_forcing, classify_direction,
    estimate_k, ode_residual_null, ode_residuals, ode_residuals_line_fiber, ode_residuals_unit,
    pde_ode_consistency, phase_path_residual, phase_rhs, pullback, reduce_profiles, sweep_ode_residuals
)
from services.runner import base_points
from services.solutions import build_family, flat_build, inject_defect, presets
from services.warped import SolitonConfig

RAY_PARAMS = {'k': 1.0, 'c1': 1.0, 'c2': 1.0, 'b': 0.0, 'branch': 'plus'}


def ray_setup(n=3, m=2, params=None):
    sig = Signature.riemannian(n)
    config = SolitonConfig(n, m, sig)
    triple = build_family("thm14", config, params or RAY_PARAMS)
    return config, triple, classify_direction(sig, (1.0,) + (0.0,) * (n - 1))


class TestDirection(unittest.TestCase):
    """Test cases for classify_direction."""

    def test_null_direction(self):
        direction = classify_direction(Signature.lorentzian(3), (1.0, 1.0, 0.0))
        self.assertTrue(direction.is_null)
        self.assertEqual(direction.eps_i0, 0)
        self.assertEqual(direction.alpha, (1.0, 1.0, 0.0))

    def test_spacelike_direction_is_normalized(self):
        direction = classify_direction(Signature.riemannian(3), (2.0, 0.0, 0.0))
        self.assertEqual(direction.causal_type, "unit")
        self.assertEqual(direction.alpha, (1.0, 0.0, 0.0))
        self.assertEqual(direction.scale, 2.0)
        self.assertEqual(direction.norm_sq, 4.0)
        self.assertEqual(direction.eps_i0, 1)

    def test_timelike_direction(self):
        direction = classify_direction(Signature.lorentzian(3), (0.0, 0.0, 3.0))
        self.assertEqual(direction.eps_i0, 1)
        direction = classify_direction(Signature.lorentzian(3), (2.0, 1.0, 0.0))
        self.assertEqual(direction.eps_i0, -1)
        self.assertAlmostEqual(direction.weight, -1.0, places=14)

    def test_xi(self):
        direction = classify_direction(Signature.riemannian(3), (0.0, 3.0, 4.0))
        self.assertAlmostEqual(direction.xi([1.0, 5.0, 10.0]), 11.0, places=14)

    def test_zero_vector(self):
        with self.assertRaises(DomainError):
            classify_direction(Signature.riemannian(3), (0.0, 0.0, 0.0))

    def test_wrong_size(self):
        with self.assertRaises(DimensionError):
            classify_direction(Signature.riemannian(3), (1.0, 0.0))

    def test_null_forcing(self):
        sig = Signature.lorentzian(3)
        direction = classify_direction(sig, (1.0, 1.0, 0.0))
        with self.assertRaises(NullDirectionError):
            check_null_forcing(SolitonConfig(3, 2, sig, rho=1.0), direction)
        with self.assertRaises(NullDirectionError):
            check_null_forcing(SolitonConfig(3, 2, sig, lambda_F=-1.0), direction)
        check_null_forcing(SolitonConfig(3, 2, sig), direction)


class TestProfiles(unittest.TestCase):
    """Test cases for Interval, ScalarProfile and ProfileTriple."""

    def test_interval(self):
        interval = Interval(0.0, 2.0)
        self.assertTrue(interval.contains(1.0))
        self.assertFalse(interval.contains(0.0))
        samples = interval.interior_samples(5)
        self.assertAlmostEqual(samples[0], 0.1)
        self.assertAlmostEqual(samples[-1], 1.9)
        with self.assertRaises(DomainError):
            Interval(1.0, 1.0)

    def test_unbounded_interval_samples(self):
        samples = Interval(1.0).interior_samples(3, fallback=(-2.0, 3.0))
        self.assertGreater(samples[0], 1.0)
        self.assertLess(samples[-1], 3.0)

    def test_nonfinite_profile(self):
        profile = ScalarProfile(lambda xi: 1.0, lambda xi: float('inf'), lambda xi: 0.0, name="bad")
        with self.assertRaises(NonFiniteError):
            profile.derivatives(0.0)

    def test_jets_outside_domain(self):
        _, triple, _ = ray_setup()
        with self.assertRaises(DomainError):
            triple.jets(-1.0)

    def test_kind(self):
        _, triple, _ = ray_setup()
        self.assertEqual(triple.kind, "analytic")
        self.assertEqual(presets()["thm17-exp"].build().kind, "numeric")

    def test_pullback(self):
        direction = classify_direction(Signature.riemannian(3), (0.0, 3.0, 4.0))
        profile = ScalarProfile(lambda xi: xi ** 3, lambda xi: 3 * xi ** 2, lambda xi: 6 * xi)
        field = pullback(profile, direction)
        point = np.array([0.0, 5.0, 5.0])
        self.assertAlmostEqual(field(point), 343.0, places=10)
        np.testing.assert_allclose(field.gradient(point), 147.0 * direction.vector)
        np.testing.assert_allclose(field.hessian(point), 42.0 * np.outer(direction.vector, direction.vector))


class TestReducedResiduals(unittest.TestCase):
    """Test cases for the reduced ODE residuals."""

    def test_ray_solution(self):
        config, triple, _ = ray_setup()
        for xi in (0.5, 1.0, 3.0, 10.0):
            self.assertLess(np.max(np.abs(ode_residuals_unit(config, triple, xi, 1))), 1e-9)

    def test_flat_product(self):
        config = SolitonConfig(3, 2, Signature.riemannian(3))
        np.testing.assert_array_equal(ode_residuals_unit(config, flat_build(), 0.0, 1), np.zeros(3))
        expanding = SolitonConfig(3, 2, Signature.riemannian(3), rho=0.5)
        np.testing.assert_array_equal(ode_residuals_unit(expanding, flat_build(), 0.0, -1), [0.0, -0.5, -0.5])

    def test_eps_must_be_unit(self):
        config, triple, _ = ray_setup()
        with self.assertRaises(DomainError):
            ode_residuals_unit(config, triple, 1.0, 0)

    def test_null_solution(self):
        preset = presets()["thm17-gauss"]
        triple = preset.build()
        for xi in (-1.0, 0.0, 0.7, 1.5):
            self.assertLess(abs(ode_residual_null(preset.soliton_config(), triple, xi)), 1e-6)

    def test_null_requires_steady(self):
        sig = Signature.lorentzian(3)
        with self.assertRaises(NullDirectionError):
            ode_residual_null(SolitonConfig(3, 2, sig, rho=0.1), flat_build(), 0.0)

    def test_line_fiber_matches_general_form(self):
        config, triple, _ = ray_setup(m=1)
        broken = inject_defect(triple, "f", "quadratic", 0.05)
        for xi in (0.5, 1.0, 2.0):
            np.testing.assert_allclose(ode_residuals_line_fiber(config, broken, xi, 1),
                                       ode_residuals_unit(config, broken, xi, 1), rtol=1e-12, atol=1e-12)
            self.assertLess(np.max(np.abs(ode_residuals_line_fiber(config, triple, xi, 1))), 1e-9)

    def test_dispatch_uses_line_fiber_form(self):
        config, triple, direction = ray_setup(m=1)
        with patch('services.invariant_ode.ode_residuals_line_fiber', wraps=ode_residuals_line_fiber) as line_fiber:
            residual = ode_residuals(config, triple, 1.0, direction)
        line_fiber.assert_called_once_with(config, triple, 1.0, 1)
        self.assertEqual(residual.shape, (3,))

        with patch('services.invariant_ode.ode_residuals_line_fiber') as line_fiber:
            ode_residuals(*ray_setup()[:2], 1.0, direction)
        line_fiber.assert_not_called()

    def test_line_fiber_solution_satisfies_all_three(self):
        """On a line-fiber solution the first two equations vanish together with the third."""
        config, triple, direction = ray_setup(m=1)
        for xi in (0.5, 1.0, 2.0):
            residual = ode_residuals(config, triple, xi, direction)
            self.assertLess(abs(residual[0] - residual[1]), 1e-9)
            self.assertLess(np.max(np.abs(residual)), 1e-9)

    def test_line_fiber_needs_m_one(self):
        config, triple, _ = ray_setup()
        with self.assertRaises(DimensionError):
            ode_residuals_line_fiber(config, triple, 1.0, 1)

    def test_sweep(self):
        config, triple, direction = ray_setup()
        xis = np.linspace(0.5, 4.0, 20)
        self.assertTrue(sweep_ode_residuals(config, triple, direction, xis).success)
        failing = sweep_ode_residuals(config, inject_defect(triple, "h", "quadratic", 0.01), direction, xis)
        self.assertFalse(failing.success)
        self.assertEqual(len(failing.details['per_equation']), 3)
        self.assertEqual(failing.points_checked, 20)

    def test_sweep_without_samples(self):
        config, triple, direction = ray_setup()
        with self.assertRaises(DomainError):
            sweep_ode_residuals(config, triple, direction, [])


class TestConsistency(unittest.TestCase):
    """PDE residuals of pulled-back fields factor through the ODE residuals."""

    def test_unit_direction_with_defect(self):
        config, triple, direction = ray_setup()
        broken = inject_defect(triple, "phi", "quadratic", 0.1)
        points = [[1.0, 0.2, -0.4], [2.5, -1.0, 0.3], [4.0, 0.0, 0.0]]
        check = pde_ode_consistency(config, broken, direction, points)
        self.assertTrue(check.success)
        self.assertGreater(check.details['max_pde_residual'], 1e-3)

    def test_oblique_lorentzian_direction(self):
        sig = Signature.lorentzian(3)
        config = SolitonConfig(3, 2, sig, rho=0.2)
        direction = classify_direction(sig, (0.5, 1.0, 0.5))
        triple = ProfileTriple(
            phi=ScalarProfile(lambda xi: 2 + math.sin(xi), math.cos, lambda xi: -math.sin(xi), name="phi"),
            f=ScalarProfile(math.exp, math.exp, math.exp, name="f"),
            h=ScalarProfile(lambda xi: xi ** 3, lambda xi: 3 * xi ** 2, lambda xi: 6 * xi, name="h")
        )
        check = pde_ode_consistency(config, triple, direction, [[0.1, 0.2, 0.3], [-0.5, 0.4, 1.0]])
        self.assertTrue(check.success)

    def test_signature_flip(self):
        """Flipping every sign with rho = lambda_F = 0 leaves the residual magnitudes unchanged."""
        xis = np.linspace(0.5, 4.0, 12)
        sweeps, checks = [], []
        for sig in (Signature.riemannian(3), Signature.riemannian(3).flipped()):
            config = SolitonConfig(3, 2, sig)
            direction = classify_direction(sig, (1.0, 0.0, 0.0))
            self.assertEqual(direction.eps_i0, int(sig.array[0]))
            triple = build_family("thm14", config, RAY_PARAMS)
            broken = inject_defect(triple, "phi", "quadratic", 0.01)
            sweeps.append([sweep_ode_residuals(config, t, direction, xis).details['per_equation']
                           for t in (triple, broken)])
            checks.append(pde_ode_consistency(config, broken, direction, base_points(direction, xis, 4, seed=5)))

        np.testing.assert_allclose(sweeps[0], sweeps[1], rtol=1e-12, atol=1e-14)
        self.assertGreater(max(sweeps[0][1]), 1e-6)
        for check in checks:
            self.assertTrue(check.success, check.message)
            self.assertGreater(check.details['max_pde_residual'], 1e-6)

    def test_null_direction(self):
        preset = presets()["thm17-exp"]
        check = pde_ode_consistency(preset.soliton_config(), preset.build(), preset.direction(),
                                    [[0.3, 0.1, 0.5], [-0.2, 0.4, -1.0]])
        self.assertTrue(check.success)
        self.assertEqual(check.details['causal_type'], "null")


class TestPhasePlane(unittest.TestCase):
    """Test cases for the phase-plane reduction."""

    def test_phase_rhs(self):
        config = SolitonConfig(3, 2, Signature.riemannian(3))
        self.assertEqual(phase_rhs(PhaseState(1.0, 2.0, 1.0), config), (2.0, -1.0))
        with self.assertRaises(AnsatzError):
            phase_rhs(PhaseState(1.0, 2.0, 0.0), config)

    def test_estimate_k(self):
        _, triple, _ = ray_setup(params=dict(RAY_PARAMS, k=2.0))
        self.assertAlmostEqual(estimate_k(triple, np.linspace(0.5, 3.0, 11)), 2.0, places=10)

    def test_ray_solution_has_constant_z(self):
        config, triple, _ = ray_setup()
        path = reduce_profiles(config, triple, np.linspace(0.5, 3.0, 11))
        self.assertAlmostEqual(path.k, 1.0, places=10)
        np.testing.assert_allclose(path.z, 1.0, atol=1e-10)
        np.testing.assert_allclose(path.x, -1.0 / path.xi, atol=1e-12)
        self.assertLess(phase_path_residual(config, path, triple).max_deviation, 1e-9)

    def test_nonconstant_z_solution(self):
        preset = presets()["thm15-riemannian"]
        config, triple = preset.soliton_config(), preset.build()
        path = reduce_profiles(config, triple, triple.domain.interior_samples(19), k=1.0)
        self.assertGreater(float(np.ptp(path.z)), 1e-3)
        self.assertTrue(phase_path_residual(config, path, triple).success)

    def test_ansatz_violation(self):
        preset = presets()["thm17-gauss"]
        with self.assertRaises(AnsatzError):
            reduce_profiles(preset.soliton_config(), preset.build(), np.linspace(0.2, 1.0, 5), k=1.0)

    def test_constant_profiles(self):
        config = SolitonConfig(3, 2, Signature.riemannian(3))
        path = reduce_profiles(config, flat_build(), [0.0, 1.0])
        np.testing.assert_array_equal(path.x, [0.0, 0.0])
        self.assertTrue(all(state.z is None for state in path.states()))


if __name__ == '__main__':
    unittest.main()
