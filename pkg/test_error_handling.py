# -*- coding: utf-8 -*-
"""
Unit tests for the exception hierarchy and error propagation.
Tests error codes, serialization and how numerical failures surface in results.
"""

import json
import unittest

from services.base import CheckResult, Result
from services.exceptions import (
    AnsatzError, ConfigurationError, ConvergenceError, DimensionError, DomainError, NonFiniteError,
    NullDirectionError, SingularMetricError, UnsupportedModeError, WarpSolError
)


class TestExceptionHierarchy(unittest.TestCase):
    """Test cases for the custom exception classes."""

    def test_error_codes(self):
        """Every error class carries its own code."""
        expected = {
            DomainError: "DOMAIN_ERROR",
            NonFiniteError: "NONFINITE_ERROR",
            SingularMetricError: "SINGULAR_METRIC",
            DimensionError: "DIMENSION_ERROR",
            NullDirectionError: "NULL_DIRECTION",
            AnsatzError: "ANSATZ_ERROR",
            ConvergenceError: "CONVERGENCE_ERROR",
            UnsupportedModeError: "UNSUPPORTED_MODE",
            ConfigurationError: "CONFIG_ERROR"
        }
        for cls, code in expected.items():
            error = cls("something failed")
            self.assertIsInstance(error, WarpSolError)
            self.assertEqual(error.error_code, code)

    def test_str_includes_code(self):
        error = DomainError("xi outside the domain")
        self.assertEqual(str(error), "[DOMAIN_ERROR] xi outside the domain")

    def test_details_default_to_empty(self):
        self.assertEqual(ConvergenceError("did not converge").details, {})

    def test_to_dict_is_json_serializable(self):
        """Test error serialization for reports."""
        error = SingularMetricError("Metric is singular", details={'condition_number': 1e13, 'point': [0.0, 1.0]})

        doc = error.to_dict()

        self.assertEqual(doc['error_code'], "SINGULAR_METRIC")
        self.assertEqual(doc['details']['point'], [0.0, 1.0])
        self.assertEqual(json.loads(json.dumps(doc)), doc)

    def test_catch_as_base_class(self):
        with self.assertRaises(WarpSolError):
            raise NullDirectionError("rho must vanish")


class TestErrorPropagation(unittest.TestCase):
    """Errors raised by the numerical core name the offending point or field."""

    def test_domain_error_names_field(self):
        from services.tensor_core import FDScheme, ScalarField, fd_partial
        field = ScalarField(dim=1, func=lambda x: x[0] ** 0.5, domain=lambda x: x[0] > 0, name="sqrt")
        with self.assertRaises(DomainError) as context:
            fd_partial(field, [1e-4], 0, FDScheme(1e-3))
        self.assertEqual(context.exception.details['field'], "sqrt")

    def test_nonfinite_error_names_profile(self):
        from services.invariant_ode import ScalarProfile
        profile = ScalarProfile(lambda xi: float('nan'), lambda xi: 0.0, lambda xi: 0.0, name="phi")
        with self.assertRaises(NonFiniteError) as context:
            profile.derivatives(0.5)
        self.assertEqual(context.exception.details, {'xi': 0.5, 'profile': "phi"})

    def test_unsupported_mode_names_fiber(self):
        from services.conformal import Signature
        from services.tensor_core import ScalarField
        from services.warped import SolitonConfig, WarpedData, oracle_block_residual
        one = ScalarField(dim=3, func=lambda x: 1.0)
        data = WarpedData(SolitonConfig(3, 2, Signature.riemannian(3)), one, one, one)
        with self.assertRaises(UnsupportedModeError) as context:
            oracle_block_residual(data, [0.0, 0.0, 0.0])
        self.assertEqual(context.exception.details['fiber'], "abstract")


class TestResults(unittest.TestCase):
    """Test cases for the result data classes."""

    def test_result_truthiness(self):
        self.assertTrue(Result(success=True, message="ok"))
        self.assertFalse(Result(success=False, message="no", error_code="X"))

    def test_check_result_defaults(self):
        check = CheckResult(success=True, message="ok")
        self.assertEqual(check.points_checked, 0)
        self.assertEqual(check.details, {})


if __name__ == '__main__':
    unittest.main()
