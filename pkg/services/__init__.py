# -*- coding: utf-8 -*-
"""
Services module for the WARPSOL toolkit.
Contains the tensor calculus oracle, the warped-product soliton formulas,
the solution families, run configuration, reporting and error handling.
"""

from config import TOOL_VERSION as __version__

from .base import Result, CheckResult, TableResult
from .exceptions import (
    WarpSolError, DomainError, NonFiniteError, SingularMetricError, DimensionError,
    NullDirectionError, AnsatzError, ConvergenceError, UnsupportedModeError, ConfigurationError
)
from .logging_config import setup_logging, get_logger
from .tensor_core import FDScheme, ScalarField, MetricField, christoffel, ricci, hessian, soliton_residual_field
from .conformal import (
    Signature, ConformalFactor, conformal_metric, conformal_christoffel, conformal_ricci,
    conformal_hessian, conformal_laplacian_and_gradsq
)
from .warped import (
    SolitonConfig, WarpedData, PDEResiduals, warped_ricci_blocks, fiber_hessian_scalar,
    pde_residuals, fiber_residual_m1, einstein_fiber_check, oracle_convergence
)
from .invariant_ode import (
    Direction, Interval, ScalarProfile, ProfileTriple, PhaseState, classify_direction,
    ode_residuals_unit, ode_residual_null, ode_residuals_line_fiber, pde_ode_consistency,
    phase_rhs, reduce_profiles
)
from .solutions import (
    Thm14Params, Thm15Params, Thm17Params, thm14_build, thm15_build, thm17_build,
    inject_defect, build_family, presets
)
from .config_validator import ConfigValidator, ValidationResult
from .run_config import RunConfig, load_run_config, run_config_from_dict
from .reporting import ResidualReport
from .runner import verify_run, sample_run, oracle_run
from .system_checker import SystemChecker, DependencyResult, ConfigurationResult

__all__ = [
    '__version__',
    'Result',
    'CheckResult',
    'TableResult',
    'WarpSolError',
    'DomainError',
    'NonFiniteError',
    'SingularMetricError',
    'DimensionError',
    'NullDirectionError',
    'AnsatzError',
    'ConvergenceError',
    'UnsupportedModeError',
    'ConfigurationError',
    'setup_logging',
    'get_logger',
    'FDScheme',
    'ScalarField',
    'MetricField',
    'christoffel',
    'ricci',
    'hessian',
    'soliton_residual_field',
    'Signature',
    'ConformalFactor',
    'conformal_metric',
    'conformal_christoffel',
    'conformal_ricci',
    'conformal_hessian',
    'conformal_laplacian_and_gradsq',
    'SolitonConfig',
    'WarpedData',
    'PDEResiduals',
    'warped_ricci_blocks',
    'fiber_hessian_scalar',
    'pde_residuals',
    'fiber_residual_m1',
    'einstein_fiber_check',
    'oracle_convergence',
    'Direction',
    'Interval',
    'ScalarProfile',
    'ProfileTriple',
    'PhaseState',
    'classify_direction',
    'ode_residuals_unit',
    'ode_residual_null',
    'ode_residuals_line_fiber',
    'pde_ode_consistency',
    'phase_rhs',
    'reduce_profiles',
    'Thm14Params',
    'Thm15Params',
    'Thm17Params',
    'thm14_build',
    'thm15_build',
    'thm17_build',
    'inject_defect',
    'build_family',
    'presets',
    'ConfigValidator',
    'ValidationResult',
    'RunConfig',
    'load_run_config',
    'run_config_from_dict',
    'ResidualReport',
    'verify_run',
    'sample_run',
    'oracle_run',
    'SystemChecker',
    'DependencyResult',
    'ConfigurationResult'
]
