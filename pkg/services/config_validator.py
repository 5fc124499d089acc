# -*- coding: utf-8 -*-
"""
Run configuration validation for the WARPSOL toolkit.
Checks every section of a run configuration document and reports errors
with their field paths.
"""

import json
import math
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from .base import Result
from .logging_config import get_logger
from .solutions import DEFECT_MODES, DEFECT_TARGETS, FAMILIES, presets

logger = get_logger(__name__)

KNOWN_SECTIONS = ('config', 'direction', 'family', 'grid', 'tolerances', 'oracle', 'defect', 'output')
OUTPUT_FORMATS = ('json', 'csv')


@dataclass
class ValidationResult(Result):
    """Result class for configuration validation operations."""
    validation_errors: Optional[List[str]] = None
    warnings: Optional[List[str]] = None


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_preset_family(doc: Dict[str, Any]) -> bool:
    family = doc.get('family')
    return isinstance(family, dict) and str(family.get('name', '')).startswith('preset:')


class ConfigValidator:
    """
    Validator for WARPSOL run configurations.
    Validates the config, direction, family, grid, tolerances, oracle, defect and output sections.
    """

    def __init__(self):
        """Initialize the ConfigValidator."""
        self.logger = get_logger(self.__class__.__name__)

    def validate_run_config(self, doc: Dict[str, Any]) -> ValidationResult:
        """
        Validate a complete run configuration.

        Args:
            doc: Parsed run configuration

        Returns:
            ValidationResult: Validation result with field-path errors and warnings
        """
        self.logger.info("Starting run configuration validation")

        if not isinstance(doc, dict):
            return ValidationResult(
                success=False,
                message="Run configuration validation failed: 1 errors",
                validation_errors=["configuration must be a JSON object"]
            )

        errors: List[str] = []
        warnings: List[str] = []

        for key in doc:
            if key not in KNOWN_SECTIONS and key != 'provenance':
                warnings.append(f"Unknown section ignored: {key}")

        from_preset = _is_preset_family(doc)
        required = ('family',) if from_preset else ('config', 'direction', 'family')
        for section in required:
            if section not in doc:
                errors.append(f"Missing required section: {section}")
            elif doc[section] is None:
                errors.append(f"Section cannot be null: {section}")

        if errors:
            return ValidationResult(
                success=False,
                message=f"Run configuration validation failed: {len(errors)} errors",
                validation_errors=errors,
                warnings=warnings or None
            )

        n = None
        if 'config' in doc:
            n = self._validate_config(doc['config'], errors, warnings)
        if 'direction' in doc:
            self._validate_direction(doc['direction'], n, errors)
        self._validate_family(doc['family'], errors)
        if 'grid' in doc:
            self._validate_grid(doc['grid'], errors, warnings)
        if 'tolerances' in doc:
            self._validate_tolerances(doc['tolerances'], errors)
        if 'oracle' in doc:
            self._validate_oracle(doc['oracle'], errors, warnings)
        if 'defect' in doc and doc['defect'] is not None:
            self._validate_defect(doc['defect'], errors)
        if 'output' in doc:
            self._validate_output(doc['output'], errors)

        success = len(errors) == 0
        if success:
            message = "Run configuration validation passed"
            if warnings:
                message += f" with {len(warnings)} warnings"
        else:
            message = f"Run configuration validation failed: {len(errors)} errors"
            if warnings:
                message += f", {len(warnings)} warnings"

        return ValidationResult(
            success=success,
            message=message,
            validation_errors=errors if errors else None,
            warnings=warnings if warnings else None
        )

    def _validate_config(self, section: Any, errors: List[str], warnings: List[str]) -> Optional[int]:
        """Validate the config section; returns n when it is usable."""
        if not isinstance(section, dict):
            errors.append("config must be an object")
            return None

        n = section.get('n')
        m = section.get('m')
        if not _is_int(n) or n < 3:
            errors.append("config.n must be an integer >= 3")
            n = None
        if not _is_int(m) or m < 1:
            errors.append("config.m must be an integer >= 1")

        signature = section.get('signature')
        if not isinstance(signature, list):
            errors.append("config.signature must be an array of +1/-1")
        else:
            if n is not None and len(signature) != n:
                errors.append(f"config.signature must have n = {n} entries, got {len(signature)}")
            for i, entry in enumerate(signature):
                if not _is_number(entry) or entry not in (1, -1):
                    errors.append(f"config.signature[{i}] must be +1 or -1")

        for key in ('rho', 'lambda_F'):
            if key in section and not _is_number(section[key]):
                errors.append(f"config.{key} must be a finite number")

        if m == 1 and _is_number(section.get('lambda_F', 0)) and section.get('lambda_F', 0) != 0:
            errors.append("config.lambda_F must be 0 when config.m = 1")
        if _is_number(section.get('rho', 0)) and section.get('rho', 0) != 0:
            warnings.append("config.rho != 0: the solution families are steady; expect nonzero residuals")
        return n

    def _validate_direction(self, section: Any, n: Optional[int], errors: List[str]):
        """Validate the direction section."""
        if not isinstance(section, dict) or not isinstance(section.get('alpha'), list):
            errors.append("direction.alpha must be an array of numbers")
            return
        alpha = section['alpha']
        if n is not None and len(alpha) != n:
            errors.append(f"direction.alpha must have n = {n} entries, got {len(alpha)}")
        for i, entry in enumerate(alpha):
            if not _is_number(entry):
                errors.append(f"direction.alpha[{i}] must be a finite number")
        if all(_is_number(entry) and entry == 0 for entry in alpha):
            errors.append("direction.alpha must not be the zero vector")

    def _validate_family(self, section: Any, errors: List[str]):
        """Validate the family section."""
        if not isinstance(section, dict):
            errors.append("family must be an object")
            return
        name = section.get('name')
        if not isinstance(name, str):
            errors.append("family.name must be a string")
        elif name.startswith('preset:'):
            if name[len('preset:'):] not in presets():
                errors.append(f"family.name refers to an unknown preset: {name}")
        elif name not in FAMILIES:
            errors.append(f"family.name must be one of {list(FAMILIES)} or preset:<name>, got '{name}'")
        if 'params' in section and not isinstance(section['params'], dict):
            errors.append("family.params must be an object")

    def _validate_grid(self, section: Any, errors: List[str], warnings: List[str]):
        """Validate the grid section."""
        if not isinstance(section, dict):
            errors.append("grid must be an object")
            return
        lo, hi = section.get('xi_min'), section.get('xi_max')
        for key, value in (('xi_min', lo), ('xi_max', hi)):
            if value is not None and not _is_number(value):
                errors.append(f"grid.{key} must be a finite number")
        if _is_number(lo) and _is_number(hi) and not lo < hi:
            errors.append("grid.xi_min must be smaller than grid.xi_max")
        for key in ('samples', 'base_points'):
            if key in section and (not _is_int(section[key]) or section[key] < 1):
                errors.append(f"grid.{key} must be a positive integer")
        if 'seed' in section and (not _is_int(section['seed']) or section['seed'] < 0):
            errors.append("grid.seed must be a nonnegative integer")
        if _is_int(section.get('samples')) and section['samples'] > 100000:
            warnings.append("grid.samples is very large (>100000)")

    def _validate_tolerances(self, section: Any, errors: List[str]):
        """Validate the tolerances section."""
        if not isinstance(section, dict):
            errors.append("tolerances must be an object")
            return
        for key, value in section.items():
            if key not in ('ode', 'pde', 'oracle'):
                errors.append(f"tolerances.{key} is not a known tolerance (ode, pde, oracle)")
            elif not _is_number(value) or value <= 0:
                errors.append(f"tolerances.{key} must be a positive number")

    def _validate_oracle(self, section: Any, errors: List[str], warnings: List[str]):
        """Validate the oracle section."""
        if not isinstance(section, dict):
            errors.append("oracle must be an object")
            return
        if 'enabled' in section and not isinstance(section['enabled'], bool):
            errors.append("oracle.enabled must be true or false")
        if 'fd_step' in section and (not _is_number(section['fd_step']) or section['fd_step'] <= 0):
            errors.append("oracle.fd_step must be a positive number")
        if 'order' in section and section['order'] not in (2, 4):
            errors.append("oracle.order must be 2 or 4")
        steps = section.get('steps')
        if steps is not None:
            if not isinstance(steps, list) or len(steps) < 2:
                errors.append("oracle.steps must be an array of at least two step sizes")
            elif any(not _is_number(step) or step <= 0 for step in steps):
                errors.append("oracle.steps entries must be positive numbers")
        if 'fiber' in section and section['fiber'] != 'flat_torus':
            errors.append("oracle.fiber must be 'flat_torus' (abstract fibers have no coordinates)")
        if _is_number(section.get('fd_step')) and section['fd_step'] < 1e-5:
            warnings.append("oracle.fd_step below 1e-5: roundoff will dominate second differences")

    def _validate_defect(self, section: Any, errors: List[str]):
        """Validate the defect section."""
        if not isinstance(section, dict):
            errors.append("defect must be an object")
            return
        if section.get('target') not in DEFECT_TARGETS:
            errors.append(f"defect.target must be one of {list(DEFECT_TARGETS)}")
        if section.get('mode', 'quadratic') not in DEFECT_MODES:
            errors.append(f"defect.mode must be one of {list(DEFECT_MODES)}")
        if 'amount' in section and not _is_number(section['amount']):
            errors.append("defect.amount must be a finite number")

    def _validate_output(self, section: Any, errors: List[str]):
        """Validate the output section."""
        if not isinstance(section, dict):
            errors.append("output must be an object")
            return
        if 'format' in section and section['format'] not in OUTPUT_FORMATS:
            errors.append(f"output.format must be one of {list(OUTPUT_FORMATS)}")
        if 'dir' in section and not isinstance(section['dir'], str):
            errors.append("output.dir must be a string")

    def validate_and_load_config(self, file_path: str) -> ValidationResult:
        """
        Load and validate a run configuration file.
        Report files are accepted: their provenance.parameters block is used.

        Args:
            file_path: Path to configuration or report file

        Returns:
            ValidationResult with loaded and validated data
        """
        self.logger.info(f"Loading and validating configuration from: {file_path}")

        if not os.path.exists(file_path):
            return ValidationResult(
                success=False,
                message=f"Configuration file not found: {file_path}",
                validation_errors=[f"File not found: {file_path}"]
            )

        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                doc = json.load(f)
        except json.JSONDecodeError as e:
            return ValidationResult(
                success=False,
                message=f"Invalid JSON in configuration file: {str(e)}",
                validation_errors=[f"JSON decode error: {str(e)}"]
            )
        except OSError as e:
            return ValidationResult(
                success=False,
                message=f"Error loading configuration: {str(e)}",
                validation_errors=[f"Load error: {str(e)}"]
            )

        if isinstance(doc, dict) and isinstance(doc.get('provenance'), dict) \
                and 'parameters' in doc['provenance']:
            self.logger.info("Report file detected: re-using its embedded parameters")
            doc = doc['provenance']['parameters']

        validation_result = self.validate_run_config(doc)
        if validation_result.success:
            validation_result.data = doc
            validation_result.message = f"Configuration loaded and validated successfully from {file_path}"
            if validation_result.warnings:
                validation_result.message += f" with {len(validation_result.warnings)} warnings"
        return validation_result

    def save_validated_config(self, doc: Dict[str, Any], file_path: str) -> ValidationResult:
        """
        Validate and save a run configuration to file.

        Args:
            doc: Run configuration to validate and save
            file_path: Destination path

        Returns:
            ValidationResult indicating success or failure
        """
        self.logger.info(f"Validating and saving configuration to: {file_path}")

        validation_result = self.validate_run_config(doc)
        if not validation_result.success:
            return validation_result

        try:
            config_dir = os.path.dirname(file_path)
            if config_dir and not os.path.exists(config_dir):
                os.makedirs(config_dir, exist_ok=True)
                self.logger.info(f"Created configuration directory: {config_dir}")

            with open(file_path, 'w', encoding='utf-8') as f:
                json.dump(doc, f, indent=2)

            validation_result.data = doc
            validation_result.message = f"Configuration validated and saved successfully to {file_path}"
            return validation_result

        except OSError as e:
            return ValidationResult(
                success=False,
                message=f"Error saving configuration: {str(e)}",
                validation_errors=[f"Save error: {str(e)}"]
            )
