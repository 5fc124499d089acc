# -*- coding: utf-8 -*-
"""
System dependency checker for the WARPSOL toolkit.
Validates the numerical stack and the output directories before a run.
"""

import importlib
import os
import platform
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .base import Result
from .logging_config import get_logger

logger = get_logger(__name__)


@dataclass
class DependencyResult(Result):
    """Result class for dependency checking operations."""
    missing_dependencies: Optional[List[str]] = None
    installation_instructions: Optional[Dict[str, str]] = None


@dataclass
class ConfigurationResult(Result):
    """Result class for configuration validation operations."""
    missing_directories: Optional[List[str]] = None
    created_directories: Optional[List[str]] = None


def _version_tuple(version: str) -> Tuple[int, ...]:
    parts = []
    for piece in version.split('.')[:3]:
        match = re.match(r'\d+', piece)
        if not match:
            break
        parts.append(int(match.group()))
    return tuple(parts)


class SystemChecker:
    """
    System dependency checker that validates the numerical packages
    and provides installation instructions for missing components.
    """

    # Minimum versions of the numerical stack
    REQUIRED_PACKAGES = {
        'numpy': '1.22',
        'scipy': '1.8',
        'pandas': '1.4'
    }

    # Installation instructions for missing dependencies
    INSTALLATION_INSTRUCTIONS = {
        'numpy': {
            'windows': 'pip install "numpy>=1.22"',
            'linux': 'pip install "numpy>=1.22" (or: sudo apt-get install python3-numpy)',
            'macos': 'pip install "numpy>=1.22"'
        },
        'scipy': {
            'windows': 'pip install "scipy>=1.8"',
            'linux': 'pip install "scipy>=1.8" (or: sudo apt-get install python3-scipy)',
            'macos': 'pip install "scipy>=1.8"'
        },
        'pandas': {
            'windows': 'pip install "pandas>=1.4"',
            'linux': 'pip install "pandas>=1.4" (or: sudo apt-get install python3-pandas)',
            'macos': 'pip install "pandas>=1.4"'
        },
        'python': {
            'windows': 'Install Python from https://www.python.org/downloads/',
            'linux': 'Install python3: sudo apt-get install python3 python3-pip',
            'macos': 'Install Python from https://www.python.org/downloads/ or use Homebrew: brew install python'
        }
    }

    def __init__(self):
        """Initialize the SystemChecker."""
        self.logger = get_logger(self.__class__.__name__)

    def check_numerical_stack(self) -> DependencyResult:
        """
        Check numpy, scipy and pandas (import and minimum version) and IEEE double precision.

        Returns:
            DependencyResult: Result containing missing dependencies and installation instructions
        """
        self.logger.info("Starting numerical stack check")

        missing_deps = []
        installation_instructions = {}
        versions = {}

        python_result = self.check_python_installation()
        if not python_result.success:
            missing_deps.append('python')
            installation_instructions['python'] = self._get_installation_instruction('python')

        for package, minimum in self.REQUIRED_PACKAGES.items():
            package_result = self.check_package(package, minimum)
            if package_result.success:
                versions[package] = package_result.data['version']
            else:
                missing_deps.append(package)
                installation_instructions[package] = self._get_installation_instruction(package)

        precision_result = self.check_float_precision()
        if not precision_result.success:
            missing_deps.append('float64')
            installation_instructions['float64'] = precision_result.message

        if missing_deps:
            self.logger.warning(f"Missing dependencies found: {missing_deps}")
            return DependencyResult(
                success=False,
                message=f"Missing required dependencies: {', '.join(missing_deps)}",
                data={'versions': versions},
                missing_dependencies=missing_deps,
                installation_instructions=installation_instructions,
                error_code="MISSING_DEPENDENCIES"
            )

        self.logger.info(f"Numerical stack available: {versions}")
        return DependencyResult(
            success=True,
            message="All required dependencies are available",
            data={'versions': versions}
        )

    def check_package(self, name: str, minimum: str) -> Result:
        """
        Check that a package imports and meets a minimum version.

        Returns:
            Result: Success with the installed version, failure otherwise
        """
        try:
            module = importlib.import_module(name)
        except ImportError as e:
            self.logger.warning(f"{name} is not installed: {e}")
            return Result(
                success=False,
                message=f"{name} is not installed",
                error_code="PACKAGE_NOT_FOUND"
            )

        version = getattr(module, '__version__', '0')
        if _version_tuple(version) < _version_tuple(minimum):
            self.logger.warning(f"{name} {version} is older than the required {minimum}")
            return Result(
                success=False,
                message=f"{name} {version} is too old. Minimum required: {minimum}",
                data={'version': version},
                error_code="PACKAGE_TOO_OLD"
            )
        return Result(success=True, message=f"{name} {version} is available", data={'version': version})

    def check_float_precision(self) -> Result:
        """Check that numpy's default float is IEEE binary64."""
        try:
            import numpy as np
        except ImportError:
            return Result(success=False, message="numpy unavailable: cannot check float precision",
                          error_code="PRECISION_CHECK_ERROR")
        info = np.finfo(float)
        if info.bits != 64 or info.eps != 2.0 ** -52:
            return Result(
                success=False,
                message=f"Default float is not IEEE double precision (bits={info.bits}, eps={info.eps})",
                error_code="FLOAT_PRECISION"
            )
        return Result(success=True, message="IEEE double precision available", data={'eps': float(info.eps)})

    def check_python_installation(self) -> Result:
        """
        Check that the running Python is recent enough.

        Returns:
            Result: Success if Python is available, failure otherwise
        """
        python_version = f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}"
        self.logger.debug(f"Python {python_version} found at: {sys.executable}")

        if sys.version_info >= (3, 8):
            return Result(
                success=True,
                message=f"Python {python_version} is available",
                data={'version': python_version, 'path': sys.executable}
            )
        return Result(
            success=False,
            message=f"Python version {python_version} is too old. Minimum required: 3.8",
            error_code="PYTHON_VERSION_TOO_OLD"
        )

    def get_system_info(self) -> Dict[str, str]:
        """
        Get basic system information for troubleshooting.

        Returns:
            Dict[str, str]: System information
        """
        return {
            'platform': platform.system(),
            'platform_version': platform.version(),
            'architecture': platform.architecture()[0],
            'python_version': platform.python_version(),
            'python_executable': str(Path(sys.executable)),
        }

    def _get_installation_instruction(self, dependency: str) -> str:
        """
        Get installation instruction for a specific dependency based on the current platform.

        Args:
            dependency: Name of the dependency

        Returns:
            str: Installation instruction
        """
        system = platform.system().lower()
        if system == 'darwin':
            system = 'macos'
        elif system not in ['windows', 'linux', 'macos']:
            system = 'linux'  # Default to linux for unknown systems

        instructions = self.INSTALLATION_INSTRUCTIONS.get(dependency, {})
        return instructions.get(system, f"Please install {dependency} for your operating system")

    def validate_configuration(self, output_dir: Optional[str] = None) -> ConfigurationResult:
        """
        Validate the numerical constants and create missing output/log directories.

        Returns:
            ConfigurationResult: Result containing validation status and created items
        """
        import config

        issues = config.validate_configuration()
        created, missing = [], []
        for directory in (output_dir or config.OUTPUT_CONFIG["dir"], config.LOGGING_CONFIG["log_dir"]):
            if os.path.isdir(directory):
                continue
            try:
                os.makedirs(directory, exist_ok=True)
                created.append(directory)
                self.logger.info(f"Created directory: {directory}")
            except OSError as e:
                self.logger.error(f"Cannot create directory {directory}: {e}")
                missing.append(directory)

        for warning in issues['warnings']:
            self.logger.warning(warning)
        success = issues['valid'] and not missing
        message = "Configuration is valid" if success else \
            "; ".join(issues['issues'] + [f"Cannot create {d}" for d in missing])
        return ConfigurationResult(
            success=success,
            message=message,
            data=issues,
            missing_directories=missing or None,
            created_directories=created or None,
            error_code=None if success else "CONFIG_ERROR"
        )

    def validate_startup_requirements(self, output_dir: Optional[str] = None) -> DependencyResult:
        """
        Validate all startup requirements; called by the command-line entry point.

        Returns:
            DependencyResult: Comprehensive validation result
        """
        self.logger.info("Validating startup requirements")
        system_info = self.get_system_info()
        self.logger.debug(f"System info: {system_info}")

        dependency_result = self.check_numerical_stack()
        if not dependency_result.success:
            dependency_result.data = {**(dependency_result.data or {}), 'system_info': system_info}
            return dependency_result

        config_result = self.validate_configuration(output_dir)
        dependency_result.data = {
            **(dependency_result.data or {}),
            'system_info': system_info,
            'configuration_result': {
                'success': config_result.success,
                'message': config_result.message,
                'created_directories': config_result.created_directories
            }
        }
        if not config_result.success:
            self.logger.error(f"Configuration issues: {config_result.message}")
            dependency_result.success = False
            dependency_result.message = config_result.message
            dependency_result.error_code = "CONFIG_ERROR"
        else:
            self.logger.info("All startup requirements validated successfully")
        return dependency_result
