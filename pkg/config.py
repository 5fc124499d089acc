import os
from typing import Dict, Any, Optional

# Rutas base
RUTA_BASE = os.getcwd()
RUTA_REPORTES = os.path.join(RUTA_BASE, "reports")
RUTA_LOGS = os.path.join(RUTA_BASE, "logs")

TOOL_NAME = "warpsol"
TOOL_VERSION = "1.0.0"

# ============================================================================
# NUMERICAL CONFIGURATION
# ============================================================================

# Finite-difference oracle
FD_CONFIG = {
    "step": 1e-3,
    "order": 2,
    "allowed_orders": (2, 4),
    "condition_limit": 1e12,  # metrics above this condition number are rejected
    "oracle_steps": (4e-3, 2e-3, 1e-3),
    "floor": 1e-10,  # residuals below this at every step are reported as "floor"
    "max_dim": 16,
    "oracle_points": 4
}

# Residual tolerances
TOLERANCE_CONFIG = {
    "ode_analytic": 1e-9,
    "ode_numeric": 1e-6,
    "pde_analytic": 1e-8,
    "pde_numeric": 1e-6,
    "oracle": 5e-6,
    "consistency": 1e-8,
    "proportionality": 1e-8,
    "null_direction": 1e-12,
    "symmetry": 1e-14
}

# Evaluation grids
GRID_CONFIG = {
    "lattice_points_per_axis": 7,
    "quasi_random_points": 32,
    "lattice_max_dim": 3,  # n >= 4 switches to quasi-random points
    "default_samples": 200,
    "default_base_points": 16,
    "seed": 0
}

# Phase-plane integration
INTEGRATOR_CONFIG = {
    "method": "DOP853",
    "rtol": 1e-10,
    "atol": 1e-12,
    "samples": 2049,
    "root_margin": 1e-6  # stop this close (relative) to the phase-quadratic root
}

# Nested quadrature
QUADRATURE_CONFIG = {
    "inner_epsabs": 1e-10,
    "outer_epsabs": 1e-9,
    "epsrel": 1e-12,
    "limit": 200,
    "nodes": 81
}

# Default constants for the solution families
SOLUTION_DEFAULTS = {
    "b": 0.0,
    "c1": 1.0,
    "c2": 1.0,
    "c3": 1.0,
    "c4": 0.0,
    "c5": 0.0,
    "A": 1.0,
    "k": 1.0
}

# Logging Configuration
LOGGING_CONFIG = {
    "max_file_size": 10 * 1024 * 1024,  # 10MB
    "backup_count": 5,
    "log_dir": RUTA_LOGS,
    "console_level": "INFO",
    "file_level": "DEBUG"
}

# Output Configuration
OUTPUT_CONFIG = {
    "dir": RUTA_REPORTES,
    "format": "json",
    "float_format": "%.17g",
    "report_name": "report.json",
    "oracle_report_name": "oracle_report.json",
    "table_name": "samples",
    "residual_table_name": "residuals.csv"
}

EXIT_CODES = {
    "pass": 0,
    "fail": 1,
    "config_error": 2
}

# ============================================================================
# ENVIRONMENT-SPECIFIC CONFIGURATION
# ============================================================================

def get_environment() -> str:
    """
    Get current environment from environment variable.

    Returns:
        Environment name: 'development', 'testing', or 'production'
    """
    return os.environ.get('WARPSOL_ENV', 'production').lower()

def get_config_for_environment(env: Optional[str] = None) -> Dict[str, Any]:
    """
    Get configuration settings for specific environment.

    Args:
        env: Environment name. If None, uses current environment.

    Returns:
        Dictionary with environment-specific configuration
    """
    if env is None:
        env = get_environment()

    base_config = {
        "fd": dict(FD_CONFIG),
        "tolerances": dict(TOLERANCE_CONFIG),
        "grid": dict(GRID_CONFIG),
        "integrator": dict(INTEGRATOR_CONFIG),
        "quadrature": dict(QUADRATURE_CONFIG),
        "logging": dict(LOGGING_CONFIG),
        "output": dict(OUTPUT_CONFIG)
    }

    if env == 'development':
        base_config["logging"]["console_level"] = "DEBUG"

    elif env == 'testing':
        base_config["logging"]["console_level"] = "WARNING"

    elif env == 'production':
        base_config["logging"]["console_level"] = "INFO"

    return base_config

# ============================================================================
# CONFIGURATION VALIDATION
# ============================================================================

def validate_configuration() -> Dict[str, Any]:
    """
    Validate the numerical constants and return validation results.

    Returns:
        Dictionary with validation results and any issues found
    """
    issues = []
    warnings = []

    if FD_CONFIG["step"] <= 0:
        issues.append("FD step must be positive")
    if FD_CONFIG["order"] not in FD_CONFIG["allowed_orders"]:
        issues.append(f"FD order must be one of {FD_CONFIG['allowed_orders']}")
    if any(step <= 0 for step in FD_CONFIG["oracle_steps"]):
        issues.append("Oracle steps must be positive")
    if len(FD_CONFIG["oracle_steps"]) < 2:
        issues.append("Oracle convergence study needs at least two steps")

    for name, value in TOLERANCE_CONFIG.items():
        if value <= 0:
            issues.append(f"Tolerance {name} must be positive")

    if INTEGRATOR_CONFIG["rtol"] > 1e-9:
        warnings.append("Integrator rtol is looser than the phase-plane error budget (1e-9)")
    if QUADRATURE_CONFIG["inner_epsabs"] > QUADRATURE_CONFIG["outer_epsabs"]:
        warnings.append("Inner quadrature tolerance is looser than the outer one")
    if FD_CONFIG["step"] < 1e-5:
        warnings.append("FD step is small enough for roundoff to dominate second derivatives")

    return {
        "valid": len(issues) == 0,
        "issues": issues,
        "warnings": warnings,
        "environment": get_environment()
    }
