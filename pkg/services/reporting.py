# -*- coding: utf-8 -*-
"""
Residual reports and plot-ready tables.

Reports are JSON documents with a fixed key order; tables are written with
pandas as CSV (17 significant digits) or as column-oriented JSON. Both
round-trip to identical floats.
"""

import json
import math
import os
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from config import OUTPUT_CONFIG, TOOL_NAME, TOOL_VERSION
from .base import CheckResult, Result, TableResult
from .exceptions import ConfigurationError
from .invariant_ode import Direction, ProfileTriple, ode_residuals
from .logging_config import get_logger
from .warped import SolitonConfig

logger = get_logger(__name__)

UNIT_EQUATIONS = ("E1", "E2", "E3")
NULL_EQUATIONS = ("E_null",)
PHASE_COLUMNS = ("x", "y", "z")


def _json_safe(value: Any) -> Any:
    """Replace non-finite floats (unbounded domains) by None so the output stays strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (np.floating, np.integer)):
        return _json_safe(value.item())
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    if isinstance(value, np.ndarray):
        return _json_safe(value.tolist())
    return value


@dataclass
class ResidualReport(Result):
    """
    Outcome of a verify or oracle run.

    `equations` maps each ODE equation to its samples and norms, `checks`
    holds the sampled PDE-level checks, `oracle` the FD comparison block.
    The verdict is "pass" iff every checked max-norm is within its tolerance.
    """
    command: str = "verify"
    equations: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    checks: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    oracle: Optional[Dict[str, Any]] = None
    verdict: str = "fail"
    notes: List[str] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)
    error: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'command': self.command,
            'verdict': self.verdict,
            'message': self.message,
            'equations': self.equations,
            'checks': self.checks,
            'oracle': self.oracle,
            'notes': list(self.notes),
            'error': self.error,
            'provenance': self.provenance
        }
        return _json_safe(doc)


def build_provenance(run, channel: str, preset: Optional[str] = None) -> Dict[str, Any]:
    """Everything needed to re-run the job: the full run configuration plus tool metadata."""
    return {
        'parameters': run.to_dict(),
        'preset': preset,
        'seed': run.grid.seed,
        'channel': channel,
        'tool': TOOL_NAME,
        'tool_version': TOOL_VERSION,
        'timestamp': datetime.now().isoformat(timespec='seconds')
    }


def summarize_check(check: CheckResult) -> Dict[str, Any]:
    """Plain dictionary view of a CheckResult for embedding in a report."""
    return {
        'passed': bool(check.success),
        'max_deviation': check.max_deviation,
        'tolerance': check.tolerance,
        'points_checked': check.points_checked,
        'message': check.message,
        'details': check.details
    }


def equation_names(direction: Direction) -> tuple:
    return NULL_EQUATIONS if direction.is_null else UNIT_EQUATIONS


def residual_table(config: SolitonConfig, triple: ProfileTriple, direction: Direction,
                   xis: Iterable[float]) -> pd.DataFrame:
    """ODE residuals per xi sample: columns xi, E1, E2, E3 (or xi, E_null)."""
    names = equation_names(direction)
    rows = []
    for xi in xis:
        residual = ode_residuals(config, triple, float(xi), direction)
        rows.append([float(xi)] + [float(value) for value in residual])
    return pd.DataFrame(rows, columns=['xi', *names])


def summarize_equations(table: pd.DataFrame, tolerance: float) -> Dict[str, Dict[str, Any]]:
    """Per-equation samples with max-norm, RMS and pass flag."""
    summary = {}
    for name in table.columns[1:]:
        values = table[name].to_numpy(dtype=float)
        max_abs = float(np.max(np.abs(values))) if values.size else 0.0
        summary[name] = {
            'xi': table['xi'].tolist(),
            'values': values.tolist(),
            'max_abs': max_abs,
            'rms': float(np.sqrt(np.mean(values ** 2))) if values.size else 0.0,
            'tolerance': tolerance,
            'passed': max_abs <= tolerance
        }
    return summary


def profile_table(triple: ProfileTriple, xis: Iterable[float]) -> pd.DataFrame:
    """
    Rows (xi, phi, f, h, phi', f', h', phi'', f'', h'') plus the phase
    coordinates x, y, z when the family provides them.
    """
    extras = triple.extras
    phase = [name for name in PHASE_COLUMNS if name in extras]
    if 'y' not in extras and 'x' in extras and 'z' in extras:
        phase = ['x', 'y', 'z']

    rows = []
    for xi in xis:
        xi = float(xi)
        (phi, dphi, ddphi), (f, df, ddf), (h, dh, ddh) = triple.jets(xi)
        row = [xi, phi, f, h, dphi, df, dh, ddphi, ddf, ddh]
        for name in phase:
            if name == 'y' and 'y' not in extras:
                row.append(float(extras['x'](xi)) * float(extras['z'](xi)))
            else:
                row.append(float(extras[name](xi)))
        rows.append(row)
    columns = ['xi', 'phi', 'f', 'h', 'phi_prime', 'f_prime', 'h_prime',
               'phi_second', 'f_second', 'h_second', *phase]
    return pd.DataFrame(rows, columns=columns)


def write_table(table: pd.DataFrame, path: str, fmt: str = "csv") -> TableResult:
    """Write a table as CSV (17 significant digits) or column-oriented JSON."""
    if fmt not in ("csv", "json"):
        raise ConfigurationError(f"Table format must be csv or json, got '{fmt}'")
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    if fmt == "csv":
        table.to_csv(path, index=False, float_format=OUTPUT_CONFIG["float_format"])
    else:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(_json_safe(table.to_dict(orient='list')), f, indent=2)
    logger.info(f"Wrote {len(table)} rows to {path}")
    return TableResult(
        success=True,
        message=f"Table written to {path}",
        table_path=path,
        columns=list(table.columns),
        rows=len(table)
    )


def read_table(path: str) -> pd.DataFrame:
    """Read a table written by write_table."""
    if path.endswith('.json'):
        with open(path, 'r', encoding='utf-8') as f:
            return pd.DataFrame(json.load(f))
    return pd.read_csv(path, float_precision='round_trip', dtype=float)


def write_report(report: ResidualReport, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(report.to_dict(), f, indent=2, allow_nan=False)
        f.write("\n")
    logger.info(f"Report written to {path} (verdict: {report.verdict})")
    return path
