# -*- coding: utf-8 -*-
"""
Run orchestration for the command-line commands.

Each runner takes a RunConfig, builds the profiles, evaluates the residual
suites and writes its outputs under run.output.dir. Failures of the data
(domain violations, non-finite values) end up in the report; failures of
the configuration propagate as exceptions.
"""

import os
from typing import List, Optional

import numpy as np

from config import FD_CONFIG, OUTPUT_CONFIG, TOLERANCE_CONFIG
from .base import TableResult
from .exceptions import DomainError, NonFiniteError, UnsupportedModeError
from .invariant_ode import (
    Direction, Interval, ProfileTriple, check_null_forcing, pde_ode_consistency, pulled_back_data
)
from .logging_config import get_logger
from .reporting import (
    ResidualReport, build_provenance, profile_table, residual_table, summarize_check,
    summarize_equations, write_report, write_table
)
from .run_config import RunConfig
from .solutions import build_family, inject_defect
from .warped import base_hessian_hypothesis, oracle_convergence, sweep_pde_residuals

logger = get_logger(__name__)


def build_triple(run: RunConfig) -> ProfileTriple:
    """Profiles of the configured family, with the defect applied when one is requested."""
    triple = build_family(run.family, run.soliton, run.params)
    if run.defect is not None:
        triple = inject_defect(triple, run.defect.target, run.defect.mode, run.defect.amount)
    return triple


def xi_grid(domain: Interval, xi_min: float, xi_max: float, count: int, margin: float = 0.05) -> np.ndarray:
    """
    Evenly spaced xi samples on [xi_min, xi_max] intersected with the open profile domain.

    Ends that hit the domain boundary are pulled inside by `margin` of the width.
    """
    clipped_lo, clipped_hi = domain.lo >= xi_min, domain.hi <= xi_max
    lo, hi = max(xi_min, domain.lo), min(xi_max, domain.hi)
    if not lo < hi:
        raise DomainError(
            f"Grid [{xi_min}, {xi_max}] does not meet the profile domain ({domain.lo}, {domain.hi})",
            details={'grid': [xi_min, xi_max], 'domain': domain.to_list()}
        )
    pad = margin * (hi - lo)
    if clipped_lo:
        lo += pad
    if clipped_hi:
        hi -= pad
    return np.linspace(lo, hi, count)


def base_points(direction: Direction, xis: np.ndarray, count: int, seed: int,
                spread: float = 0.5) -> np.ndarray:
    """
    Base points x with alpha . x = xi for an evenly spread subset of the xi samples.

    Each point is xi * alpha / |alpha|^2 plus a seeded random offset orthogonal to alpha.
    """
    alpha = direction.vector
    length_sq = float(np.dot(alpha, alpha))
    rng = np.random.default_rng(seed)
    picks = np.unique(np.linspace(0, len(xis) - 1, min(count, len(xis))).round().astype(int))
    points = []
    for index in picks:
        offset = rng.normal(scale=spread, size=alpha.size)
        offset -= np.dot(offset, alpha) / length_sq * alpha
        points.append(xis[index] * alpha / length_sq + offset)
    return np.array(points)


def _tolerance(explicit: Optional[float], kind: str, analytic_key: str, numeric_key: str) -> float:
    if explicit is not None:
        return explicit
    return TOLERANCE_CONFIG[analytic_key if kind == "analytic" else numeric_key]


def _oracle_block(check) -> dict:
    return {
        'passed': bool(check.success),
        'max_residual': check.max_deviation,
        'tolerance': check.tolerance,
        'points': check.points_checked,
        'fd_order': check.details['nominal_order'],
        'steps': check.data,
        'fitted_order': check.details['order'],
        'fitted_constant': check.details['constant'],
        'order_status': check.details['order_status'],
        'extrapolated_residual': check.details['extrapolated_residual']
    }


def _verdict(equations: dict, checks: dict, oracle: Optional[dict]) -> bool:
    passed = all(entry['passed'] for entry in equations.values())
    passed = passed and all(entry['passed'] for entry in checks.values() if not entry.get('informational'))
    return passed and (oracle is None or oracle['passed'])


def _output_path(run: RunConfig, name: str) -> str:
    return os.path.join(run.output.dir, name)


def _failed_report(command: str, error, notes: List[str], provenance: dict,
                   equations: Optional[dict] = None) -> ResidualReport:
    logger.error(f"{command} aborted: {error}")
    return ResidualReport(
        success=False,
        message=f"Evaluation failed: {error.message}",
        error_code=error.error_code,
        command=command,
        equations=equations or {},
        verdict="fail",
        notes=notes,
        provenance=provenance,
        error=error.to_dict()
    )


def verify_run(run: RunConfig, write: bool = True) -> ResidualReport:
    """
    ODE residuals on the xi grid, PDE residuals and the PDE/ODE factorization
    at base points, and the FD oracle when enabled. Writes report.json, plus
    residuals.csv when the output format is csv.
    """
    config, direction = run.soliton, run.direction()
    check_null_forcing(config, direction)
    if run.oracle.enabled and run.oracle.fiber != "flat_torus":
        raise UnsupportedModeError(f"FD oracle needs a flat_torus fiber, got '{run.oracle.fiber}'")

    triple = build_triple(run)
    notes = list(triple.notes)
    if config.m == 1:
        notes.append("line fiber (m = 1): E3 evaluated in its line-fiber form")
    provenance = build_provenance(run, triple.kind, run.preset)
    logger.info(f"Verifying family {run.family} ({direction.causal_type} direction, {triple.kind} profiles)")

    equations, table = {}, None
    try:
        xis = xi_grid(triple.domain, run.grid.xi_min, run.grid.xi_max, run.grid.samples)
        table = residual_table(config, triple, direction, xis)
        equations = summarize_equations(
            table, _tolerance(run.tolerances.ode, triple.kind, "ode_analytic", "ode_numeric")
        )

        points = base_points(direction, xis, run.grid.base_points, run.grid.seed)
        data = pulled_back_data(config, triple, direction)
        checks = {
            'pde': summarize_check(sweep_pde_residuals(
                data, points, tolerance=_tolerance(run.tolerances.pde, triple.kind, "pde_analytic", "pde_numeric")
            )),
            'consistency': summarize_check(pde_ode_consistency(config, triple, direction, points))
        }
        hypothesis = base_hessian_hypothesis(data, points)
        checks['base_hessian'] = {**summarize_check(hypothesis), 'status': hypothesis.data, 'informational': True}
        if hypothesis.data == "inconclusive":
            notes.append("Hess(f) vanished on every sampled base point: base hypothesis inconclusive")

        oracle = None
        if run.oracle.enabled:
            concrete = pulled_back_data(config, triple, direction, fiber=run.oracle.fiber)
            step = run.oracle.fd_step
            oracle = _oracle_block(oracle_convergence(
                concrete, points[:FD_CONFIG["oracle_points"]],
                steps=(2 * step, step), order=run.oracle.order, tolerance=run.tolerances.oracle
            ))
    except (DomainError, NonFiniteError) as e:
        report = _failed_report("verify", e, notes, provenance, equations)
    else:
        passed = _verdict(equations, checks, oracle)
        worst = max(entry['max_abs'] for entry in equations.values())
        report = ResidualReport(
            success=passed,
            message=f"Max ODE residual {worst:.3e}; PDE {checks['pde']['message']}",
            command="verify",
            equations=equations,
            checks=checks,
            oracle=oracle,
            verdict="pass" if passed else "fail",
            notes=notes,
            provenance=provenance
        )

    if write:
        paths = {'report': write_report(report, _output_path(run, OUTPUT_CONFIG["report_name"]))}
        if run.output.format == "csv" and table is not None:
            paths['residuals'] = write_table(
                table, _output_path(run, OUTPUT_CONFIG["residual_table_name"]), "csv"
            ).table_path
        report.data = paths
    logger.info(f"Verify verdict: {report.verdict}")
    return report


def sample_run(run: RunConfig) -> TableResult:
    """Tabulate the profiles and their derivatives on the xi grid."""
    triple = build_triple(run)
    xis = xi_grid(triple.domain, run.grid.xi_min, run.grid.xi_max, run.grid.samples)
    table = profile_table(triple, xis)
    name = f"{OUTPUT_CONFIG['table_name']}.{run.output.format}"
    result = write_table(table, _output_path(run, name), run.output.format)
    result.data = {'notes': list(triple.notes), 'domain': triple.domain.to_list()}
    return result


def oracle_run(run: RunConfig, write: bool = True) -> ResidualReport:
    """FD convergence study on the concrete block metric at the configured steps."""
    config, direction = run.soliton, run.direction()
    check_null_forcing(config, direction)
    if run.oracle.fiber != "flat_torus":
        raise UnsupportedModeError(f"FD oracle needs a flat_torus fiber, got '{run.oracle.fiber}'")

    triple = build_triple(run)
    notes = list(triple.notes)
    provenance = build_provenance(run, triple.kind, run.preset)
    try:
        xis = xi_grid(triple.domain, run.grid.xi_min, run.grid.xi_max, run.grid.samples)
        count = min(run.grid.base_points, FD_CONFIG["oracle_points"])
        points = base_points(direction, xis, count, run.grid.seed)
        data = pulled_back_data(config, triple, direction, fiber=run.oracle.fiber)
        check = oracle_convergence(data, points, run.oracle.steps, run.oracle.order, run.tolerances.oracle)
    except (DomainError, NonFiniteError) as e:
        report = _failed_report("oracle", e, notes, provenance)
    else:
        oracle = _oracle_block(check)
        if oracle['order_status'] == "floor":
            notes.append("FD residual at roundoff floor for every step: order not fitted")
        report = ResidualReport(
            success=check.success,
            message=check.message,
            command="oracle",
            oracle=oracle,
            verdict="pass" if check.success else "fail",
            notes=notes,
            provenance=provenance
        )

    if write:
        report.data = {'report': write_report(report, _output_path(run, OUTPUT_CONFIG["oracle_report_name"]))}
    return report
