# -*- coding: utf-8 -*-
"""
RunConfig model: a validated run configuration turned into typed objects.
"""

import copy
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Tuple

from config import FD_CONFIG, GRID_CONFIG, OUTPUT_CONFIG, TOLERANCE_CONFIG
from .config_validator import ConfigValidator
from .conformal import Signature
from .exceptions import ConfigurationError
from .invariant_ode import Direction, classify_direction
from .logging_config import get_logger
from .solutions import presets
from .warped import SolitonConfig

logger = get_logger(__name__)


@dataclass(frozen=True)
class GridSpec:
    xi_min: float = -2.0
    xi_max: float = 2.0
    samples: int = GRID_CONFIG["default_samples"]
    base_points: int = GRID_CONFIG["default_base_points"]
    seed: int = GRID_CONFIG["seed"]


@dataclass(frozen=True)
class Tolerances:
    ode: Optional[float] = None
    pde: Optional[float] = None
    oracle: float = TOLERANCE_CONFIG["oracle"]


@dataclass(frozen=True)
class OracleSpec:
    enabled: bool = False
    fd_step: float = FD_CONFIG["step"]
    order: int = FD_CONFIG["order"]
    steps: Tuple[float, ...] = FD_CONFIG["oracle_steps"]
    fiber: str = "flat_torus"


@dataclass(frozen=True)
class DefectSpec:
    target: str
    mode: str = "quadratic"
    amount: float = 0.01


@dataclass(frozen=True)
class OutputSpec:
    dir: str = OUTPUT_CONFIG["dir"]
    format: str = OUTPUT_CONFIG["format"]


@dataclass(frozen=True)
class RunConfig:
    """Everything a verify, sample or oracle run needs."""
    soliton: SolitonConfig
    alpha: Tuple[float, ...]
    family: str
    params: Dict[str, Any] = field(default_factory=dict)
    grid: GridSpec = GridSpec()
    tolerances: Tolerances = Tolerances()
    oracle: OracleSpec = OracleSpec()
    defect: Optional[DefectSpec] = None
    output: OutputSpec = OutputSpec()
    preset: Optional[str] = None

    def direction(self) -> Direction:
        return classify_direction(self.soliton.sig, self.alpha)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize back to the run configuration schema."""
        doc = {
            'config': self.soliton.to_dict(),
            'direction': {'alpha': list(self.alpha)},
            'family': {'name': self.family, 'params': copy.deepcopy(self.params)},
            'grid': {
                'xi_min': self.grid.xi_min,
                'xi_max': self.grid.xi_max,
                'samples': self.grid.samples,
                'base_points': self.grid.base_points,
                'seed': self.grid.seed
            },
            'tolerances': {key: value for key, value in (
                ('ode', self.tolerances.ode),
                ('pde', self.tolerances.pde),
                ('oracle', self.tolerances.oracle)
            ) if value is not None},
            'oracle': {
                'enabled': self.oracle.enabled,
                'fd_step': self.oracle.fd_step,
                'order': self.oracle.order,
                'steps': list(self.oracle.steps),
                'fiber': self.oracle.fiber
            },
            'output': {'dir': self.output.dir, 'format': self.output.format}
        }
        if self.defect is not None:
            doc['defect'] = {'target': self.defect.target, 'mode': self.defect.mode, 'amount': self.defect.amount}
        return doc


def _expand_preset(doc: Dict[str, Any]) -> Tuple[Dict[str, Any], Optional[str]]:
    name = doc['family']['name']
    if not name.startswith('preset:'):
        return doc, None
    preset_name = name[len('preset:'):]
    base = presets()[preset_name].to_config()
    for section, value in doc.items():
        if section == 'family':
            continue
        if isinstance(value, dict) and isinstance(base.get(section), dict):
            base[section] = {**base[section], **value}
        else:
            base[section] = value
    return base, preset_name


def _section(cls, values: Optional[Dict[str, Any]], name: str):
    try:
        return cls(**(values or {}))
    except TypeError as e:
        raise ConfigurationError(f"Invalid keys in section '{name}': {e}", details={'section': name}) from e


def run_config_from_dict(doc: Dict[str, Any]) -> RunConfig:
    """Validate a run configuration document and build the RunConfig."""
    validation = ConfigValidator().validate_run_config(doc)
    if not validation.success:
        raise ConfigurationError(
            validation.message + ": " + "; ".join(validation.validation_errors or []),
            details={'errors': validation.validation_errors or []}
        )
    for warning in validation.warnings or []:
        logger.warning(warning)

    doc, preset_name = _expand_preset(copy.deepcopy(doc))
    section = doc['config']
    soliton = SolitonConfig(
        n=section['n'],
        m=section['m'],
        sig=Signature(tuple(section['signature'])),
        rho=float(section.get('rho', 0.0)),
        lambda_F=float(section.get('lambda_F', 0.0))
    )

    oracle = dict(doc.get('oracle') or {})
    if 'steps' in oracle:
        oracle['steps'] = tuple(float(step) for step in oracle['steps'])
    defect = doc.get('defect')

    return RunConfig(
        soliton=soliton,
        alpha=tuple(float(value) for value in doc['direction']['alpha']),
        family=doc['family']['name'],
        params=dict(doc['family'].get('params') or {}),
        grid=_section(GridSpec, doc.get('grid'), 'grid'),
        tolerances=_section(Tolerances, doc.get('tolerances'), 'tolerances'),
        oracle=_section(OracleSpec, oracle, 'oracle'),
        defect=_section(DefectSpec, defect, 'defect') if defect else None,
        output=_section(OutputSpec, doc.get('output'), 'output'),
        preset=preset_name
    )


def load_run_config(file_path: str) -> RunConfig:
    """Load a run configuration (or a previous report) from disk."""
    result = ConfigValidator().validate_and_load_config(file_path)
    if not result.success:
        raise ConfigurationError(
            result.message + ": " + "; ".join(result.validation_errors or []),
            details={'errors': result.validation_errors or [], 'path': file_path}
        )
    return run_config_from_dict(result.data)


def apply_overrides(
    run: RunConfig,
    tolerance: Optional[float] = None,
    fd_step: Optional[float] = None,
    out: Optional[str] = None,
    fmt: Optional[str] = None
) -> RunConfig:
    """Command-line overrides take precedence over the file."""
    if tolerance is not None:
        if not tolerance > 0:
            raise ConfigurationError(f"--tolerance must be positive, got {tolerance}")
        run = replace(run, tolerances=Tolerances(ode=tolerance, pde=tolerance, oracle=tolerance))
    if fd_step is not None:
        if not fd_step > 0:
            raise ConfigurationError(f"--fd-step must be positive, got {fd_step}")
        run = replace(run, oracle=replace(
            run.oracle, fd_step=fd_step, steps=(4 * fd_step, 2 * fd_step, fd_step)
        ))
    if out is not None or fmt is not None:
        if fmt is not None and fmt not in ('csv', 'json'):
            raise ConfigurationError(f"--format must be csv or json, got {fmt}")
        run = replace(run, output=OutputSpec(
            dir=out if out is not None else run.output.dir,
            format=fmt if fmt is not None else run.output.format
        ))
    return run
