# -*- coding: utf-8 -*-
"""
Warped product M = (R^n, g_bar) x_f F^m with g_bar = g / phi^2.

Two fiber representations are supported:
    abstract    - only the fiber Einstein constant lambda_F enters (fast residual sweeps)
    flat_torus  - concrete flat fiber coordinates, lambda_F = 0 (full FD oracle runs)

The residual system of the soliton equation Ric + Hess(h) = rho * g_tilde
splits into an off-diagonal base part, a diagonal base part and a fiber part;
all three vanish iff g_tilde is a gradient Ricci soliton with potential h.
"""

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from config import FD_CONFIG, GRID_CONFIG, TOLERANCE_CONFIG
from .base import CheckResult
from .conformal import Signature, hessian_from_jets, laplacian_and_gradsq_from_jets, ricci_from_jet
from .exceptions import ConfigurationError, DimensionError, DomainError, UnsupportedModeError
from .logging_config import get_logger
from .tensor_core import (
    FDScheme, Jet, MetricField, ScalarField, hessian, scalar_jet, soliton_residual_field
)

logger = get_logger(__name__)

FIBER_KINDS = ("abstract", "flat_torus")


@dataclass(frozen=True)
class SolitonConfig:
    """Dimensions, signature and constants of the soliton problem."""
    n: int
    m: int
    sig: Signature
    rho: float = 0.0
    lambda_F: float = 0.0

    def __post_init__(self):
        if self.n < 3:
            raise DimensionError(f"Base dimension n must be at least 3, got {self.n}")
        if self.m < 1:
            raise DimensionError(f"Fiber dimension m must be at least 1, got {self.m}")
        if self.sig.n != self.n:
            raise DimensionError(
                f"Signature has {self.sig.n} entries, base dimension is {self.n}"
            )
        if self.m == 1 and self.lambda_F != 0:
            raise ConfigurationError(
                "A one-dimensional fiber is Ricci-flat: lambda_F must be 0 when m = 1",
                details={'m': self.m, 'lambda_F': self.lambda_F}
            )

    def to_dict(self):
        return {
            'n': self.n,
            'm': self.m,
            'signature': self.sig.to_list(),
            'rho': self.rho,
            'lambda_F': self.lambda_F
        }


@dataclass(frozen=True)
class WarpedData:
    """The triple (phi, f, h) on the base together with the problem configuration."""
    config: SolitonConfig
    phi: ScalarField
    f: ScalarField
    h: ScalarField
    fiber: str = "abstract"

    def __post_init__(self):
        for field in (self.phi, self.f, self.h):
            if field.dim != self.config.n:
                raise DimensionError(
                    f"Field {field.name} lives on R^{field.dim}, base dimension is {self.config.n}"
                )
        if self.fiber not in FIBER_KINDS:
            raise ConfigurationError(f"Unknown fiber kind '{self.fiber}', expected one of {FIBER_KINDS}")
        if self.fiber == "flat_torus" and self.config.lambda_F != 0:
            raise ConfigurationError(
                "A flat torus fiber has lambda_F = 0",
                details={'lambda_F': self.config.lambda_F}
            )


class PDEResiduals(NamedTuple):
    """Residuals of the off-diagonal base, diagonal base and fiber equations."""
    offdiag: np.ndarray
    diag: np.ndarray
    fiber: float

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.offdiag)), np.max(np.abs(self.diag)), abs(self.fiber)))

    def components(self) -> dict:
        return {
            'offdiag': float(np.max(np.abs(self.offdiag))),
            'diag': float(np.max(np.abs(self.diag))),
            'fiber': abs(float(self.fiber))
        }


def _jets(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> Tuple[Jet, Jet, Jet]:
    phi_jet = scalar_jet(data.phi, point, scheme)
    f_jet = scalar_jet(data.f, point, scheme)
    h_jet = scalar_jet(data.h, point, scheme)
    for name, jet in (("phi", phi_jet), ("f", f_jet)):
        if jet.value <= 0:
            raise DomainError(
                f"{name} must be positive, got {jet.value:.6g} at x={np.asarray(point, dtype=float).tolist()}",
                details={'field': name, 'value': jet.value}
            )
    logger.debug(f"Jets via channels phi={phi_jet.channel}, f={f_jet.channel}, h={h_jet.channel}")
    return phi_jet, f_jet, h_jet


def _fiber_ricci_scalar(config: SolitonConfig, phi: Jet, f: Jet) -> float:
    eps = config.sig.array
    return (
        config.lambda_F
        - f.value * phi.value ** 2 * float(np.sum(eps * np.diag(f.hessian)))
        + (config.n - 2) * f.value * phi.value * float(np.sum(eps * phi.gradient * f.gradient))
        - (config.m - 1) * phi.value ** 2 * float(np.sum(eps * f.gradient ** 2))
    )


def _fiber_hessian_scalar(config: SolitonConfig, phi: Jet, f: Jet, h: Jet) -> float:
    eps = config.sig.array
    return f.value * phi.value ** 2 * float(np.sum(eps * f.gradient * h.gradient))


def warped_ricci_blocks(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> Tuple[np.ndarray, float]:
    """
    Base block and fiber coefficient of Ric on the warped product.

    Returns (Ric_bar - (m/f) Hess_bar(f), gamma) where Ric(V, W) = gamma * g_F(V, W)
    on fiber vectors. The mixed block vanishes identically.
    """
    phi, f, _ = _jets(data, point, scheme)
    sig = data.config.sig
    base = ricci_from_jet(sig, phi) - (data.config.m / f.value) * hessian_from_jets(sig, phi, f)
    return base, _fiber_ricci_scalar(data.config, phi, f)


def fiber_hessian_scalar(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> float:
    """Coefficient of g_F in Hess(h) restricted to the fiber: f * phi^2 * sum_k eps_k f_k h_k."""
    phi, f, h = _jets(data, point, scheme)
    return _fiber_hessian_scalar(data.config, phi, f, h)


def pde_residuals(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> PDEResiduals:
    """
    Residuals of the three scalar equations equivalent to the soliton equation.

    offdiag[i, j] (i != j), zero on the diagonal:
        (n-2) f phi_ij + f phi h_ij - m phi f_ij - m phi_i f_j - m phi_j f_i + f phi_i h_j + f phi_j h_i
    diag[i]:
        phi [(n-2) f phi_ii + f phi h_ii - m phi f_ii - 2m phi_i f_i + 2 f phi_i h_i]
        + eps_i sum_k eps_k [f phi phi_kk - (n-1) f phi_k^2 + m phi phi_k f_k - f phi phi_k h_k]
        - eps_i rho f
    fiber:
        sum_k eps_k [-f phi^2 f_kk + (n-2) f phi f_k phi_k - (m-1) phi^2 f_k^2 + f phi^2 f_k h_k]
        - (rho f^2 - lambda_F)
    For m = 1 the fiber residual is evaluated in its line-fiber form, see fiber_residual_m1.
    """
    phi, f, h = _jets(data, point, scheme)
    cfg = data.config
    n, m, eps = cfg.n, cfg.m, cfg.sig.array
    P, F = phi.value, f.value
    dP, dF, dH = phi.gradient, f.gradient, h.gradient

    cross = np.outer(dP, F * dH - m * dF)
    base = (
        (n - 2) * F * phi.hessian
        + F * P * h.hessian
        - m * P * f.hessian
        + (cross + cross.T)
    )
    # exactly symmetric, also for supplied Hessians with roundoff asymmetry
    base = 0.5 * (base + base.T)
    offdiag = base - np.diag(np.diag(base))

    trace_part = float(np.sum(eps * (
        F * P * np.diag(phi.hessian)
        - (n - 1) * F * dP ** 2
        + m * P * dP * dF
        - F * P * dP * dH
    )))
    diag = P * np.diag(base) + eps * trace_part - eps * cfg.rho * F

    if m == 1:
        fiber = _line_fiber_residual(cfg, phi, f, h)
    else:
        fiber = float(np.sum(eps * (
            - F * P ** 2 * np.diag(f.hessian)
            + (n - 2) * F * P * dF * dP
            - (m - 1) * P ** 2 * dF ** 2
            + F * P ** 2 * dF * dH
        ))) - (cfg.rho * F ** 2 - cfg.lambda_F)

    return PDEResiduals(offdiag, diag, fiber)


def fiber_residual_m1(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> float:
    """
    Fiber residual for a one-dimensional fiber written through the base Laplacian:
    f * (g_bar(grad f, grad h) - Laplacian(f)) - rho * f^2.
    """
    if data.config.m != 1:
        raise UnsupportedModeError(f"Line-fiber residual needs m = 1, got m = {data.config.m}")
    phi, f, h = _jets(data, point, scheme)
    return _line_fiber_residual(data.config, phi, f, h)


def _line_fiber_residual(config: SolitonConfig, phi: Jet, f: Jet, h: Jet) -> float:
    laplacian, _ = laplacian_and_gradsq_from_jets(config.sig, phi, f)
    return _fiber_hessian_scalar(config, phi, f, h) - f.value * laplacian - config.rho * f.value ** 2


def residual_scale(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> float:
    """Local normalization max(1, |rho| * |g_tilde|_inf) with g_F taken as the identity."""
    phi = scalar_jet(data.phi, point, scheme).value
    f = scalar_jet(data.f, point, scheme).value
    metric_sup = max(1.0 / phi ** 2, f ** 2)
    return max(1.0, abs(data.config.rho) * metric_sup)


def block_metric(data: WarpedData) -> MetricField:
    """Concrete (n+m)-dimensional metric diag(eps)/phi^2 + f^2 * I_m on base x flat torus."""
    n, m = data.config.n, data.config.m
    g_base = data.config.sig.metric()

    def components(point):
        base_point = point[:n]
        phi = data.phi(base_point)
        f = data.f(base_point)
        if phi <= 0 or f <= 0:
            raise DomainError(
                f"phi and f must be positive, got phi={phi:.6g}, f={f:.6g} at x={base_point.tolist()}"
            )
        metric = np.zeros((n + m, n + m))
        metric[:n, :n] = g_base / (phi * phi)
        metric[n:, n:] = f * f * np.eye(m)
        return metric

    def inside(point):
        base_point = point[:n]
        if not (data.phi.contains(base_point) and data.f.contains(base_point)):
            return False
        return data.phi(base_point) > 0 and data.f(base_point) > 0

    return MetricField(dim=n + m, func=components, domain=inside, name="g_tilde")


def lifted_potential(data: WarpedData) -> ScalarField:
    """The potential h as a function on base x fiber, independent of fiber coordinates."""
    n, m = data.config.n, data.config.m
    return ScalarField(
        dim=n + m,
        func=lambda point: data.h(point[:n]),
        domain=lambda point: data.h.contains(point[:n]),
        name="h_lift"
    )


def _lift(data: WarpedData, point) -> np.ndarray:
    base_point = np.asarray(point, dtype=float).reshape(-1)
    if base_point.size == data.config.n:
        return np.concatenate([base_point, np.zeros(data.config.m)])
    if base_point.size == data.config.n + data.config.m:
        return base_point
    raise DimensionError(
        f"Point has {base_point.size} coordinates, expected {data.config.n} or {data.config.n + data.config.m}"
    )


def _require_concrete(data: WarpedData, operation: str):
    if data.fiber != "flat_torus":
        raise UnsupportedModeError(
            f"{operation} needs a concrete flat torus fiber, got '{data.fiber}'",
            details={'fiber': data.fiber}
        )


def assemble_block_residual(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """
    Full (n+m) x (n+m) residual Ric + Hess(h) - rho * g_tilde assembled from pde_residuals.

    Base block: offdiag / (f phi) and diag / (f phi^2); fiber block: fiber * I_m; mixed block: 0.
    """
    base_point = np.asarray(point, dtype=float).reshape(-1)[:data.config.n]
    n, m = data.config.n, data.config.m
    residuals = pde_residuals(data, base_point, scheme)
    phi = data.phi(base_point)
    f = data.f(base_point)

    block = np.zeros((n + m, n + m))
    block[:n, :n] = residuals.offdiag / (f * phi) + np.diag(residuals.diag / (f * phi ** 2))
    block[n:, n:] = residuals.fiber * np.eye(m)
    return block


def oracle_block_residual(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """Finite-difference residual of the soliton equation on the concrete block metric."""
    _require_concrete(data, "FD oracle")
    return soliton_residual_field(
        block_metric(data), lifted_potential(data), data.config.rho, _lift(data, point), scheme
    )


def mixed_hessian_block(data: WarpedData, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """FD Hess(h)(X_i, Y_j) on the block metric; vanishes when h depends on base coordinates only."""
    _require_concrete(data, "Mixed Hessian block")
    n = data.config.n
    full = hessian(lifted_potential(data), block_metric(data), _lift(data, point), scheme)
    return full[:n, n:]


def einstein_fiber_check(
    data: WarpedData,
    grid: Iterable,
    scheme: Optional[FDScheme] = None,
    tolerance: Optional[float] = None
) -> CheckResult:
    """
    Check that the fiber block of the FD residual is a scalar multiple of g_F at every grid point.

    Reports the maximum deviation from proportionality and the largest gap
    between the fitted scalar and the closed-form fiber residual.
    """
    _require_concrete(data, "Einstein fiber check")
    tolerance = TOLERANCE_CONFIG["oracle"] if tolerance is None else tolerance
    n, m = data.config.n, data.config.m

    deviation, scalar_gap, count = 0.0, 0.0, 0
    for point in grid:
        residual = oracle_block_residual(data, point, scheme)
        fiber_block = residual[n:, n:]
        scalar = float(np.trace(fiber_block)) / m
        deviation = max(deviation, float(np.max(np.abs(fiber_block - scalar * np.eye(m)))))
        base_point = np.asarray(point, dtype=float).reshape(-1)[:n]
        scalar_gap = max(scalar_gap, abs(scalar - pde_residuals(data, base_point, scheme).fiber))
        count += 1

    success = deviation <= tolerance
    logger.info(f"Einstein fiber check: deviation {deviation:.3e} over {count} points "
                f"({'pass' if success else 'fail'})")
    return CheckResult(
        success=success,
        message=f"Fiber block proportionality deviation {deviation:.3e} (tolerance {tolerance:.1e})",
        max_deviation=deviation,
        tolerance=tolerance,
        points_checked=count,
        details={'scalar_gap': scalar_gap}
    )


def base_hessian_hypothesis(
    data: WarpedData,
    points: Iterable,
    scheme: Optional[FDScheme] = None,
    tolerance: Optional[float] = None
) -> CheckResult:
    """
    Sampled check that Hess_bar(f) does not vanish identically.

    'satisfied' when some sampled entry exceeds the tolerance; 'inconclusive'
    otherwise, since vanishing on the sample does not prove vanishing everywhere.
    """
    tolerance = TOLERANCE_CONFIG["proportionality"] if tolerance is None else tolerance
    largest, witness, count = 0.0, None, 0
    for point in points:
        phi, f, _ = _jets(data, point, scheme)
        hess_f = hessian_from_jets(data.config.sig, phi, f)
        size = float(np.max(np.abs(hess_f)))
        if size > largest:
            largest, witness = size, np.asarray(point, dtype=float).tolist()
        count += 1

    status = "satisfied" if largest > tolerance else "inconclusive"
    return CheckResult(
        success=status == "satisfied",
        message=f"Base Hessian hypothesis {status} (max |Hess f| = {largest:.3e})",
        data=status,
        max_deviation=largest,
        tolerance=tolerance,
        points_checked=count,
        details={'witness': witness}
    )


def default_grid(
    config: SolitonConfig,
    bounds: Tuple[float, float] = (-1.0, 1.0),
    seed: Optional[int] = None,
    center: Optional[Sequence[float]] = None
) -> np.ndarray:
    """
    Sample points in the cube center + [lo, hi]^n.

    7^n lattice for n <= 3; scrambled Halton points for larger n.
    """
    lo, hi = bounds
    if not hi > lo:
        raise ConfigurationError(f"Grid bounds must satisfy lo < hi, got {bounds}")
    n = config.n
    offset = np.zeros(n) if center is None else np.asarray(center, dtype=float)

    if n <= GRID_CONFIG["lattice_max_dim"]:
        axis = np.linspace(lo, hi, GRID_CONFIG["lattice_points_per_axis"])
        mesh = np.meshgrid(*([axis] * n), indexing='ij')
        points = np.stack([component.ravel() for component in mesh], axis=1)
    else:
        sampler = qmc.Halton(d=n, scramble=True, seed=GRID_CONFIG["seed"] if seed is None else seed)
        unit = sampler.random(GRID_CONFIG["quasi_random_points"])
        points = qmc.scale(unit, [lo] * n, [hi] * n)
    return points + offset


def sweep_pde_residuals(
    data: WarpedData,
    points: Iterable,
    scheme: Optional[FDScheme] = None,
    tolerance: Optional[float] = None
) -> CheckResult:
    """Maximum raw and normalized PDE residuals over a set of base points."""
    tolerance = TOLERANCE_CONFIG["pde_analytic"] if tolerance is None else tolerance
    raw, normalized, count = 0.0, 0.0, 0
    components = {'offdiag': 0.0, 'diag': 0.0, 'fiber': 0.0}
    worst_point = None
    for point in points:
        residuals = pde_residuals(data, point, scheme)
        size = residuals.max_abs()
        for key, value in residuals.components().items():
            components[key] = max(components[key], value)
        if size >= raw:
            raw, worst_point = size, np.asarray(point, dtype=float).tolist()
        normalized = max(normalized, size / residual_scale(data, point, scheme))
        count += 1

    success = normalized <= tolerance
    return CheckResult(
        success=success,
        message=f"Max PDE residual {raw:.3e} (normalized {normalized:.3e}, tolerance {tolerance:.1e})",
        max_deviation=normalized,
        tolerance=tolerance,
        points_checked=count,
        details={'raw': raw, 'normalized': normalized, 'components': components, 'worst_point': worst_point}
    )


def oracle_convergence(
    data: WarpedData,
    points: Iterable,
    steps: Optional[Sequence[float]] = None,
    order: Optional[int] = None,
    tolerance: Optional[float] = None
) -> CheckResult:
    """
    Convergence study of the FD oracle against the assembled closed-form residual.

    For every step the FD residual of the soliton equation is evaluated on the
    block metric; the gap to assemble_block_residual shrinks like step^order, so
    the fitted slope of log(gap) against log(step) estimates the order. When
    every gap sits below the roundoff floor the order is reported as "floor".
    The finest two steps give a Richardson-extrapolated residual, which tends
    to the true residual of the data (zero for an exact soliton).
    """
    _require_concrete(data, "Oracle convergence study")
    steps = tuple(sorted(FD_CONFIG["oracle_steps"] if steps is None else steps, reverse=True))
    order = FD_CONFIG["order"] if order is None else order
    tolerance = TOLERANCE_CONFIG["oracle"] if tolerance is None else tolerance
    if len(steps) < 2:
        raise ConfigurationError("Oracle convergence study needs at least two steps", details={'steps': steps})

    points = [np.asarray(point, dtype=float).reshape(-1) for point in points]
    if not points:
        raise ConfigurationError("Oracle convergence study needs at least one base point")
    assembled = [assemble_block_residual(data, point) for point in points]

    table, residuals = [], []
    for step in steps:
        scheme = FDScheme(step=step, order=order)
        fd = [oracle_block_residual(data, point, scheme) for point in points]
        residuals.append(fd)
        table.append({
            'step': step,
            'max_residual': float(max(np.max(np.abs(block)) for block in fd)),
            'max_gap': float(max(np.max(np.abs(block - exact)) for block, exact in zip(fd, assembled)))
        })
        logger.debug(f"Oracle step {step:.1e}: residual {table[-1]['max_residual']:.3e}, "
                     f"gap {table[-1]['max_gap']:.3e}")

    gaps = np.array([row['max_gap'] for row in table])
    if np.all(gaps <= FD_CONFIG["floor"]):
        fitted_order, constant, order_status = None, None, "floor"
    else:
        slope, intercept = np.polyfit(np.log(steps), np.log(np.maximum(gaps, np.finfo(float).tiny)), 1)
        fitted_order, constant, order_status = float(slope), float(np.exp(intercept)), "fitted"

    # Richardson with the nominal order on the finest pair of steps
    ratio = steps[-2] / steps[-1]
    extrapolated = max(
        float(np.max(np.abs(fine + (fine - coarse) / (ratio ** order - 1))))
        for coarse, fine in zip(residuals[-2], residuals[-1])
    )

    finest = table[-1]['max_residual']
    success = finest <= tolerance
    logger.info(f"Oracle convergence: finest residual {finest:.3e}, order "
                f"{order_status if fitted_order is None else f'{fitted_order:.2f}'}, "
                f"extrapolated {extrapolated:.3e} ({'pass' if success else 'fail'})")
    return CheckResult(
        success=success,
        message=f"FD residual {finest:.3e} at step {steps[-1]:.1e} (tolerance {tolerance:.1e})",
        data=table,
        max_deviation=finest,
        tolerance=tolerance,
        points_checked=len(points),
        details={
            'order': fitted_order,
            'constant': constant,
            'order_status': order_status,
            'nominal_order': order,
            'extrapolated_residual': extrapolated,
            'steps': list(steps)
        }
    )
