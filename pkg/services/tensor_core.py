# -*- coding: utf-8 -*-
"""
Coordinate tensor calculus on open subsets of R^d.

Derivatives of user-supplied fields are taken by central finite differences so
that black-box fields are accepted. Everything here is an independent oracle
for the closed-form formulas in the conformal and warped modules: Christoffel
symbols, Ricci tensor, Hessians and the soliton residual Ric + Hess(h) - rho*g.

Index conventions:
    dg[a, b, c]       = d_a g_bc
    ddg[a, b, c, d]   = d_a d_b g_cd
    gamma[k, i, j]    = Gamma^k_ij
"""

from dataclasses import dataclass
from typing import Callable, Optional, NamedTuple, Union

import numpy as np

from config import FD_CONFIG
from .exceptions import (
    ConfigurationError, DimensionError, DomainError, NonFiniteError, SingularMetricError
)
from .logging_config import get_logger

logger = get_logger(__name__)

# Central first-derivative weights as (offset, weight) pairs acting on f(x+o*h) - f(x-o*h)
_FIRST_PAIRS = {
    2: ((1, 0.5),),
    4: ((1, 8.0 / 12.0), (2, -1.0 / 12.0)),
}

# Central second-derivative weights: center weight, then pairs acting on f(x+o*h) + f(x-o*h)
_SECOND_WEIGHTS = {
    2: (-2.0, ((1, 1.0),)),
    4: (-30.0 / 12.0, ((1, 16.0 / 12.0), (2, -1.0 / 12.0))),
}


@dataclass(frozen=True)
class FDScheme:
    """Central finite-difference scheme: per-axis step and stencil order (2 or 4)."""
    step: float = FD_CONFIG["step"]
    order: int = FD_CONFIG["order"]

    def __post_init__(self):
        if not np.isfinite(self.step) or self.step <= 0:
            raise ConfigurationError(
                f"FD step must be positive, got {self.step}",
                details={'step': self.step}
            )
        if self.order not in FD_CONFIG["allowed_orders"]:
            raise ConfigurationError(
                f"FD order must be one of {FD_CONFIG['allowed_orders']}, got {self.order}",
                details={'order': self.order}
            )

    @property
    def reach(self) -> float:
        """Largest displacement of a stencil point from its center."""
        return (self.order // 2) * self.step


@dataclass(frozen=True)
class ScalarField:
    """
    Smooth real function on an open subset of R^dim.

    Analytic gradient/Hessian callables are optional; when both are present
    the closed-form modules use them instead of finite differences.
    """
    dim: int
    func: Callable[[np.ndarray], float]
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    hessian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    domain: Optional[Callable[[np.ndarray], bool]] = None
    name: str = "u"

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"Field dimension must be positive, got {self.dim}")

    def __call__(self, point: np.ndarray) -> float:
        return float(self.func(point))

    @property
    def has_analytic_derivatives(self) -> bool:
        return self.gradient is not None and self.hessian is not None

    def contains(self, point: np.ndarray) -> bool:
        return True if self.domain is None else bool(self.domain(point))


@dataclass(frozen=True)
class MetricField:
    """
    Symmetric (dim x dim) metric components as a function of the point.

    `regularity` is an optional lower bound on the distance from any queried
    point to the locus where the metric degenerates.
    """
    dim: int
    func: Callable[[np.ndarray], np.ndarray]
    regularity: Optional[float] = None
    domain: Optional[Callable[[np.ndarray], bool]] = None
    name: str = "g"

    def __post_init__(self):
        if not 1 <= self.dim <= FD_CONFIG["max_dim"]:
            raise DimensionError(
                f"Metric dimension must lie in [1, {FD_CONFIG['max_dim']}], got {self.dim}"
            )
        if self.regularity is not None and self.regularity < 0:
            raise ConfigurationError("Regularity hint must be nonnegative")

    def __call__(self, point: np.ndarray) -> np.ndarray:
        matrix = np.asarray(self.func(point), dtype=float)
        if matrix.shape != (self.dim, self.dim):
            raise DimensionError(
                f"Metric {self.name} returned shape {matrix.shape}, expected {(self.dim, self.dim)}"
            )
        scale = max(float(np.max(np.abs(matrix))), np.finfo(float).tiny)
        asymmetry = float(np.max(np.abs(matrix - matrix.T)))
        if asymmetry > 1e-14 * scale:
            raise SingularMetricError(
                f"Metric {self.name} is not symmetric at x={np.asarray(point).tolist()}",
                details={'asymmetry': asymmetry}
            )
        return 0.5 * (matrix + matrix.T)

    def contains(self, point: np.ndarray) -> bool:
        return True if self.domain is None else bool(self.domain(point))


class Jet(NamedTuple):
    """Value, gradient and Hessian of a scalar field at a point, with the channel that produced them."""
    value: float
    gradient: np.ndarray
    hessian: np.ndarray
    channel: str


Field = Union[ScalarField, MetricField]


def _as_point(point, dim: int) -> np.ndarray:
    arr = np.array(point, dtype=float).reshape(-1)
    if arr.shape != (dim,):
        raise DimensionError(f"Point has {arr.size} coordinates, expected {dim}")
    return arr


def _evaluate(field: Field, point: np.ndarray):
    if not field.contains(point):
        raise DomainError(
            f"{field.name} queried outside its domain at x={point.tolist()}",
            details={'point': point.tolist(), 'field': field.name}
        )
    value = field(point)
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(
            f"{field.name} is not finite at x={point.tolist()}",
            details={'point': point.tolist(), 'field': field.name}
        )
    return value


def _shifted(point: np.ndarray, shifts) -> np.ndarray:
    moved = point.copy()
    for axis, delta in shifts:
        moved[axis] += delta
    return moved


def fd_partial(field: Field, point, axis: int, scheme: Optional[FDScheme] = None):
    """
    Central-difference first derivative of a scalar or metric field along one axis.

    Returns a float for scalar fields and a component matrix for metric fields;
    the error is O(step**order).
    """
    scheme = scheme or FDScheme()
    point = _as_point(point, field.dim)
    if not 0 <= axis < field.dim:
        raise DimensionError(f"Axis {axis} out of range for dimension {field.dim}")

    h = scheme.step
    total = 0.0
    for offset, weight in _FIRST_PAIRS[scheme.order]:
        forward = _evaluate(field, _shifted(point, [(axis, offset * h)]))
        backward = _evaluate(field, _shifted(point, [(axis, -offset * h)]))
        total = total + weight * (forward - backward)
    return total / h


def fd_second(field: Field, point, axis_i: int, axis_j: int, scheme: Optional[FDScheme] = None):
    """Central-difference second derivative d_i d_j of a scalar or metric field."""
    scheme = scheme or FDScheme()
    point = _as_point(point, field.dim)
    h = scheme.step

    if axis_i == axis_j:
        center_weight, pairs = _SECOND_WEIGHTS[scheme.order]
        total = center_weight * _evaluate(field, point)
        for offset, weight in pairs:
            forward = _evaluate(field, _shifted(point, [(axis_i, offset * h)]))
            backward = _evaluate(field, _shifted(point, [(axis_i, -offset * h)]))
            total = total + weight * (forward + backward)
        return total / (h * h)

    total = 0.0
    for offset_a, weight_a in _FIRST_PAIRS[scheme.order]:
        for offset_b, weight_b in _FIRST_PAIRS[scheme.order]:
            da, db = offset_a * h, offset_b * h
            corners = (
                _evaluate(field, _shifted(point, [(axis_i, da), (axis_j, db)]))
                - _evaluate(field, _shifted(point, [(axis_i, da), (axis_j, -db)]))
                - _evaluate(field, _shifted(point, [(axis_i, -da), (axis_j, db)]))
                + _evaluate(field, _shifted(point, [(axis_i, -da), (axis_j, -db)]))
            )
            total = total + weight_a * weight_b * corners
    return total / (h * h)


def fd_gradient(field: Field, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """All first partials; shape (dim,) for scalars, (dim, dim, dim) for metrics."""
    return np.array([fd_partial(field, point, axis, scheme) for axis in range(field.dim)])


def fd_hessian(field: Field, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """All second partials, symmetric in the derivative indices by construction."""
    dim = field.dim
    rows = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            rows[i][j] = fd_second(field, point, i, j, scheme)
            rows[j][i] = rows[i][j]
    return np.array(rows, dtype=float)


def scalar_jet(field: ScalarField, point, scheme: Optional[FDScheme] = None) -> Jet:
    """Value, gradient and Hessian of a scalar field, analytic when available."""
    point = _as_point(point, field.dim)
    value = float(_evaluate(field, point))
    if field.has_analytic_derivatives:
        gradient = np.asarray(field.gradient(point), dtype=float).reshape(field.dim)
        hessian = np.asarray(field.hessian(point), dtype=float).reshape(field.dim, field.dim)
        if not (np.all(np.isfinite(gradient)) and np.all(np.isfinite(hessian))):
            raise NonFiniteError(
                f"Analytic derivatives of {field.name} are not finite at x={point.tolist()}",
                details={'point': point.tolist(), 'field': field.name}
            )
        return Jet(value, gradient, hessian, "analytic")
    return Jet(value, fd_gradient(field, point, scheme), fd_hessian(field, point, scheme), "fd")


def _metric_matrix(metric: MetricField, point: np.ndarray, scheme: FDScheme) -> np.ndarray:
    if metric.regularity is not None and scheme.reach >= metric.regularity:
        raise DomainError(
            f"FD stencil reach {scheme.reach} is not below the regularity hint {metric.regularity}",
            details={'reach': scheme.reach, 'regularity': metric.regularity}
        )
    matrix = _evaluate(metric, point)
    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > FD_CONFIG["condition_limit"]:
        raise SingularMetricError(
            f"Metric {metric.name} is singular or ill-conditioned at x={point.tolist()}",
            details={'condition_number': float(condition), 'point': point.tolist()}
        )
    return matrix


def metric_derivatives(metric: MetricField, point, scheme: Optional[FDScheme] = None):
    """Return (g, dg, ddg) at the point."""
    scheme = scheme or FDScheme()
    point = _as_point(point, metric.dim)
    g = _metric_matrix(metric, point, scheme)
    return g, fd_gradient(metric, point, scheme), fd_hessian(metric, point, scheme)


def _lowered_connection(dg: np.ndarray) -> np.ndarray:
    # T[a, b, d] = d_a g_bd + d_b g_ad - d_d g_ab
    return dg + np.einsum('bad->abd', dg) - np.einsum('dab->abd', dg)


def _christoffel_from(g_inv: np.ndarray, dg: np.ndarray) -> np.ndarray:
    gamma = 0.5 * np.einsum('kd,abd->kab', g_inv, _lowered_connection(dg))
    return 0.5 * (gamma + np.swapaxes(gamma, 1, 2))


def christoffel(metric: MetricField, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """
    Christoffel symbols Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).

    Returns an array indexed [k, i, j], exactly symmetric in (i, j).
    """
    scheme = scheme or FDScheme()
    point = _as_point(point, metric.dim)
    g = _metric_matrix(metric, point, scheme)
    dg = fd_gradient(metric, point, scheme)
    return _christoffel_from(np.linalg.inv(g), dg)


def _curvature(metric: MetricField, point: np.ndarray, scheme: FDScheme):
    g, dg, ddg = metric_derivatives(metric, point, scheme)
    g_inv = np.linalg.inv(g)
    gamma = _christoffel_from(g_inv, dg)

    # d_e g^{kd} = -g^{ki} (d_e g_ij) g^{jd}
    dg_inv = -np.einsum('ki,eij,jd->ekd', g_inv, dg, g_inv)
    lowered = _lowered_connection(dg)
    d_lowered = ddg + np.einsum('ebad->eabd', ddg) - np.einsum('edab->eabd', ddg)
    dgamma = 0.5 * (
        np.einsum('ekd,abd->ekab', dg_inv, lowered)
        + np.einsum('kd,eabd->ekab', g_inv, d_lowered)
    )

    ric = (
        np.einsum('kkij->ij', dgamma)
        - np.einsum('ikkj->ij', dgamma)
        + np.einsum('kkl,lij->ij', gamma, gamma)
        - np.einsum('kil,lkj->ij', gamma, gamma)
    )
    return g, gamma, ric


def ricci(metric: MetricField, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """Ricci tensor Ric_ij = d_k G^k_ij - d_i G^k_kj + G^k_kl G^l_ij - G^k_il G^l_kj."""
    scheme = scheme or FDScheme()
    point = _as_point(point, metric.dim)
    return _curvature(metric, point, scheme)[2]


def _hessian_with(h: ScalarField, gamma: np.ndarray, point: np.ndarray, scheme: FDScheme) -> np.ndarray:
    gradient = fd_gradient(h, point, scheme)
    return fd_hessian(h, point, scheme) - np.einsum('kij,k->ij', gamma, gradient)


def hessian(h: ScalarField, metric: MetricField, point, scheme: Optional[FDScheme] = None) -> np.ndarray:
    """Covariant Hessian Hess(h)_ij = h_,ij - Gamma^k_ij h_,k (finite differences throughout)."""
    scheme = scheme or FDScheme()
    if h.dim != metric.dim:
        raise DimensionError(f"Scalar field dimension {h.dim} does not match metric dimension {metric.dim}")
    point = _as_point(point, metric.dim)
    gamma = christoffel(metric, point, scheme)
    return _hessian_with(h, gamma, point, scheme)


def soliton_residual_field(
    metric: MetricField,
    h: ScalarField,
    rho: float,
    point,
    scheme: Optional[FDScheme] = None
) -> np.ndarray:
    """Ric + Hess(h) - rho*g at the point; zero iff the soliton equation holds there."""
    scheme = scheme or FDScheme()
    if h.dim != metric.dim:
        raise DimensionError(f"Scalar field dimension {h.dim} does not match metric dimension {metric.dim}")
    point = _as_point(point, metric.dim)
    g, gamma, ric = _curvature(metric, point, scheme)
    residual = ric + _hessian_with(h, gamma, point, scheme) - rho * g
    logger.debug(f"Soliton residual at {point.tolist()}: max |R| = {np.max(np.abs(residual)):.3e}")
    return residual
