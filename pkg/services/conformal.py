# -*- coding: utf-8 -*-
"""
Closed-form geometry of the conformal metric g_bar = g / phi^2 on a
pseudo-Euclidean space (R^n, g), g_ij = delta_ij * eps_i.

Derivatives of phi and of the test function come from the analytic channel
of the ScalarField when present, else from finite differences; the channel
is logged for every evaluation.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .exceptions import DimensionError, DomainError
from .logging_config import get_logger
from .tensor_core import FDScheme, Jet, MetricField, ScalarField, scalar_jet

logger = get_logger(__name__)


@dataclass(frozen=True)
class Signature:
    """Diagonal signature (eps_1, ..., eps_n) with entries +1 or -1 and n >= 3."""
    eps: Tuple[int, ...]

    def __post_init__(self):
        eps = tuple(int(e) for e in self.eps)
        if len(eps) < 3:
            raise DimensionError(
                f"Base dimension must be at least 3, got {len(eps)}",
                details={'signature': list(eps)}
            )
        if any(e not in (1, -1) for e in self.eps):
            raise DimensionError(
                f"Signature entries must be +1 or -1, got {list(self.eps)}",
                details={'signature': list(self.eps)}
            )
        object.__setattr__(self, 'eps', eps)

    @classmethod
    def riemannian(cls, n: int) -> "Signature":
        return cls((1,) * n)

    @classmethod
    def lorentzian(cls, n: int) -> "Signature":
        """Timelike first coordinate."""
        return cls((-1,) + (1,) * (n - 1))

    @property
    def n(self) -> int:
        return len(self.eps)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.eps, dtype=float)

    def metric(self) -> np.ndarray:
        return np.diag(self.array)

    def flipped(self) -> "Signature":
        return Signature(tuple(-e for e in self.eps))

    def to_list(self):
        return list(self.eps)


@dataclass(frozen=True)
class ConformalFactor:
    """Positive conformal factor phi; g_bar = g / phi^2 is defined where phi > 0."""
    phi: ScalarField

    @property
    def channel(self) -> str:
        return "analytic" if self.phi.has_analytic_derivatives else "fd"

    def jet(self, point, scheme: Optional[FDScheme] = None) -> Jet:
        jet = scalar_jet(self.phi, point, scheme)
        if jet.value <= 0:
            raise DomainError(
                f"Conformal factor {self.phi.name} must be positive, got {jet.value:.6g} "
                f"at x={np.asarray(point, dtype=float).tolist()}",
                details={'value': jet.value}
            )
        return jet


FactorLike = Union[ConformalFactor, ScalarField]


def _factor(sig: Signature, phi: FactorLike) -> ConformalFactor:
    factor = phi if isinstance(phi, ConformalFactor) else ConformalFactor(phi)
    if factor.phi.dim != sig.n:
        raise DimensionError(
            f"Conformal factor is defined on R^{factor.phi.dim}, signature has n = {sig.n}"
        )
    return factor


def _phi_jet(sig: Signature, phi: FactorLike, point, scheme: Optional[FDScheme]) -> Jet:
    jet = _factor(sig, phi).jet(point, scheme)
    logger.debug(f"phi derivatives via {jet.channel} channel")
    return jet


def _u_jet(sig: Signature, u: ScalarField, point, scheme: Optional[FDScheme]) -> Jet:
    if u.dim != sig.n:
        raise DimensionError(f"Test function is defined on R^{u.dim}, signature has n = {sig.n}")
    jet = scalar_jet(u, point, scheme)
    logger.debug(f"{u.name} derivatives via {jet.channel} channel")
    return jet


def conformal_metric(sig: Signature, phi: FactorLike) -> MetricField:
    """MetricField for g_bar = diag(eps) / phi^2, defined where phi > 0."""
    factor = _factor(sig, phi)
    g = sig.metric()

    def components(point):
        value = factor.phi(point)
        if value <= 0:
            raise DomainError(f"Conformal factor must be positive, got {value:.6g}")
        return g / (value * value)

    def inside(point):
        if not factor.phi.contains(point):
            return False
        return factor.phi(point) > 0

    return MetricField(dim=sig.n, func=components, domain=inside, name="g_bar")


def conformal_christoffel(
    sig: Signature,
    phi: FactorLike,
    point,
    scheme: Optional[FDScheme] = None
) -> np.ndarray:
    """
    Christoffel symbols of g_bar, indexed [k, i, j]:

        Gamma^k_ij = -delta_ki phi_j/phi - delta_kj phi_i/phi + eps_i eps_k delta_ij phi_k/phi
    """
    jet = _phi_jet(sig, phi, point, scheme)
    eps = sig.array
    d = jet.gradient / jet.value
    eye = np.eye(sig.n)
    return (
        - np.einsum('ki,j->kij', eye, d)
        - np.einsum('kj,i->kij', eye, d)
        + np.einsum('k,ij->kij', eps * d, np.diag(eps))
    )


def ricci_from_jet(sig: Signature, phi_jet: Jet) -> np.ndarray:
    n, eps, value = sig.n, sig.array, phi_jet.value
    trace_hess = float(np.sum(eps * np.diag(phi_jet.hessian)))
    grad_sq = float(np.sum(eps * phi_jet.gradient ** 2))

    ric = (n - 2) * phi_jet.hessian / value
    return ric + np.diag(eps * trace_hess / value - (n - 1) * eps * grad_sq / value ** 2)


def hessian_from_jets(sig: Signature, phi_jet: Jet, u_jet: Jet) -> np.ndarray:
    eps = sig.array
    d = phi_jet.gradient / phi_jet.value
    du = u_jet.gradient
    return (
        u_jet.hessian
        + np.outer(du, d)
        + np.outer(d, du)
        - np.diag(eps * float(np.sum(eps * d * du)))
    )


def laplacian_and_gradsq_from_jets(sig: Signature, phi_jet: Jet, u_jet: Jet) -> Tuple[float, float]:
    n, eps, value = sig.n, sig.array, phi_jet.value
    laplacian = (
        value ** 2 * float(np.sum(eps * np.diag(u_jet.hessian)))
        - (n - 2) * value * float(np.sum(eps * phi_jet.gradient * u_jet.gradient))
    )
    grad_sq = value ** 2 * float(np.sum(eps * u_jet.gradient ** 2))
    return laplacian, grad_sq


def conformal_ricci(
    sig: Signature,
    phi: FactorLike,
    point,
    scheme: Optional[FDScheme] = None
) -> np.ndarray:
    """
    Ricci tensor of g_bar in the coordinate frame:

        Ric_ij = (n-2) phi_ij / phi                                      (i != j)
        Ric_ii = [(n-2) phi_ii + eps_i sum_k eps_k phi_kk] / phi
                 - (n-1) eps_i sum_k eps_k phi_k^2 / phi^2
    """
    return ricci_from_jet(sig, _phi_jet(sig, phi, point, scheme))


def conformal_hessian(
    sig: Signature,
    phi: FactorLike,
    u: ScalarField,
    point,
    scheme: Optional[FDScheme] = None
) -> np.ndarray:
    """Hessian of u with respect to g_bar."""
    return hessian_from_jets(sig, _phi_jet(sig, phi, point, scheme), _u_jet(sig, u, point, scheme))


def conformal_laplacian_and_gradsq(
    sig: Signature,
    phi: FactorLike,
    u: ScalarField,
    point,
    scheme: Optional[FDScheme] = None
) -> Tuple[float, float]:
    """Return (Laplacian of u, g_bar(grad u, grad u))."""
    return laplacian_and_gradsq_from_jets(
        sig, _phi_jet(sig, phi, point, scheme), _u_jet(sig, u, point, scheme)
    )
