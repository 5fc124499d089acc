# -*- coding: utf-8 -*-
"""
Translation-invariant reduction of the warped soliton equations.

All profiles depend on the base point only through xi = sum_i alpha_i x_i.
The PDE system then collapses to three ODEs when sum_i eps_i alpha_i^2 = +-1
(unit direction) and to a single ODE, with rho = lambda_F = 0 forced, when
the direction is null. Under the proportional ansatz phi'/phi = k f'/f the
steady system reduces further to the planar phase system

    x' = x y
    y' = [m + (n-2) k^2] x^2 - 2 k x y

with x = f'/f and y = h' + [(n-2)k - m] x.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from config import TOLERANCE_CONFIG
from .base import CheckResult
from .conformal import Signature
from .exceptions import AnsatzError, DimensionError, DomainError, NonFiniteError, NullDirectionError
from .logging_config import get_logger
from .tensor_core import ScalarField
from .warped import SolitonConfig, WarpedData, pde_residuals

logger = get_logger(__name__)

CAUSAL_TYPES = ("unit", "null")

# |f'/f| below this is treated as a critical point when estimating k
_CRITICAL_RATIO = 1e-10


@dataclass(frozen=True)
class Direction:
    """
    Invariance direction alpha with its causal type.

    Non-null directions are normalized so that sum_i eps_i alpha_i^2 = eps_i0 = +-1;
    `scale` is the factor alpha was divided by, so xi rescales by the same factor.
    """
    alpha: Tuple[float, ...]
    sig: Signature
    causal_type: str
    norm_sq: float
    eps_i0: int
    scale: float = 1.0

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.alpha, dtype=float)

    @property
    def is_null(self) -> bool:
        return self.causal_type == "null"

    @property
    def weight(self) -> float:
        """sum_i eps_i alpha_i^2 of the stored (normalized) alpha."""
        return float(np.sum(self.sig.array * self.vector ** 2))

    def xi(self, point) -> float:
        return float(np.dot(self.vector, np.asarray(point, dtype=float).reshape(-1)))

    def to_dict(self) -> Dict:
        return {
            'alpha': list(self.alpha),
            'causal_type': self.causal_type,
            'norm_sq': self.norm_sq,
            'eps_i0': self.eps_i0,
            'scale': self.scale
        }


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi) of xi; infinite ends allowed."""
    lo: float = -math.inf
    hi: float = math.inf

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"Empty interval ({self.lo}, {self.hi})")

    def contains(self, xi: float) -> bool:
        return self.lo < xi < self.hi

    def interior_samples(self, count: int, fallback: Tuple[float, float] = (-2.0, 2.0),
                         margin: float = 0.05) -> np.ndarray:
        """Evenly spaced points strictly inside the interval (clipped to `fallback` where unbounded)."""
        lo = self.lo if math.isfinite(self.lo) else fallback[0]
        hi = self.hi if math.isfinite(self.hi) else fallback[1]
        lo, hi = max(lo, fallback[0]), min(hi, fallback[1])
        if not lo < hi:
            raise DomainError(f"Interval ({self.lo}, {self.hi}) does not meet the sampling window {fallback}")
        pad = margin * (hi - lo)
        return np.linspace(lo + pad, hi - pad, count)

    def to_list(self):
        return [self.lo, self.hi]


@dataclass(frozen=True)
class ScalarProfile:
    """A function of xi with its first and second derivatives."""
    value: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Callable[[float], float]
    name: str = "P"
    kind: str = "analytic"

    def __call__(self, xi: float) -> float:
        return float(self.value(xi))

    def derivatives(self, xi: float) -> Tuple[float, float, float]:
        values = (float(self.value(xi)), float(self.d1(xi)), float(self.d2(xi)))
        if not all(math.isfinite(v) for v in values):
            raise NonFiniteError(
                f"Profile {self.name} or its derivatives are not finite at xi={xi}",
                details={'xi': xi, 'profile': self.name}
            )
        return values


@dataclass(frozen=True)
class ProfileTriple:
    """The profiles (phi, f, h) on an open xi-interval."""
    phi: ScalarProfile
    f: ScalarProfile
    h: ScalarProfile
    domain: Interval = Interval()
    extras: Dict[str, Callable[[float], float]] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()

    @property
    def kind(self) -> str:
        kinds = {self.phi.kind, self.f.kind, self.h.kind}
        return "analytic" if kinds == {"analytic"} else "numeric"

    def jets(self, xi: float):
        """(phi, phi', phi''), (f, f', f''), (h, h', h'') at xi."""
        if not self.domain.contains(xi):
            raise DomainError(
                f"xi={xi} lies outside the profile domain ({self.domain.lo}, {self.domain.hi})",
                details={'xi': xi, 'domain': self.domain.to_list()}
            )
        phi, f, h = self.phi.derivatives(xi), self.f.derivatives(xi), self.h.derivatives(xi)
        if phi[0] <= 0 or f[0] <= 0:
            raise DomainError(
                f"phi and f must be positive, got phi={phi[0]:.6g}, f={f[0]:.6g} at xi={xi}",
                details={'xi': xi}
            )
        return phi, f, h

    def with_profiles(self, **changes) -> "ProfileTriple":
        values = {'phi': self.phi, 'f': self.f, 'h': self.h, 'domain': self.domain,
                  'extras': self.extras, 'notes': self.notes}
        values.update(changes)
        return ProfileTriple(**values)


class PhaseState(NamedTuple):
    """Point of the phase plane; z = y / x when x != 0."""
    x: float
    y: float
    k: float
    z: Optional[float] = None


@dataclass(frozen=True)
class PhasePath:
    """Phase-plane curve sampled along xi."""
    xi: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    k: float

    def states(self):
        for x, y, z in zip(self.x, self.y, self.z):
            yield PhaseState(float(x), float(y), self.k, None if np.isnan(z) else float(z))


def classify_direction(sig: Signature, alpha: Sequence[float]) -> Direction:
    """Classify alpha as unit or null and normalize non-null directions."""
    vector = np.asarray(alpha, dtype=float).reshape(-1)
    if vector.size != sig.n:
        raise DimensionError(f"Direction has {vector.size} entries, signature has n = {sig.n}")
    if not np.all(np.isfinite(vector)) or not np.any(vector):
        raise DomainError("Direction alpha must be a nonzero finite vector", details={'alpha': vector.tolist()})

    norm_sq = float(np.sum(sig.array * vector ** 2))
    if abs(norm_sq) <= TOLERANCE_CONFIG["null_direction"] * float(np.sum(vector ** 2)):
        return Direction(tuple(vector.tolist()), sig, "null", norm_sq, 0, 1.0)

    scale = math.sqrt(abs(norm_sq))
    eps_i0 = 1 if norm_sq > 0 else -1
    if scale != 1.0:
        logger.debug(f"Normalizing direction {vector.tolist()} by {scale:.6g}")
    return Direction(tuple((vector / scale).tolist()), sig, "unit", norm_sq, eps_i0, scale)


def check_null_forcing(config: SolitonConfig, direction: Direction):
    """A null direction admits only steady solutions over a Ricci-flat fiber."""
    if direction.is_null and (config.rho != 0 or config.lambda_F != 0):
        raise NullDirectionError(
            "A null direction forces rho = 0 and lambda_F = 0 "
            f"(got rho={config.rho}, lambda_F={config.lambda_F})",
            details={'rho': config.rho, 'lambda_F': config.lambda_F, 'alpha': list(direction.alpha)}
        )


def _ode_residuals(config: SolitonConfig, triple: ProfileTriple, xi: float, weight: float) -> np.ndarray:
    (P, dP, ddP), (F, dF, ddF), (_, dH, ddH) = triple.jets(xi)
    n, m = config.n, config.m
    first = (n - 2) * F * ddP + F * P * ddH - m * P * ddF - 2 * m * dP * dF + 2 * F * dP * dH
    second = weight * (F * P * ddP - (n - 1) * F * dP ** 2 + m * P * dP * dF - F * P * dP * dH) \
        - config.rho * F
    third = weight * (
        - F * P ** 2 * ddF + (n - 2) * F * P * dP * dF - (m - 1) * P ** 2 * dF ** 2 + F * P ** 2 * dF * dH
    ) - (config.rho * F ** 2 - config.lambda_F)
    return np.array([first, second, third])


def ode_residuals_unit(config: SolitonConfig, triple: ProfileTriple, xi: float, eps_i0: int) -> np.ndarray:
    """
    Residuals of the three reduced equations for a unit direction:

        (n-2) f phi'' + f phi h'' - m phi f'' - 2m phi' f' + 2 f phi' h'
        eps_i0 [f phi phi'' - (n-1) f phi'^2 + m phi phi' f' - f phi phi' h'] - rho f
        eps_i0 [-f phi^2 f'' + (n-2) f phi phi' f' - (m-1) phi^2 f'^2 + f phi^2 f' h'] - (rho f^2 - lambda_F)
    """
    if eps_i0 not in (1, -1):
        raise DomainError(f"eps_i0 must be +1 or -1 for a unit direction, got {eps_i0}")
    return _ode_residuals(config, triple, xi, float(eps_i0))


def ode_residuals_line_fiber(config: SolitonConfig, triple: ProfileTriple, xi: float, eps_i0: int) -> np.ndarray:
    """
    Unit-direction residuals for m = 1, with the third equation in its
    line-fiber form f * (eps_i0 [-phi^2 f'' + (n-2) phi phi' f' + phi^2 f' h'] - rho f).
    """
    if config.m != 1:
        raise DimensionError(f"Line-fiber residuals need m = 1, got m = {config.m}")
    residuals = ode_residuals_unit(config, triple, xi, eps_i0)
    (P, dP, _), (F, dF, ddF), (_, dH, _) = triple.jets(xi)
    reduced = eps_i0 * (-P ** 2 * ddF + (config.n - 2) * P * dP * dF + P ** 2 * dF * dH) - config.rho * F
    residuals[2] = F * reduced
    return residuals


def ode_residual_null(config: SolitonConfig, triple: ProfileTriple, xi: float) -> float:
    """Residual of the single null-direction equation; rho = lambda_F = 0 is required."""
    if config.rho != 0 or config.lambda_F != 0:
        raise NullDirectionError(
            "A null direction forces rho = 0 and lambda_F = 0 "
            f"(got rho={config.rho}, lambda_F={config.lambda_F})",
            details={'rho': config.rho, 'lambda_F': config.lambda_F}
        )
    return float(_ode_residuals(config, triple, xi, 0.0)[0])


def ode_residuals(config: SolitonConfig, triple: ProfileTriple, xi: float, direction: Direction) -> np.ndarray:
    """Residual vector for either causal type: three entries for unit, one for null.

    A one-dimensional fiber takes the line-fiber form of the third equation.
    """
    if direction.is_null:
        return np.array([ode_residual_null(config, triple, xi)])
    if config.m == 1:
        return ode_residuals_line_fiber(config, triple, xi, direction.eps_i0)
    return ode_residuals_unit(config, triple, xi, direction.eps_i0)


def sweep_ode_residuals(
    config: SolitonConfig,
    triple: ProfileTriple,
    direction: Direction,
    xis: Iterable[float],
    tolerance: Optional[float] = None
) -> CheckResult:
    """Maximum ODE residual per equation over a set of xi samples."""
    check_null_forcing(config, direction)
    if tolerance is None:
        tolerance = TOLERANCE_CONFIG["ode_analytic" if triple.kind == "analytic" else "ode_numeric"]

    per_equation, count, worst_xi, worst = None, 0, None, -1.0
    for xi in xis:
        residual = np.abs(ode_residuals(config, triple, float(xi), direction))
        per_equation = residual if per_equation is None else np.maximum(per_equation, residual)
        if float(np.max(residual)) > worst:
            worst, worst_xi = float(np.max(residual)), float(xi)
        count += 1

    if per_equation is None:
        raise DomainError("No xi samples supplied for the ODE residual sweep")
    deviation = float(np.max(per_equation))
    success = deviation <= tolerance
    logger.info(f"ODE residual sweep ({direction.causal_type}): max {deviation:.3e} over {count} samples")
    return CheckResult(
        success=success,
        message=f"Max ODE residual {deviation:.3e} (tolerance {tolerance:.1e})",
        max_deviation=deviation,
        tolerance=tolerance,
        points_checked=count,
        details={'per_equation': per_equation.tolist(), 'worst_xi': worst_xi, 'channel': triple.kind}
    )


def pullback(profile: ScalarProfile, direction: Direction, domain: Optional[Interval] = None) -> ScalarField:
    """ScalarField x -> P(alpha . x) with gradient P' alpha and Hessian P'' alpha alpha^T."""
    alpha = direction.vector
    outer = np.outer(alpha, alpha)

    def _xi(point):
        return float(np.dot(alpha, point))

    return ScalarField(
        dim=alpha.size,
        func=lambda point: profile(_xi(point)),
        gradient=lambda point: profile.d1(_xi(point)) * alpha,
        hessian=lambda point: profile.d2(_xi(point)) * outer,
        domain=None if domain is None else (lambda point: domain.contains(_xi(point))),
        name=profile.name
    )


def pulled_back_data(config: SolitonConfig, triple: ProfileTriple, direction: Direction,
                     fiber: str = "abstract") -> WarpedData:
    """WarpedData on the base whose fields are the profiles composed with xi."""
    return WarpedData(
        config=config,
        phi=pullback(triple.phi, direction, triple.domain),
        f=pullback(triple.f, direction, triple.domain),
        h=pullback(triple.h, direction, triple.domain),
        fiber=fiber
    )


def pde_ode_consistency(
    config: SolitonConfig,
    triple: ProfileTriple,
    direction: Direction,
    points: Iterable,
    tolerance: Optional[float] = None
) -> CheckResult:
    """
    Compare the PDE residuals of the pulled-back fields with the reduced ODE residuals.

    With E = (E1, E2, E3) evaluated at xi = alpha . x and w = sum_k eps_k alpha_k^2:
        offdiag[i, j] = alpha_i alpha_j E1
        diag[i]       = alpha_i^2 phi E1 + eps_i E2
        fiber         = E3
    """
    tolerance = TOLERANCE_CONFIG["consistency"] if tolerance is None else tolerance
    data = pulled_back_data(config, triple, direction)
    alpha, eps = direction.vector, config.sig.array
    outer = np.outer(alpha, alpha)
    np.fill_diagonal(outer, 0.0)

    deviation, count, largest_pde = 0.0, 0, 0.0
    for point in points:
        xi = direction.xi(point)
        E = _ode_residuals(config, triple, xi, direction.weight)
        phi = triple.phi(xi)
        pde = pde_residuals(data, point)

        expected_diag = alpha ** 2 * phi * E[0] + eps * E[1]
        gaps = (
            np.max(np.abs(pde.offdiag - outer * E[0])),
            np.max(np.abs(pde.diag - expected_diag)),
            abs(pde.fiber - E[2])
        )
        scale = max(1.0, float(np.max(np.abs(E))), pde.max_abs())
        deviation = max(deviation, max(gaps) / scale)
        largest_pde = max(largest_pde, pde.max_abs())
        count += 1

    success = deviation <= tolerance
    return CheckResult(
        success=success,
        message=f"PDE/ODE factorization gap {deviation:.3e} (tolerance {tolerance:.1e})",
        max_deviation=deviation,
        tolerance=tolerance,
        points_checked=count,
        details={'max_pde_residual': largest_pde, 'causal_type': direction.causal_type}
    )


def phase_rhs(state: PhaseState, config: SolitonConfig) -> Tuple[float, float]:
    """(x', y') of the phase system."""
    if state.k <= 0:
        raise AnsatzError(f"Coupling constant k must be positive, got {state.k}")
    x, y, k = state.x, state.y, state.k
    return x * y, (config.m + (config.n - 2) * k ** 2) * x ** 2 - 2 * k * x * y


def estimate_k(triple: ProfileTriple, xis: Iterable[float]) -> float:
    """
    Median of (phi'/phi) / (f'/f) over the samples, skipping near-critical points
    and rejecting outliers beyond five median absolute deviations.
    """
    ratios = []
    for xi in xis:
        (P, dP, _), (F, dF, _), _ = triple.jets(float(xi))
        log_f = dF / F
        if abs(log_f) < _CRITICAL_RATIO:
            continue
        ratios.append((dP / P) / log_f)

    if not ratios:
        raise AnsatzError("k is not identifiable: f'/f vanishes at every sample")

    ratios = np.array(ratios)
    center = float(np.median(ratios))
    spread = float(np.median(np.abs(ratios - center)))
    if spread > 0:
        ratios = ratios[np.abs(ratios - center) <= 5 * spread]
        center = float(np.median(ratios))
    if center <= 0:
        raise AnsatzError(f"Estimated k = {center:.6g} is not positive", details={'k': center})
    return center


def reduce_profiles(
    config: SolitonConfig,
    triple: ProfileTriple,
    xis: Sequence[float],
    k: Optional[float] = None,
    tolerance: Optional[float] = None
) -> PhasePath:
    """
    Phase-plane path x = f'/f, y = h' + [(n-2)k - m] x, z = y / x.

    The triple must satisfy phi'/phi = k f'/f at every sample.
    """
    tolerance = TOLERANCE_CONFIG["proportionality"] if tolerance is None else tolerance
    xis = np.asarray(xis, dtype=float)
    if k is None:
        try:
            k = estimate_k(triple, xis)
        except AnsatzError:
            # constant profiles: every k fits, the path is the origin
            k = 1.0
    if k <= 0:
        raise AnsatzError(f"Coupling constant k must be positive, got {k}")

    x = np.empty_like(xis)
    y = np.empty_like(xis)
    deviation = 0.0
    for index, xi in enumerate(xis):
        (P, dP, _), (F, dF, _), (_, dH, _) = triple.jets(float(xi))
        x[index] = dF / F
        deviation = max(deviation, abs(dP / P - k * x[index]))
        y[index] = dH + ((config.n - 2) * k - config.m) * x[index]

    if deviation > tolerance:
        raise AnsatzError(
            f"Profiles violate phi'/phi = k f'/f (max deviation {deviation:.3e}, k = {k:.6g})",
            details={'max_deviation': deviation, 'k': k}
        )

    with np.errstate(divide='ignore', invalid='ignore'):
        z = np.where(np.abs(x) > _CRITICAL_RATIO, y / x, np.nan)
    return PhasePath(xi=xis, x=x, y=y, z=z, k=k)


def phase_path_residual(config: SolitonConfig, path: PhasePath, triple: ProfileTriple) -> CheckResult:
    """
    Residuals of the phase system and of z' = x [m + (n-2)k^2 - 2kz - z^2] along a path.

    x' and y' come from the derivative channels of the triple:
    x' = f''/f - (f'/f)^2 and y' = h'' + [(n-2)k - m] x'.
    """
    k, n, m = path.k, config.n, config.m
    phase_gap, z_gap, count = 0.0, 0.0, 0
    for xi, x, y, z in zip(path.xi, path.x, path.y, path.z):
        _, (F, dF, ddF), (_, _, ddH) = triple.jets(float(xi))
        dx = ddF / F - (dF / F) ** 2
        dy = ddH + ((n - 2) * k - m) * dx
        rx, ry = phase_rhs(PhaseState(float(x), float(y), k), config)
        phase_gap = max(phase_gap, abs(dx - rx), abs(dy - ry))
        if not np.isnan(z):
            dz = (dy * x - dx * y) / x ** 2
            z_gap = max(z_gap, abs(dz - x * (m + (n - 2) * k ** 2 - 2 * k * z - z ** 2)))
        count += 1

    deviation = max(phase_gap, z_gap)
    tolerance = TOLERANCE_CONFIG["ode_numeric"]
    return CheckResult(
        success=deviation <= tolerance,
        message=f"Phase system residual {phase_gap:.3e}, z-equation residual {z_gap:.3e}",
        max_deviation=deviation,
        tolerance=tolerance,
        points_checked=count,
        details={'phase': phase_gap, 'z_equation': z_gap, 'k': k}
    )
