# -*- coding: utf-8 -*-
"""
Constructors for the explicit steady solution families.

    thm14  closed-form power-law profiles along the invariant rays y = N x
    thm15  phase-plane profiles with nonconstant z, integrated numerically
    thm17  null-direction profiles: any positive (phi, f) with h from nested quadrature
    flat   the flat product phi = f = 1, h = 0

Every constructor returns a ProfileTriple with derivative channels taken from
the defining relations, never from differentiating interpolants.
"""

import math
from dataclasses import dataclass, field, fields, replace
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import PchipInterpolator

from config import GRID_CONFIG, INTEGRATOR_CONFIG, QUADRATURE_CONFIG, SOLUTION_DEFAULTS, TOLERANCE_CONFIG
from .conformal import Signature
from .exceptions import (
    AnsatzError, ConfigurationError, ConvergenceError, DimensionError, DomainError, UnsupportedModeError
)
from .invariant_ode import Direction, Interval, ProfileTriple, ScalarProfile, classify_direction
from .logging_config import get_logger
from .warped import SolitonConfig

logger = get_logger(__name__)

FAMILIES = ("thm14", "thm15", "thm17", "flat")
DEFECT_TARGETS = ("phi", "f", "h")
DEFECT_MODES = ("zero", "quadratic", "scale")


def _check_dimensions(n: int, m: int):
    if n < 3:
        raise DimensionError(f"Base dimension n must be at least 3, got {n}")
    if m < 1:
        raise DimensionError(f"Fiber dimension m must be at least 1, got {m}")


def ray_slopes(k: float, n: int, m: int) -> Tuple[float, float]:
    """Roots N+ > 0 > N- of N^2 + 2kN - (m + (n-2)k^2) = 0."""
    if k <= 0:
        raise AnsatzError(f"Coupling constant k must be positive, got {k}")
    _check_dimensions(n, m)
    root = math.sqrt(m + k * k * (n - 1))
    return -k + root, -k - root


def constant_profile(value: float, name: str) -> ScalarProfile:
    return ScalarProfile(lambda xi: value, lambda xi: 0.0, lambda xi: 0.0, name=name)


# ============================================================================
# CLOSED-FORM RAY SOLUTIONS
# ============================================================================

@dataclass(frozen=True)
class Thm14Params:
    """Power-law family along the ray y = N x; u = N xi + b must stay positive."""
    n: int
    m: int
    k: float = SOLUTION_DEFAULTS["k"]
    c1: float = SOLUTION_DEFAULTS["c1"]
    c2: float = SOLUTION_DEFAULTS["c2"]
    b: float = SOLUTION_DEFAULTS["b"]
    branch: str = "plus"

    def __post_init__(self):
        _check_dimensions(self.n, self.m)
        for name in ("k", "c1", "c2"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.branch not in ("plus", "minus"):
            raise ConfigurationError(f"branch must be 'plus' or 'minus', got '{self.branch}'")

    @property
    def slope(self) -> float:
        plus, minus = ray_slopes(self.k, self.n, self.m)
        return plus if self.branch == "plus" else minus


def half_space(params: Thm14Params) -> Tuple[Interval, str]:
    """Validity interval of xi and the matching half-space of the base."""
    N, b = params.slope, params.b
    bound = -b / N
    if N > 0:
        return Interval(bound, math.inf), f"alpha . x > {bound:.17g}"
    return Interval(-math.inf, bound), f"alpha . x < {bound:.17g}"


def _ray_argument(N: float, b: float):
    def u(xi: float) -> float:
        value = N * xi + b
        if value <= 0:
            raise DomainError(
                f"N xi + b = {value:.6g} is not positive at xi={xi}",
                details={'xi': xi, 'argument': value}
            )
        return value
    return u


def _power_profile(c: float, p: float, N: float, b: float, name: str) -> ScalarProfile:
    u = _ray_argument(N, b)
    return ScalarProfile(
        value=lambda xi: c * u(xi) ** p,
        d1=lambda xi: c * p * N * u(xi) ** (p - 1),
        d2=lambda xi: c * p * (p - 1) * N * N * u(xi) ** (p - 2),
        name=name
    )


def thm14_build(params: Thm14Params) -> ProfileTriple:
    """
    phi = c2 u^(-k/N), f = c1 u^(-1/N), h = -C ln u with
    u = N xi + b and C = (m - (n-2)k + N) / N.
    """
    n, m, k, N, b = params.n, params.m, params.k, params.slope, params.b
    C = (m - (n - 2) * k + N) / N
    u = _ray_argument(N, b)
    domain, description = half_space(params)

    h = ScalarProfile(
        value=lambda xi: -C * math.log(u(xi)),
        d1=lambda xi: -C * N / u(xi),
        d2=lambda xi: C * N * N / u(xi) ** 2,
        name="h"
    )
    logger.debug(f"Ray family: N={N:.17g}, C={C:.17g}, domain {description}")
    return ProfileTriple(
        phi=_power_profile(params.c2, -k / N, N, b, "phi"),
        f=_power_profile(params.c1, -1.0 / N, N, b, "f"),
        h=h,
        domain=domain,
        extras={
            'x': lambda xi: -1.0 / u(xi),
            'y': lambda xi: -N / u(xi),
            'z': lambda xi: N
        },
        notes=(f"valid on {description}",)
    )


# ============================================================================
# PHASE-PLANE SOLUTIONS
# ============================================================================

@dataclass(frozen=True)
class Thm15Params:
    """
    Nonconstant-z family. Supported region: z0 > N+, where both factors of the
    phase quadratic are positive.

    `orientation` = -1 reflects z' and x together (reparametrization xi -> -xi).
    """
    n: int
    m: int
    k: float = SOLUTION_DEFAULTS["k"]
    c3: float = SOLUTION_DEFAULTS["c3"]
    z0: float = 3.0
    xi0: float = 0.0
    xi_end: float = 1.0
    c1: float = SOLUTION_DEFAULTS["c1"]
    c2: float = SOLUTION_DEFAULTS["c2"]
    h0: float = 0.0
    orientation: int = 1

    def __post_init__(self):
        _check_dimensions(self.n, self.m)
        for name in ("k", "c3", "c1", "c2"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.orientation not in (1, -1):
            raise ConfigurationError(f"orientation must be +1 or -1, got {self.orientation}")
        if self.xi_end == self.xi0:
            raise ConfigurationError("Integration span is empty (xi_end == xi0)")

    @property
    def a(self) -> float:
        return self.k / math.sqrt(self.m + self.k ** 2 * (self.n - 1))

    @property
    def roots(self) -> Tuple[float, float]:
        return ray_slopes(self.k, self.n, self.m)


def _phase_x(params: Thm15Params):
    plus, minus = params.roots
    a, c3, sign = params.a, params.c3, params.orientation
    tiny = np.finfo(float).tiny

    def x_of(z: float) -> float:
        return sign * c3 * max(z - plus, tiny) ** ((a - 1) / 2) * (z - minus) ** (-(a + 1) / 2)
    return x_of


def thm15_build(params: Thm15Params, xi_span: Optional[Tuple[float, float]] = None) -> ProfileTriple:
    """
    Integrate z' = -x (z - N+)(z - N-) with x = x(z) algebraic, together with
    (ln f)' = x and h' = [z + m - k(n-2)] x, then attach derivative channels.

    The domain is truncated when z approaches the root N+ inside the span.
    """
    if xi_span is not None:
        params = replace(params, xi0=float(xi_span[0]), xi_end=float(xi_span[1]))
    n, m, k = params.n, params.m, params.k
    plus, minus = params.roots
    z0 = params.z0

    scale = 1.0 + abs(plus)
    if min(abs(z0 - plus), abs(z0 - minus)) <= INTEGRATOR_CONFIG["root_margin"] * scale:
        raise DomainError(
            f"z0={z0} sits on a root of the phase quadratic (N+={plus:.6g}, N-={minus:.6g}); "
            "constant z belongs to the ray family",
            details={'z0': z0, 'roots': [plus, minus]}
        )
    if z0 < plus:
        raise UnsupportedModeError(
            f"z0={z0} lies below N+={plus:.6g}: only the region z > N+ is supported",
            details={'z0': z0, 'roots': [plus, minus]}
        )
    if params.orientation == -1:
        logger.warning("Reversed phase orientation requested (experimental)")

    x_of = _phase_x(params)
    shift = m - k * (n - 2)

    def rhs(xi, state):
        z = state[0]
        x = x_of(z)
        return [-x * (z - plus) * (z - minus), x, (z + shift) * x]

    def near_root(xi, state):
        return state[0] - plus - INTEGRATOR_CONFIG["root_margin"] * scale
    near_root.terminal = True

    solution = solve_ivp(
        rhs, (params.xi0, params.xi_end), [z0, 0.0, 0.0],
        method=INTEGRATOR_CONFIG["method"],
        rtol=INTEGRATOR_CONFIG["rtol"],
        atol=INTEGRATOR_CONFIG["atol"],
        events=near_root,
        dense_output=True
    )
    if solution.status == -1:
        raise ConvergenceError(
            f"Phase-plane integration failed: {solution.message}",
            details={'last_xi': float(solution.t[-1]), 'span': [params.xi0, params.xi_end]}
        )

    end = float(solution.t[-1])
    notes = []
    if solution.status == 1:
        notes.append(f"domain truncated at xi={end:.17g}: z approached N+={plus:.17g}")
        logger.warning(notes[-1])

    lo, hi = min(params.xi0, end), max(params.xi0, end)
    grid = np.linspace(lo, hi, INTEGRATOR_CONFIG["samples"])
    states = solution.sol(grid)
    z_of = PchipInterpolator(grid, states[0])
    log_f = PchipInterpolator(grid, states[1])
    h_rel = PchipInterpolator(grid, states[2])

    def z(xi):
        return float(z_of(xi))

    def x(xi):
        return x_of(z(xi))

    def z_prime(xi):
        zi = z(xi)
        return -x_of(zi) * (zi - plus) * (zi - minus)

    def f_value(xi):
        return params.c1 * math.exp(float(log_f(xi)))

    def phi_value(xi):
        return params.c2 * math.exp(k * float(log_f(xi)))

    # x' = x^2 z along solutions
    f = ScalarProfile(
        value=f_value,
        d1=lambda xi: f_value(xi) * x(xi),
        d2=lambda xi: f_value(xi) * x(xi) ** 2 * (z(xi) + 1.0),
        name="f", kind="numeric"
    )
    phi = ScalarProfile(
        value=phi_value,
        d1=lambda xi: phi_value(xi) * k * x(xi),
        d2=lambda xi: phi_value(xi) * x(xi) ** 2 * (k * z(xi) + k * k),
        name="phi", kind="numeric"
    )
    h = ScalarProfile(
        value=lambda xi: params.h0 + float(h_rel(xi)),
        d1=lambda xi: (z(xi) + shift) * x(xi),
        d2=lambda xi: z_prime(xi) * x(xi) + (z(xi) + shift) * x(xi) ** 2 * z(xi),
        name="h", kind="numeric"
    )
    logger.info(f"Phase-plane family integrated on [{lo:.6g}, {hi:.6g}] ({solution.nfev} evaluations)")
    return ProfileTriple(
        phi=phi, f=f, h=h,
        domain=Interval(lo, hi),
        extras={'x': x, 'z': z, 'z_prime': z_prime},
        notes=tuple(notes)
    )


# ============================================================================
# NULL-DIRECTION SOLUTIONS
# ============================================================================

@dataclass(frozen=True)
class Thm17Params:
    """
    Arbitrary positive profiles (phi, f) on a null direction.

    Constants are anchored at xi0: c4 = phi^2 h'(xi0) and c5 = h(xi0).
    Quadrature nodes are cached on `window`.
    """
    phi: ScalarProfile
    f: ScalarProfile
    n: int
    m: int
    c4: float = SOLUTION_DEFAULTS["c4"]
    c5: float = SOLUTION_DEFAULTS["c5"]
    xi0: float = 0.0
    domain: Interval = Interval()
    window: Tuple[float, float] = (-3.0, 3.0)

    def __post_init__(self):
        _check_dimensions(self.n, self.m)
        if not self.domain.contains(self.xi0):
            raise DomainError(f"Anchor xi0={self.xi0} lies outside the profile domain")


def _integrate(func: Callable[[float], float], a: float, b: float, epsabs: float) -> float:
    if a == b:
        return 0.0
    result = quad(
        func, a, b,
        epsabs=epsabs,
        epsrel=QUADRATURE_CONFIG["epsrel"],
        limit=QUADRATURE_CONFIG["limit"],
        full_output=1
    )
    value, error = result[0], result[1]
    if len(result) > 3 and error > 100 * max(epsabs, QUADRATURE_CONFIG["epsrel"] * abs(value)):
        raise ConvergenceError(
            f"Quadrature on [{a:.6g}, {b:.6g}] did not converge: {result[3]}",
            details={'interval': [a, b], 'abserr': error}
        )
    return value


class NestedPotential:
    """
    h(xi) = c5 + int_{xi0}^{xi} phi^-2 [ int_{xi0}^{t} g + c4 ] dt with
    g = m (f''/f) phi^2 + 2m phi phi' (f'/f) - (n-2) phi phi''.

    Both primitives are cached on a node grid; each evaluation integrates
    only from the nearest node.
    """

    def __init__(self, params: Thm17Params):
        self.params = params
        self.logger = get_logger(f"{__name__}.NestedPotential")
        lo, hi = params.window
        nodes = np.union1d(np.linspace(lo, hi, QUADRATURE_CONFIG["nodes"]), [params.xi0])
        self.nodes = nodes[[params.domain.contains(float(v)) for v in nodes]]
        self.anchor = int(np.searchsorted(self.nodes, params.xi0))
        self.inner_nodes = self._cumulative(self.integrand, QUADRATURE_CONFIG["inner_epsabs"])
        self.outer_nodes = self._cumulative(self.h_prime, QUADRATURE_CONFIG["outer_epsabs"])
        self.logger.debug(f"Cached nested quadrature on {len(self.nodes)} nodes")

    def _cumulative(self, func, epsabs) -> np.ndarray:
        values = np.zeros(len(self.nodes))
        for i in range(self.anchor + 1, len(self.nodes)):
            values[i] = values[i - 1] + _integrate(func, self.nodes[i - 1], self.nodes[i], epsabs)
        for i in range(self.anchor - 1, -1, -1):
            values[i] = values[i + 1] - _integrate(func, self.nodes[i], self.nodes[i + 1], epsabs)
        return values

    def _from_nearest(self, cache, func, xi, epsabs) -> float:
        j = int(np.argmin(np.abs(self.nodes - xi)))
        return float(cache[j]) + _integrate(func, float(self.nodes[j]), xi, epsabs)

    def integrand(self, xi: float) -> float:
        p = self.params
        P, dP, ddP = p.phi.derivatives(xi)
        F, dF, ddF = p.f.derivatives(xi)
        return p.m * (ddF / F) * P ** 2 + 2 * p.m * P * dP * (dF / F) - (p.n - 2) * P * ddP

    def inner(self, xi: float) -> float:
        return self._from_nearest(self.inner_nodes, self.integrand, xi, QUADRATURE_CONFIG["inner_epsabs"])

    def h_prime(self, xi: float) -> float:
        return (self.inner(xi) + self.params.c4) / self.params.phi(xi) ** 2

    def h_second(self, xi: float) -> float:
        P, dP, _ = self.params.phi.derivatives(xi)
        return (self.integrand(xi) - 2 * P * dP * self.h_prime(xi)) / P ** 2

    def value(self, xi: float) -> float:
        return self.params.c5 + self._from_nearest(
            self.outer_nodes, self.h_prime, xi, QUADRATURE_CONFIG["outer_epsabs"]
        )


def thm17_build(params: Thm17Params) -> ProfileTriple:
    """Profiles (phi, f) with the potential h obtained by nested quadrature."""
    potential = NestedPotential(params)
    h = ScalarProfile(potential.value, potential.h_prime, potential.h_second, name="h", kind="numeric")
    return ProfileTriple(
        phi=params.phi, f=params.f, h=h,
        domain=params.domain,
        extras={'inner_primitive': potential.inner},
        notes=(f"constants anchored at xi0={params.xi0}",)
    )


def exp_profiles(k: float = SOLUTION_DEFAULTS["k"], A: float = SOLUTION_DEFAULTS["A"]):
    """phi = f = k e^(A xi)."""
    if k <= 0 or A == 0:
        raise ConfigurationError(f"Exponential profiles need k > 0 and A != 0, got k={k}, A={A}")

    def profile(name):
        return ScalarProfile(
            value=lambda xi: k * math.exp(A * xi),
            d1=lambda xi: k * A * math.exp(A * xi),
            d2=lambda xi: k * A * A * math.exp(A * xi),
            name=name
        )
    return profile("phi"), profile("f")


def gauss_profiles():
    """phi = e^xi, f = e^(-xi^2)."""
    phi = ScalarProfile(math.exp, math.exp, math.exp, name="phi")
    f = ScalarProfile(
        value=lambda xi: math.exp(-xi * xi),
        d1=lambda xi: -2 * xi * math.exp(-xi * xi),
        d2=lambda xi: (4 * xi * xi - 2) * math.exp(-xi * xi),
        name="f"
    )
    return phi, f


def exp_example_potential(n: int, m: int, k: float, A: float, c4: float, c5: float) -> Callable[[float], float]:
    """Closed form (3m - (n-2)) (A/2) xi - c4/(2 A k^2) e^(-2 A xi) + c5 in the printed convention."""
    return lambda xi: (3 * m - (n - 2)) * A / 2 * xi - c4 / (2 * A * k * k) * math.exp(-2 * A * xi) + c5


def gauss_example_potential(n: int, m: int, c4: float, c5: float) -> Callable[[float], float]:
    """Closed form (2m/3) xi^3 - 2m xi^2 + (m - (n-2)/2) xi - c4/2 e^(-2 xi) + c5 in the printed convention."""
    return lambda xi: (
        2 * m / 3 * xi ** 3 - 2 * m * xi ** 2 + (m - (n - 2) / 2) * xi - 0.5 * c4 * math.exp(-2 * xi) + c5
    )


def printed_constants_exp(n: int, m: int, k: float, A: float, c4: float, c5: float,
                          xi0: float = 0.0) -> Tuple[float, float]:
    """Convert printed-convention constants of the exponential example to anchored (c4, c5)."""
    inner = (3 * m - (n - 2)) * A * k * k / 2 * math.exp(2 * A * xi0)
    return inner + c4, exp_example_potential(n, m, k, A, c4, c5)(xi0)


def printed_constants_gauss(n: int, m: int, c4: float, c5: float, xi0: float = 0.0) -> Tuple[float, float]:
    """Convert printed-convention constants of the Gaussian example to anchored (c4, c5)."""
    inner = math.exp(2 * xi0) * (2 * m * xi0 ** 2 - 4 * m * xi0 + m - (n - 2) / 2)
    return inner + c4, gauss_example_potential(n, m, c4, c5)(xi0)


def flat_build() -> ProfileTriple:
    return ProfileTriple(
        phi=constant_profile(1.0, "phi"),
        f=constant_profile(1.0, "f"),
        h=constant_profile(0.0, "h"),
        notes=("flat product",)
    )


# ============================================================================
# DEFECT INJECTION
# ============================================================================

def _perturbed(profile: ScalarProfile, mode: str, amount: float, additive: bool) -> ScalarProfile:
    if mode == "zero":
        return constant_profile(0.0 if additive else 1.0, profile.name)
    if mode == "scale":
        c = 1.0 + amount
        return ScalarProfile(
            lambda xi: c * profile.value(xi), lambda xi: c * profile.d1(xi), lambda xi: c * profile.d2(xi),
            name=profile.name, kind=profile.kind
        )
    if additive:
        return ScalarProfile(
            lambda xi: profile.value(xi) + amount * xi * xi,
            lambda xi: profile.d1(xi) + 2 * amount * xi,
            lambda xi: profile.d2(xi) + 2 * amount,
            name=profile.name, kind=profile.kind
        )
    # P * w with w = 1 + a xi^2
    return ScalarProfile(
        lambda xi: profile.value(xi) * (1 + amount * xi * xi),
        lambda xi: profile.d1(xi) * (1 + amount * xi * xi) + profile.value(xi) * 2 * amount * xi,
        lambda xi: (profile.d2(xi) * (1 + amount * xi * xi)
                    + 4 * amount * xi * profile.d1(xi)
                    + 2 * amount * profile.value(xi)),
        name=profile.name, kind=profile.kind
    )


def inject_defect(triple: ProfileTriple, target: str, mode: str = "quadratic", amount: float = 0.01) -> ProfileTriple:
    """
    Perturb one profile of an exact solution.

    quadratic: phi, f -> P (1 + a xi^2); h -> h + a xi^2
    scale:     P -> (1 + a) P
    zero:      phi, f -> 1; h -> 0
    """
    if target not in DEFECT_TARGETS:
        raise ConfigurationError(f"Defect target must be one of {DEFECT_TARGETS}, got '{target}'")
    if mode not in DEFECT_MODES:
        raise ConfigurationError(f"Defect mode must be one of {DEFECT_MODES}, got '{mode}'")
    perturbed = _perturbed(getattr(triple, target), mode, amount, additive=(target == "h"))
    logger.info(f"Injected {mode} defect of size {amount} into {target}")
    return triple.with_profiles(
        **{target: perturbed},
        notes=triple.notes + (f"defect: {mode} {target} {amount}",)
    )


# ============================================================================
# FAMILY DISPATCH AND PRESETS
# ============================================================================

def _dataclass_kwargs(cls, params: Dict[str, Any], skip=()) -> Dict[str, Any]:
    allowed = {f.name for f in fields(cls)} - set(skip)
    unknown = set(params) - allowed
    if unknown:
        raise ConfigurationError(
            f"Unknown {cls.__name__} parameters: {sorted(unknown)}",
            details={'unknown': sorted(unknown), 'allowed': sorted(allowed)}
        )
    return dict(params)


def build_family(family: str, config: SolitonConfig, params: Optional[Dict[str, Any]] = None) -> ProfileTriple:
    """Construct the ProfileTriple of a named family from plain parameters."""
    params = dict(params or {})
    if family == "thm14":
        return thm14_build(Thm14Params(n=config.n, m=config.m, **_dataclass_kwargs(Thm14Params, params, ("n", "m"))))
    if family == "thm15":
        return thm15_build(Thm15Params(n=config.n, m=config.m, **_dataclass_kwargs(Thm15Params, params, ("n", "m"))))
    if family == "thm17":
        profiles = params.pop("profiles", "exp")
        printed = bool(params.pop("printed_constants", False))
        k = float(params.pop("k", SOLUTION_DEFAULTS["k"]))
        A = float(params.pop("A", SOLUTION_DEFAULTS["A"]))
        kwargs = _dataclass_kwargs(Thm17Params, params, ("phi", "f", "n", "m", "domain"))
        if "window" in kwargs:
            kwargs["window"] = tuple(kwargs["window"])
        c4 = kwargs.get("c4", SOLUTION_DEFAULTS["c4"])
        c5 = kwargs.get("c5", SOLUTION_DEFAULTS["c5"])
        xi0 = kwargs.get("xi0", 0.0)
        if profiles == "exp":
            phi, f = exp_profiles(k, A)
            if printed:
                kwargs["c4"], kwargs["c5"] = printed_constants_exp(config.n, config.m, k, A, c4, c5, xi0)
        elif profiles == "gauss":
            phi, f = gauss_profiles()
            if printed:
                kwargs["c4"], kwargs["c5"] = printed_constants_gauss(config.n, config.m, c4, c5, xi0)
        else:
            raise ConfigurationError(f"Unknown null-direction profiles '{profiles}', expected 'exp' or 'gauss'")
        return thm17_build(Thm17Params(phi=phi, f=f, n=config.n, m=config.m, **kwargs))
    if family == "flat":
        if params:
            raise ConfigurationError(f"The flat family takes no parameters, got {sorted(params)}")
        return flat_build()
    raise ConfigurationError(f"Unknown solution family '{family}', expected one of {FAMILIES}")


@dataclass(frozen=True)
class Preset:
    """Named, documented instance of a solution family."""
    name: str
    description: str
    family: str
    n: int
    m: int
    signature: Tuple[int, ...]
    alpha: Tuple[float, ...]
    params: Dict[str, Any] = field(default_factory=dict)
    xi_range: Tuple[float, float] = (-2.0, 2.0)
    rho: float = 0.0
    lambda_F: float = 0.0

    def soliton_config(self) -> SolitonConfig:
        return SolitonConfig(self.n, self.m, Signature(self.signature), self.rho, self.lambda_F)

    def direction(self) -> Direction:
        return classify_direction(Signature(self.signature), self.alpha)

    def build(self) -> ProfileTriple:
        return build_family(self.family, self.soliton_config(), self.params)

    def to_config(self) -> Dict[str, Any]:
        """Run configuration reproducing this preset."""
        return {
            'config': {
                'n': self.n,
                'm': self.m,
                'signature': list(self.signature),
                'rho': self.rho,
                'lambda_F': self.lambda_F
            },
            'direction': {'alpha': list(self.alpha)},
            'family': {'name': self.family, 'params': dict(self.params)},
            'grid': {
                'xi_min': self.xi_range[0],
                'xi_max': self.xi_range[1],
                'samples': GRID_CONFIG["default_samples"],
                'base_points': GRID_CONFIG["default_base_points"],
                'seed': GRID_CONFIG["seed"]
            },
            'tolerances': {
                'ode': TOLERANCE_CONFIG["ode_analytic" if self.family in ("thm14", "flat") else "ode_numeric"],
                'pde': TOLERANCE_CONFIG["pde_analytic" if self.family in ("thm14", "flat") else "pde_numeric"],
                'oracle': TOLERANCE_CONFIG["oracle"]
            }
        }


def presets() -> Dict[str, Preset]:
    """Catalog of named solutions across families and signatures."""
    lorentzian = (-1, 1, 1)
    riemannian = (1, 1, 1)
    catalog = [
        Preset(
            "thm17-exp", "Null direction, phi = f = k e^(A xi), h linear plus exponential",
            "thm17", 3, 2, lorentzian, (1.0, 1.0, 0.0),
            {'profiles': 'exp', 'k': 1.0, 'A': 1.0, 'c4': 0.0, 'c5': 0.0, 'printed_constants': True}
        ),
        Preset(
            "thm17-gauss", "Null direction, phi = e^xi, f = e^(-xi^2), cubic potential",
            "thm17", 3, 2, lorentzian, (1.0, 1.0, 0.0),
            {'profiles': 'gauss', 'c4': 0.0, 'c5': 0.0, 'printed_constants': True}
        ),
        Preset(
            "thm14-riemannian-plus", "Riemannian base, ray N+ = 1, phi = f = 1/xi, h = -2 ln xi",
            "thm14", 3, 2, riemannian, (1.0, 0.0, 0.0),
            {'k': 1.0, 'c1': 1.0, 'c2': 1.0, 'b': 0.0, 'branch': 'plus'},
            xi_range=(2.0, 4.0)
        ),
        Preset(
            "thm14-lorentzian-minus", "Lorentzian base, timelike direction, ray N- = -3",
            "thm14", 3, 2, lorentzian, (1.0, 0.0, 0.0),
            {'k': 1.0, 'c1': 1.0, 'c2': 1.0, 'b': 1.0, 'branch': 'minus'},
            xi_range=(-1.0, 0.25)
        ),
        Preset(
            "thm15-riemannian", "Riemannian base, nonconstant z from z0 = 3 above N+ = 1",
            "thm15", 3, 2, riemannian, (1.0, 0.0, 0.0),
            {'k': 1.0, 'c3': 1.0, 'z0': 3.0, 'xi0': 0.0, 'xi_end': 1.0},
            xi_range=(0.0, 1.0)
        ),
        Preset(
            "flat-product", "phi = f = 1, h = 0: flat base times flat fiber",
            "flat", 3, 2, riemannian, (1.0, 0.0, 0.0), {}
        ),
    ]
    return {preset.name: preset for preset in catalog}
