"""
types.py

Dataclasses shared by the conversion engine modules.
Profiles and mechanism descriptions carry behaviour and live in
profile.py / mechanisms.py; everything here is plain data.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from .errors import ConfigError, DomainError

# Binding directions of a region boundary point
FORWARD = 'FORWARD'      # D_tau(Bern(alpha) || Bern(1-beta)) = rho
REVERSE = 'REVERSE'      # D_tau(Bern(1-beta) || Bern(alpha)) = rho
BOTH = 'BOTH'
NONE = 'NONE'            # rho = inf, nothing binds


def check_probability(x: float, name: str = 'probability') -> float:
    """Return x as float, raising DomainError unless 0 <= x <= 1."""
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {x!r}")
    return x


@dataclass(frozen=True)
class Order:
    """A Rényi order tau in [0.5, inf]; 1.0 is the KL order, inf the max-divergence order."""
    value: float

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v) or v < 0.5:
            raise DomainError(f"Rényi order must be >= 0.5 (or inf), got {self.value!r}")
        object.__setattr__(self, 'value', v)

    @classmethod
    def kl(cls) -> 'Order':
        return cls(1.0)

    @classmethod
    def infinity(cls) -> 'Order':
        return cls(math.inf)

    @property
    def is_kl(self) -> bool:
        return self.value == 1.0

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    @property
    def is_finite(self) -> bool:
        return not self.is_infinite

    def __float__(self) -> float:
        return self.value


def order_value(tau) -> float:
    """Validate an Order or plain number and return its float value."""
    if isinstance(tau, Order):
        return tau.value
    return Order(tau).value


@dataclass(frozen=True)
class ErrorPair:
    """Type I / Type II error rates (alpha, beta) of a binary test."""
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, 'alpha', check_probability(self.alpha, 'alpha'))
        object.__setattr__(self, 'beta', check_probability(self.beta, 'beta'))

    def reflected(self) -> 'ErrorPair':
        """The pair mirrored about the diagonal alpha = beta."""
        return ErrorPair(self.beta, self.alpha)


@dataclass(frozen=True)
class SingleOrderRegion:
    """The single-order RDP privacy region R_{D_tau}(rho)."""
    tau: float
    rho: float

    def __post_init__(self):
        object.__setattr__(self, 'tau', order_value(self.tau))
        rho = float(self.rho)
        if math.isnan(rho) or rho < 0:
            raise DomainError(f"rho must be a nonnegative extended real, got {self.rho!r}")
        object.__setattr__(self, 'rho', rho)


@dataclass(frozen=True)
class RegionBoundaryPoint:
    """A point on a region's lower boundary and the constraint that binds there."""
    pair: ErrorPair
    binding_direction: str = BOTH    # FORWARD, REVERSE, BOTH or NONE


@dataclass(frozen=True)
class ApproxDpPoint:
    """An (epsilon, delta)-DP guarantee."""
    epsilon: float
    delta: float

    def __post_init__(self):
        if not (self.epsilon >= 0):
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon!r}")
        check_probability(self.delta, 'delta')


@dataclass(eq=False)
class TradeoffCurve:
    """A sampled trade-off function alpha -> beta.

    tau_active holds the order that determined each sample (nan when no
    single order applies, e.g. single-order curves leave it at their tau).
    binding is only filled for single-order region curves.
    """
    alphas: np.ndarray
    betas: np.ndarray
    tau_active: np.ndarray
    binding: Optional[list[str]] = None

    def __post_init__(self):
        self.alphas = np.asarray(self.alphas, dtype=float)
        self.betas = np.asarray(self.betas, dtype=float)
        self.tau_active = np.asarray(self.tau_active, dtype=float)
        if not (self.alphas.shape == self.betas.shape == self.tau_active.shape):
            raise DomainError("alphas, betas and tau_active must have equal length")

    def __len__(self) -> int:
        return len(self.alphas)

    @property
    def samples(self) -> list[tuple[float, float, Optional[float]]]:
        """(alpha, beta, tau_active) triples, tau_active None where unset."""
        return [(float(a), float(b), None if math.isnan(t) else float(t))
                for a, b, t in zip(self.alphas, self.betas, self.tau_active)]

    def interpolate(self, alpha) -> np.ndarray:
        """Piecewise-linear evaluation between samples."""
        return np.interp(alpha, self.alphas, self.betas)

    def invariant_violations(self, tol: float = 1e-9) -> list[str]:
        """List every broken trade-off invariant (empty list = valid curve).

        Checks: beta in [0, 1], non-increasing, convex on consecutive
        triples (midpoint-chord test), beta <= 1 - alpha.
        """
        problems = []
        a, b = self.alphas, self.betas
        if np.any(np.diff(a) <= 0):
            problems.append("alphas are not strictly increasing")
        if np.any((b < -tol) | (b > 1 + tol)):
            problems.append("beta outside [0, 1]")

        rises = np.nonzero(np.diff(b) > tol)[0]
        for i in rises[:5]:
            problems.append(f"beta increases between alpha={a[i]:.6g} and alpha={a[i + 1]:.6g}")

        if len(a) >= 3:
            w = (a[1:-1] - a[:-2]) / (a[2:] - a[:-2])
            chord = b[:-2] + w * (b[2:] - b[:-2])
            bad = np.nonzero(b[1:-1] > chord + tol)[0]
            for i in bad[:5]:
                problems.append(f"convexity fails at alpha={a[i + 1]:.6g} "
                                f"(excess {b[i + 1] - chord[i]:.3g})")

        above = np.nonzero(b > 1 - a + max(tol, 1e-12))[0]
        for i in above[:5]:
            problems.append(f"beta above 1 - alpha at alpha={a[i]:.6g}")
        return problems

    def to_frame(self, include_binding: bool = False) -> pd.DataFrame:
        """Tabular view with columns alpha, beta and tau_active (or binding_direction)."""
        if include_binding:
            return pd.DataFrame({
                'alpha': self.alphas,
                'beta': self.betas,
                'binding_direction': self.binding or [NONE] * len(self),
            })
        return pd.DataFrame({
            'alpha': self.alphas,
            'beta': self.betas,
            'tau_active': self.tau_active,
        })


@dataclass(frozen=True)
class OrderSearchConfig:
    """How the sup over tau is searched: log-spaced coarse grid on
    [tau_min, tau_max], golden-section refinement around the coarse
    argmax, plus tau = inf when include_infinite_order (None → whenever
    rho(inf) is finite).
    """
    tau_min: float = 0.5
    tau_max: float = 256.0
    coarse_grid_size: int = 200
    refinement: int = 80
    include_infinite_order: Optional[bool] = None
    golden_tol: float = 1e-10            # width of the log-tau bracket at which refinement stops

    def __post_init__(self):
        if not (0.5 <= self.tau_min < self.tau_max and math.isfinite(self.tau_max)):
            raise ConfigError(f"need 0.5 <= tau_min < tau_max < inf, got "
                              f"tau_min={self.tau_min!r}, tau_max={self.tau_max!r}")
        if int(self.coarse_grid_size) != self.coarse_grid_size or self.coarse_grid_size < 2:
            raise ConfigError(f"coarse_grid_size must be an integer >= 2, got {self.coarse_grid_size!r}")
        if int(self.refinement) != self.refinement or self.refinement < 0:
            raise ConfigError(f"refinement must be a nonnegative integer, got {self.refinement!r}")

    @classmethod
    def from_config(cls, config: dict = None) -> 'OrderSearchConfig':
        """Defaults taken from CONFIG (or a partial override dict)."""
        from .config import get_param
        return cls(
            tau_min=get_param('TAU_MIN', config),
            tau_max=get_param('TAU_MAX', config),
            coarse_grid_size=get_param('COARSE_GRID_SIZE', config),
            refinement=get_param('GOLDEN_ITERATIONS', config),
            include_infinite_order=get_param('INCLUDE_INFINITE_ORDER', config),
            golden_tol=get_param('GOLDEN_LOG_TAU_TOL', config),
        )

    def coarse_grid(self) -> np.ndarray:
        return np.geomspace(self.tau_min, self.tau_max, int(self.coarse_grid_size))


@dataclass(frozen=True)
class BernoulliWitness:
    """P = Bern(a), Q = Bern(b); rejecting H0 on output 1 yields operating_point."""
    a: float
    b: float
    operating_point: ErrorPair

    def __post_init__(self):
        object.__setattr__(self, 'a', check_probability(self.a, 'a'))
        object.__setattr__(self, 'b', check_probability(self.b, 'b'))
        if abs(self.operating_point.alpha - self.a) > 1e-15 or \
           abs(self.operating_point.beta - (1.0 - self.b)) > 1e-15:
            raise DomainError("operating_point must equal (a, 1 - b)")

    @classmethod
    def from_operating_point(cls, alpha: float, beta: float) -> 'BernoulliWitness':
        """Witness whose identity test yields exactly (alpha, beta)."""
        pair = ErrorPair(alpha, beta)
        return cls(a=pair.alpha, b=1.0 - pair.beta, operating_point=pair)


@dataclass
class ProfileValidationReport:
    """Outcome of validate_profile. Never mutates or rejects the profile."""
    taus: list[float]
    rhos: list[float]
    nonnegative: bool = True
    monotonicity_warnings: list[str] = field(default_factory=list)
    finite: dict = field(default_factory=dict)     # tau -> bool
    max_finite_rho: float = 0.0

    @property
    def passed(self) -> bool:
        return self.nonnegative and not self.monotonicity_warnings


@dataclass
class WitnessReport:
    """Outcome of verify_witness: per-order margins rho(tau) - D_tau in both directions."""
    witness: BernoulliWitness
    taus: list[float] = field(default_factory=list)
    forward_margins: list[float] = field(default_factory=list)
    reverse_margins: list[float] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def min_forward_margin(self) -> float:
        return min(self.forward_margins, default=math.inf)

    @property
    def min_reverse_margin(self) -> float:
        return min(self.reverse_margins, default=math.inf)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class OracleReport:
    """Outcome of the brute-force cross-check behind the `verify` subcommand."""
    grid_n: int
    tolerance: float
    max_envelope_deviation: float = 0.0
    max_boundary_deviation: dict = field(default_factory=dict)   # tau -> deviation
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures
