"""
mechanisms.py

Reference mechanisms and witnesses.

  - pure_dp_tradeoff / SymmetricRR / AsymmetricRR: the randomized-response
    family and the (epsilon, delta) piecewise-linear trade-off it attains
  - GaussianMechanismRef: the exact Gaussian trade-off, used to measure the
    gap left by any RDP-based conversion
  - witness_at / witness_tradeoff / verify_witness: a Bernoulli pair whose
    identity test sits exactly on the envelope, showing no admissible
    conversion can certify more than the envelope at that alpha
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .bernoulli_divergence import check_orders, divergence_any_order, max_divergence
from .config import get_param
from .envelope import envelope_beta
from .errors import DegenerateWitnessError, DomainError, OrientationError
from .profile import GaussianProfile, RandomizedResponseProfile, RdpProfile
from .types import BernoulliWitness, ErrorPair, OrderSearchConfig, WitnessReport


def _unit_interval(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise DomainError(f"{name} must lie in [0, 1]")
    return arr


def _scalar_or_array(values: np.ndarray, x):
    return float(values) if np.ndim(x) == 0 else values


def rr_epsilon(p: float) -> float:
    """Pure-DP budget of symmetric randomized response: ln(p / (1-p))."""
    p = float(p)
    if not (0.5 < p < 1.0):
        raise DomainError(f"p must lie in (0.5, 1), got {p!r}")
    return math.log(p / (1.0 - p))


def pure_dp_tradeoff(epsilon: float, delta: float, alpha):
    """f_{eps,delta}(alpha) = max{0, 1 - delta - e^eps alpha, e^-eps (1 - delta - alpha)}.

    epsilon = inf is allowed (the trade-off collapses to 0 away from alpha = 0).
    """
    epsilon = float(epsilon)
    if not (epsilon >= 0):
        raise DomainError(f"epsilon must be >= 0, got {epsilon!r}")
    delta = float(_unit_interval(delta, 'delta'))
    a = _unit_interval(alpha, 'alpha')

    with np.errstate(over='ignore', invalid='ignore'):
        scaled = np.where(a > 0, np.exp(epsilon) * a, 0.0)
        shrunk = np.exp(-epsilon) * (1.0 - delta - a)
    out = np.maximum(np.maximum(1.0 - delta - scaled, shrunk), 0.0)
    return _scalar_or_array(out, alpha)


@dataclass(frozen=True)
class GaussianMechanismRef:
    """Gaussian mechanism with noise scale sigma and unit sensitivity."""
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"sigma must be a positive real, got {self.sigma!r}")

    @property
    def mu(self) -> float:
        """Mean shift in noise units (the Gaussian-DP parameter)."""
        return 1.0 / self.sigma

    def tradeoff(self, alpha):
        return gaussian_tradeoff(self, alpha)

    def profile(self) -> GaussianProfile:
        return GaussianProfile(sigma=self.sigma)


def gaussian_tradeoff(ref: GaussianMechanismRef, alpha):
    """Exact Gaussian trade-off Phi(Phi^-1(1 - alpha) - 1/sigma)."""
    a = _unit_interval(alpha, 'alpha')
    # norm.isf(a) = Phi^-1(1 - a) without the cancellation in 1 - a
    out = norm.cdf(norm.isf(a) - ref.mu)
    return _scalar_or_array(np.asarray(out, dtype=float), alpha)


@dataclass(frozen=True)
class SymmetricRR:
    """Symmetric randomized response: the input bit is kept with probability p."""
    p: float

    def __post_init__(self):
        if not (0.5 <= self.p <= 1.0):
            raise DomainError(f"retention p must lie in [0.5, 1], got {self.p!r}")

    @property
    def epsilon(self) -> float:
        if self.p == 1.0:
            return math.inf
        if self.p == 0.5:
            return 0.0
        return rr_epsilon(self.p)

    def errors(self) -> ErrorPair:
        """Type I / II errors of the optimal test: (1-p, 1-p)."""
        return ErrorPair(1.0 - self.p, 1.0 - self.p)

    def profile(self) -> RandomizedResponseProfile:
        """Exact RDP profile (needs 0.5 < p < 1)."""
        return RandomizedResponseProfile(p=self.p)

    def tradeoff(self, alpha):
        return pure_dp_tradeoff(self.epsilon, 0.0, alpha)


@dataclass(frozen=True)
class AsymmetricRR:
    """Asymmetric randomized response with mixing parameter p and noise parameter q.

    P(y=1 | x=1) = (1-p)(1-q) = p_hat,  P(y=1 | x=0) = p + (1-p)(1-q) = q_hat.

    Mechanically this is a two-stage mixture: with probability p the input
    bit is flipped and returned; otherwise the input is ignored and a noise
    bit is reported, 0 with probability q and 1 with probability 1-q.
    """
    p: float
    q: float

    def __post_init__(self):
        _unit_interval(self.p, 'p')
        _unit_interval(self.q, 'q')

    @property
    def p_hat(self) -> float:
        return (1.0 - self.p) * (1.0 - self.q)

    @property
    def q_hat(self) -> float:
        return self.p + (1.0 - self.p) * (1.0 - self.q)

    @property
    def transition_matrix(self) -> np.ndarray:
        """P(y | x) with rows x in {0, 1} and columns y in {0, 1}."""
        return np.array([[1.0 - self.q_hat, self.q_hat],
                         [1.0 - self.p_hat, self.p_hat]])

    @property
    def epsilon(self) -> float:
        """Pure-DP budget ln max(q_hat/p_hat, (1-p_hat)/(1-q_hat)). Informational only."""
        return max(max_divergence(self.q_hat, self.p_hat),
                   max_divergence(self.p_hat, self.q_hat))

    def errors(self) -> ErrorPair:
        return asymmetric_rr_errors(self.p, self.q)


def optimal_test_errors(p_hat: float, q_hat: float) -> ErrorPair:
    """Errors of the test that rejects x = 0 on output 0: (1 - q_hat, p_hat).

    Raises:
        OrientationError: q_hat < p_hat, so output 0 does not favour x = 1.
    """
    p_hat = float(_unit_interval(p_hat, 'p_hat'))
    q_hat = float(_unit_interval(q_hat, 'q_hat'))
    if q_hat < p_hat:
        raise OrientationError(f"expected q_hat >= p_hat, got p_hat={p_hat!r}, q_hat={q_hat!r}")
    return ErrorPair(1.0 - q_hat, p_hat)


def asymmetric_rr_errors(p: float, q: float) -> ErrorPair:
    """(alpha, beta) = (1 - q_hat, p_hat) of AsymmetricRR(p, q)."""
    mech = AsymmetricRR(p=p, q=q)
    return optimal_test_errors(mech.p_hat, mech.q_hat)


# ==========================================
# WITNESSES
# ==========================================

def witness_at(profile: RdpProfile, alpha0: float, cfg: OrderSearchConfig = None,
               config: dict = None) -> BernoulliWitness:
    """Bernoulli pair P = Bern(alpha0), Q = Bern(1 - beta*) with beta* the envelope at alpha0.

    Rejecting H0 on output 1 gives errors exactly (alpha0, beta*).

    Raises:
        DomainError: alpha0 outside (0, 1).
        DegenerateWitnessError: beta* is 0 or 1.
    """
    alpha0 = float(alpha0)
    if not (0.0 < alpha0 < 1.0):
        raise DomainError(f"alpha0 must lie in (0, 1), got {alpha0!r}")
    beta, tau = envelope_beta(profile, alpha0, cfg, config)
    if beta >= 1.0:
        raise DegenerateWitnessError(
            f"envelope is 1 at alpha0={alpha0!r} (order {tau.value:g}): "
            "Q = Bern(0) and the witness tests nothing")
    if beta <= 0.0:
        raise DegenerateWitnessError(
            f"envelope is 0 at alpha0={alpha0!r} (order {tau.value:g}): "
            "the profile places no constraint on beta here")
    return BernoulliWitness.from_operating_point(alpha0, beta)


def witness_tradeoff(witness: BernoulliWitness, alpha):
    """Two-segment trade-off through (0, 1), the operating point and (1, 0)."""
    a = _unit_interval(alpha, 'alpha')
    op = witness.operating_point
    out = np.interp(a, [0.0, op.alpha, 1.0], [1.0, op.beta, 0.0])
    return _scalar_or_array(np.asarray(out, dtype=float), alpha)


def verify_witness(witness: BernoulliWitness, profile: RdpProfile, tau_grid,
                   config: dict = None) -> WitnessReport:
    """Check D_tau(P || Q) and D_tau(Q || P) against rho(tau) at every grid order.

    Report-only: violations are listed, never raised.
    """
    tol = get_param('WITNESS_TOL', config)
    taus = np.atleast_1d(check_orders(tau_grid, get_param('MIN_ORDER', config)))
    rhos = profile.rho_array(taus)
    fwd = divergence_any_order(witness.a, witness.b, taus, config)
    rev = divergence_any_order(witness.b, witness.a, taus, config)

    with np.errstate(invalid='ignore'):
        fwd_margin = np.where(np.isinf(rhos), np.inf, rhos - fwd)
        rev_margin = np.where(np.isinf(rhos), np.inf, rhos - rev)

    report = WitnessReport(witness=witness, taus=taus.tolist(),
                           forward_margins=fwd_margin.tolist(),
                           reverse_margins=rev_margin.tolist())
    for t, r, df, dr in zip(taus, rhos, fwd, rev):
        if df > r + tol:
            report.violations.append(f"forward D_{t:g} = {df:.12g} exceeds rho = {r:.12g}")
        if dr > r + tol:
            report.violations.append(f"reverse D_{t:g} = {dr:.12g} exceeds rho = {r:.12g}")
    return report
