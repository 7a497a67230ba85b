"""
region.py

Single-order RDP privacy region R_{D_tau}(rho): membership, lower-boundary
extraction and boundary sampling.

A pair (alpha, beta) is in the region iff both
    D_tau(Bern(alpha) || Bern(1-beta)) <= rho   (forward)
    D_tau(Bern(1-beta) || Bern(alpha)) <= rho   (reverse)
Comparing divergences keeps the test uniform across tau > 1, tau = 1 and
tau < 1 (the inequality flip of the tau < 1 case is inside 1/(tau-1)).

The region is convex and contains the diagonal point (alpha, 1-alpha), so
the beta-slice at fixed alpha is an interval and bisection of the
membership predicate over [0, 1-alpha] finds its lower end.
"""

import math

import numpy as np
from scipy import optimize

from .bernoulli_divergence import divergence_any_order, renyi_divergence
from .config import get_param
from .errors import DomainError, UnsupportedInputError
from .types import (BOTH, FORWARD, NONE, REVERSE, ErrorPair, RegionBoundaryPoint,
                    SingleOrderRegion, TradeoffCurve, check_probability)


def check_alpha_grid(alphas) -> np.ndarray:
    """Validate a strictly increasing grid inside [0, 1]."""
    grid = np.asarray(alphas, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise DomainError("alpha grid must be a non-empty 1-D sequence")
    if np.any((grid < 0.0) | (grid > 1.0)) or np.any(np.isnan(grid)):
        raise DomainError("alpha grid must lie in [0, 1]")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("alpha grid must be strictly increasing")
    return grid


def within_budget(tau, rho, a, b, config: dict = None) -> np.ndarray:
    """Vectorised single-direction test D_tau(Bern(a) || Bern(b)) <= rho."""
    slack = get_param('MEMBERSHIP_SLACK', config)
    rho = np.asarray(rho, dtype=float)
    d = divergence_any_order(a, b, tau, config)
    return np.isinf(rho) | (d <= rho + slack)


def contains_array(tau, rho, alpha, beta, config: dict = None) -> np.ndarray:
    """Vectorised membership over broadcast arrays of (tau, rho, alpha, beta)."""
    alpha = np.asarray(alpha, dtype=float)
    q = 1.0 - np.asarray(beta, dtype=float)
    return (within_budget(tau, rho, alpha, q, config)
            & within_budget(tau, rho, q, alpha, config))


def contains(region: SingleOrderRegion, pair: ErrorPair, config: dict = None) -> bool:
    """True iff (alpha, beta) satisfies both Rényi constraints of the region."""
    return bool(contains_array(region.tau, region.rho, pair.alpha, pair.beta, config))


def _zero_alpha_beta(tau: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Boundary at alpha = 0 for finite rho > 0.

    For tau >= 1 the reverse divergence D(Bern(1-beta) || Bern(0)) is
    infinite unless beta = 1. For tau in [0.5, 1) the forward constraint
    gives beta >= e^-rho and the reverse one beta >= e^(-rho(1-tau)/tau),
    the latter being the larger.
    """
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        low = np.exp(-rho * (1.0 - tau) / tau)
    return np.where(tau >= 1.0, 1.0, np.maximum(np.exp(-rho), low))


def boundary_beta_array(tau, rho, alpha, config: dict = None) -> np.ndarray:
    """Vectorised lower boundary f_{tau,rho}(alpha) over broadcast arrays.

    Degenerate cases are settled before the solver runs:
    rho = inf → 0, rho = 0 → 1 - alpha, alpha = 1 → 0, alpha = 0 → see
    _zero_alpha_beta, beta = 0 feasible → 0. Everything else is bisected
    to BISECTION_TOL.
    """
    tol = get_param('BISECTION_TOL', config)
    max_iter = get_param('BISECTION_MAX_ITER', config)

    tau, rho, alpha = (np.array(x, dtype=float) for x in
                       np.broadcast_arrays(np.asarray(tau, dtype=float),
                                           np.asarray(rho, dtype=float),
                                           np.asarray(alpha, dtype=float)))

    unconstrained = np.isinf(rho)
    diagonal = ~unconstrained & (rho == 0.0)
    at_one = ~unconstrained & ~diagonal & (alpha == 1.0)
    at_zero = ~unconstrained & ~diagonal & (alpha == 0.0)
    closed = unconstrained | diagonal | at_one | at_zero

    closed_beta = np.zeros(alpha.shape)
    closed_beta[diagonal] = 1.0 - alpha[diagonal]
    closed_beta[at_zero] = _zero_alpha_beta(tau[at_zero], rho[at_zero])

    solve = ~closed
    if not np.any(solve):
        return closed_beta

    t, r, a = tau[solve], rho[solve], alpha[solve]
    lo = np.zeros(a.shape)
    # beta = 0 already feasible (possible for tau < 1): boundary is exactly 0
    hi = np.where(contains_array(t, r, a, 0.0, config), 0.0, 1.0 - a)
    for _ in range(max_iter):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        ok = contains_array(t, r, a, mid, config)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)

    beta = closed_beta
    beta[solve] = hi
    return beta


def binding_directions(tau, rho, alpha, beta, config: dict = None) -> list[str]:
    """Which constraint binds at each boundary point (within BINDING_TOL)."""
    tol = get_param('BINDING_TOL', config)
    tau, rho, alpha, beta = np.broadcast_arrays(*(np.asarray(x, dtype=float)
                                                  for x in (tau, rho, alpha, beta)))
    q = 1.0 - beta
    fwd = divergence_any_order(alpha, q, tau, config)
    rev = divergence_any_order(q, alpha, tau, config)

    labels = []
    for r, df, dr in zip(rho.ravel(), fwd.ravel(), rev.ravel()):
        if math.isinf(r):
            labels.append(NONE)
            continue
        gap_f, gap_r = abs(df - r), abs(dr - r)
        if gap_f <= tol and gap_r <= tol:
            labels.append(BOTH)
        elif gap_f <= tol:
            labels.append(FORWARD)
        elif gap_r <= tol:
            labels.append(REVERSE)
        elif gap_f == gap_r:
            # corner points such as (0, 1): both divergences vanish, nothing binds
            labels.append(NONE)
        else:
            labels.append(FORWARD if gap_f < gap_r else REVERSE)
    return labels


def boundary_beta(region: SingleOrderRegion, alpha: float, config: dict = None) -> float:
    """f_{tau,rho}(alpha) = inf{beta : (alpha, beta) in R_{D_tau}(rho)}, to within 1e-12."""
    alpha = check_probability(alpha, 'alpha')
    return float(boundary_beta_array(region.tau, region.rho, alpha, config))


def boundary_point(region: SingleOrderRegion, alpha: float,
                   config: dict = None) -> RegionBoundaryPoint:
    """Boundary point at alpha together with its binding direction."""
    beta = boundary_beta(region, alpha, config)
    direction = binding_directions(region.tau, region.rho, alpha, beta, config)[0]
    return RegionBoundaryPoint(pair=ErrorPair(alpha, beta), binding_direction=direction)


def symmetric_point(region: SingleOrderRegion, config: dict = None) -> float:
    """The p* in [0.5, 1) with D_tau(Bern(1-p*) || Bern(p*)) = rho.

    g(p) = D_tau(Bern(1-p) || Bern(p)) is strictly increasing from g(0.5) = 0
    to g(1) = inf, so the root is unique. The boundary crosses the diagonal
    at (1-p*, 1-p*).

    Raises:
        UnsupportedInputError: rho is infinite.
    """
    rho = region.rho
    if math.isinf(rho):
        raise UnsupportedInputError("symmetric_point needs a finite rho")
    if rho == 0.0:
        return 0.5
    if math.isinf(region.tau):
        # g(p) = ln(p / (1-p)) at the max-divergence order
        return 1.0 / (1.0 + math.exp(-rho))

    def excess(p: float) -> float:
        return renyi_divergence(1.0 - p, p, region.tau, config) - rho

    return float(optimize.bisect(excess, 0.5, 1.0,
                                 xtol=get_param('SYMMETRIC_POINT_TOL', config),
                                 maxiter=get_param('BISECTION_MAX_ITER', config)))


def sample_curve(region: SingleOrderRegion, alphas, config: dict = None) -> TradeoffCurve:
    """Sample the region's lower boundary on a strictly increasing alpha grid."""
    grid = check_alpha_grid(alphas)
    betas = boundary_beta_array(region.tau, region.rho, grid, config)
    binding = binding_directions(region.tau, region.rho, grid, betas, config)
    return TradeoffCurve(alphas=grid, betas=betas,
                         tau_active=np.full(len(grid), region.tau),
                         binding=binding)
