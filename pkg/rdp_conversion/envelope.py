"""
envelope.py

The optimal RDP → trade-off conversion: the lower boundary of the joint
region, i.e. the pointwise supremum over tau of the single-order
boundaries f_{tau, rho(tau)}(alpha), plus (epsilon, delta) extraction from
any sampled trade-off curve.

Search over tau (per alpha, all alphas solved in lockstep):
    1. log-spaced coarse grid on [tau_min, tau_max] plus the profile's
       support orders, evaluated as one (alpha × tau) boundary matrix
    2. golden-section maximisation in log tau inside the bracket formed by
       the coarse argmax's neighbours
    3. tau = inf, when configured (or when rho(inf) is finite)
The returned beta is the best value over everything evaluated, so it is a
certified lower bound on the supremum whether or not the boundary is
unimodal in tau.
"""

import math
from typing import Optional

import numpy as np

from .bernoulli_divergence import check_orders
from .config import get_param
from .errors import ConfigError, DomainError
from .profile import RdpProfile, support_orders
from .region import boundary_beta_array, check_alpha_grid, contains_array
from .types import (ApproxDpPoint, ErrorPair, Order, OrderSearchConfig, TradeoffCurve,
                    check_probability)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _search_config(cfg: Optional[OrderSearchConfig], config: dict = None) -> OrderSearchConfig:
    return cfg if cfg is not None else OrderSearchConfig.from_config(config)


def search_orders(profile: RdpProfile, cfg: OrderSearchConfig = None,
                  config: dict = None) -> np.ndarray:
    """Sorted orders evaluated before refinement: coarse grid, support
    orders and (last) inf when it takes part in the search.

    Raises:
        ConfigError: the resulting set is empty.
    """
    cfg = _search_config(cfg, config)
    support = np.asarray(support_orders(profile), dtype=float)
    orders = np.union1d(cfg.coarse_grid(), support[np.isfinite(support)])

    include_inf = cfg.include_infinite_order
    if include_inf is None:
        include_inf = math.isfinite(float(profile.rho_array(np.array([np.inf]))[0]))
    if include_inf or np.any(np.isinf(support)):
        orders = np.append(orders, np.inf)

    if len(orders) == 0:
        raise ConfigError("order search set is empty")
    return orders


def _profile_boundary(profile: RdpProfile, tau: np.ndarray, alphas: np.ndarray,
                      config: dict = None) -> np.ndarray:
    return boundary_beta_array(tau, profile.rho_array(tau), alphas, config)


def _keep_better(best_beta: np.ndarray, best_tau: np.ndarray,
                 beta: np.ndarray, tau: np.ndarray):
    """Replace where beta is strictly larger; equal values go to the smaller tau."""
    better = (beta > best_beta) | ((beta == best_beta) & (tau < best_tau))
    return np.where(better, beta, best_beta), np.where(better, tau, best_tau)


def _golden_refine(profile: RdpProfile, alphas: np.ndarray, lo: np.ndarray, hi: np.ndarray,
                   best_beta: np.ndarray, best_tau: np.ndarray,
                   cfg: OrderSearchConfig, config: dict = None):
    """Golden-section maximisation of f_{tau, rho(tau)}(alpha) over log tau in [lo, hi]."""
    def evaluate(log_tau):
        tau = np.exp(log_tau)
        return _profile_boundary(profile, tau, alphas, config), tau

    a, b = lo.copy(), hi.copy()
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, tc = evaluate(c)
    fd, td = evaluate(d)
    best_beta, best_tau = _keep_better(best_beta, best_tau, fc, tc)
    best_beta, best_tau = _keep_better(best_beta, best_tau, fd, td)

    for _ in range(int(cfg.refinement)):
        if np.all(b - a <= cfg.golden_tol):
            break
        left = fc >= fd                  # maximum lies in [a, d]
        a = np.where(left, a, c)
        b = np.where(left, d, b)
        x = np.where(left, b - _INV_PHI * (b - a), a + _INV_PHI * (b - a))
        fx, tx = evaluate(x)
        best_beta, best_tau = _keep_better(best_beta, best_tau, fx, tx)

        c, d = np.where(left, x, d), np.where(left, c, x)
        fc, fd = np.where(left, fx, fd), np.where(left, fc, fx)

    return best_beta, best_tau


def _envelope(profile: RdpProfile, alphas: np.ndarray, cfg: OrderSearchConfig,
              config: dict = None):
    orders = search_orders(profile, cfg, config)
    finite = orders[np.isfinite(orders)]
    n = len(alphas)

    best_beta = np.zeros(n)
    best_tau = np.full(n, np.inf)

    if len(finite):
        matrix = _profile_boundary(profile, finite[None, :], alphas[:, None], config)
        k = np.argmax(matrix, axis=1)                 # first maximum → smallest tau
        best_beta = matrix[np.arange(n), k]
        best_tau = finite[k]

        if len(finite) >= 2 and cfg.refinement > 0:
            log_orders = np.log(finite)
            lo = log_orders[np.maximum(k - 1, 0)]
            hi = log_orders[np.minimum(k + 1, len(finite) - 1)]
            best_beta, best_tau = _golden_refine(profile, alphas, lo, hi,
                                                 best_beta, best_tau, cfg, config)

    if np.isinf(orders[-1]):
        inf_beta = _profile_boundary(profile, np.array(np.inf), alphas, config)
        take = inf_beta > best_beta
        if len(finite) == 0:
            take = np.ones(n, dtype=bool)
        best_beta = np.where(take, inf_beta, best_beta)
        best_tau = np.where(take, np.inf, best_tau)

    return best_beta, best_tau


def envelope_curve(profile: RdpProfile, alphas, cfg: OrderSearchConfig = None,
                   config: dict = None) -> TradeoffCurve:
    """Sample the optimal trade-off lower bound on a strictly increasing alpha grid.

    tau_active holds the order that attained each sample.

    Raises:
        DomainError: invalid alpha grid.
        ConfigError: invalid or empty order search.
    """
    grid = check_alpha_grid(alphas)
    cfg = _search_config(cfg, config)
    betas, taus = _envelope(profile, grid, cfg, config)
    return TradeoffCurve(alphas=grid, betas=betas, tau_active=taus)


def envelope_beta(profile: RdpProfile, alpha: float, cfg: OrderSearchConfig = None,
                  config: dict = None) -> tuple[float, Order]:
    """sup over the searched orders of f_{tau, rho(tau)}(alpha), with the attaining order."""
    alpha = check_probability(alpha, 'alpha')
    cfg = _search_config(cfg, config)
    betas, taus = _envelope(profile, np.array([alpha]), cfg, config)
    return float(betas[0]), Order(float(taus[0]))


def joint_contains(profile: RdpProfile, pair: ErrorPair, tau_grid,
                   config: dict = None) -> bool:
    """True iff pair lies in R_{D_tau}(rho(tau)) for every tau in tau_grid."""
    taus = np.atleast_1d(check_orders(tau_grid, get_param('MIN_ORDER', config)))
    rhos = profile.rho_array(taus)
    return bool(np.all(contains_array(taus, rhos, pair.alpha, pair.beta, config)))


# ==========================================
# (EPSILON, DELTA) EXTRACTION
# ==========================================

def _hockey_stick_terms(curve: TradeoffCurve, epsilons: np.ndarray) -> np.ndarray:
    """1 - e^eps alpha - beta per (eps, sample); alpha = 0 samples ignore e^eps."""
    a = curve.alphas[None, :]
    with np.errstate(over='ignore', invalid='ignore'):
        scaled = np.where(a > 0, np.exp(epsilons[:, None]) * a, 0.0)
    return 1.0 - scaled - curve.betas[None, :]


def delta_at(curve: TradeoffCurve, epsilon: float) -> float:
    """Smallest delta with every curve sample inside R_DP(epsilon, delta).

    Exact for piecewise-linear curves sampled at their vertices; for smooth
    curves sample densely (DELTA_MIN_SAMPLES or more).
    """
    if not (epsilon >= 0):
        raise DomainError(f"epsilon must be >= 0, got {epsilon!r}")
    terms = _hockey_stick_terms(curve, np.array([float(epsilon)]))
    return float(max(0.0, terms.max()))


def _delta_limit(curve: TradeoffCurve) -> float:
    """lim delta(eps) as eps → inf: only samples at alpha = 0 survive."""
    at_zero = curve.betas[curve.alphas == 0.0]
    return float(max(0.0, (1.0 - at_zero).max())) if len(at_zero) else 0.0


def epsilon_at(curve: TradeoffCurve, delta: float, config: dict = None) -> float:
    """Smallest epsilon >= 0 with delta_at(curve, epsilon) <= delta (inf if none)."""
    delta = check_probability(delta, 'delta')
    if delta_at(curve, 0.0) <= delta:
        return 0.0
    if delta < _delta_limit(curve):
        return math.inf

    hi = 1.0
    while delta_at(curve, hi) > delta:
        hi *= 2.0
    lo = 0.0
    tol = get_param('BISECTION_TOL', config)
    for _ in range(get_param('EPSILON_BISECTION_ITER', config)):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if delta_at(curve, mid) <= delta:
            hi = mid
        else:
            lo = mid
    return hi


def delta_table(curve: TradeoffCurve, epsilons) -> list[ApproxDpPoint]:
    """delta(epsilon) for every epsilon in the grid."""
    eps = np.asarray(epsilons, dtype=float)
    deltas = np.maximum(_hockey_stick_terms(curve, eps).max(axis=1), 0.0)
    return [ApproxDpPoint(epsilon=float(e), delta=float(min(d, 1.0)))
            for e, d in zip(eps, deltas)]
