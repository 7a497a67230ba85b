"""
oracle.py

Brute-force reference implementations used to validate the region and
envelope solvers. Nothing here is clever: boundaries come from a linear
upward scan of beta in {0, 1/n, ..., 1}, so the only shared code with the
solvers is the membership predicate itself.
"""

import math

import numpy as np

from .bernoulli_divergence import check_orders, log_moment
from .config import get_param
from .envelope import envelope_curve
from .errors import DomainError
from .profile import RdpProfile
from .region import boundary_beta_array, check_alpha_grid, contains_array
from .types import ErrorPair, OracleReport, OrderSearchConfig, SingleOrderRegion


def _check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise DomainError(f"oracle grid size must be an integer >= 2, got {n!r}")
    return int(n)


def _grid_scan(tau, rho, alphas: np.ndarray, n: int, config: dict = None) -> np.ndarray:
    """Smallest feasible beta = k/n per alpha; tau and rho may be per-alpha arrays."""
    betas = np.arange(n + 1) / n
    tau = np.asarray(tau, dtype=float)
    rho = np.asarray(rho, dtype=float)
    if tau.ndim:
        tau, rho = tau[:, None], rho[:, None]
    ok = contains_array(tau, rho, alphas[:, None], betas[None, :], config)

    first = np.argmax(ok, axis=1)
    found = ok[np.arange(len(alphas)), first]
    # no grid point in a slice narrower than 1/n: round the diagonal up
    fallback = np.ceil((1.0 - alphas) * n) / n
    return np.where(found, betas[first], np.minimum(fallback, 1.0))


def grid_boundary_beta(region: SingleOrderRegion, alpha, n: int = None,
                       config: dict = None):
    """Smallest beta in {0, 1/n, ..., 1} with (alpha, beta) in the region.

    Within 1/n above the true boundary. alpha may be a scalar or an array.
    """
    n = _check_n(n if n is not None else get_param('ORACLE_GRID_N', config))
    alphas = np.atleast_1d(np.asarray(alpha, dtype=float))
    if np.any((alphas < 0) | (alphas > 1)):
        raise DomainError("alpha must lie in [0, 1]")
    out = _grid_scan(region.tau, region.rho, alphas, n, config)
    return float(out[0]) if np.ndim(alpha) == 0 else out


def grid_envelope_beta(profile: RdpProfile, alpha, tau_grid, n: int = None,
                       config: dict = None):
    """max over tau_grid of grid_boundary_beta at (tau, rho(tau))."""
    n = _check_n(n if n is not None else get_param('ORACLE_GRID_N', config))
    alphas = np.atleast_1d(np.asarray(alpha, dtype=float))
    taus = np.atleast_1d(check_orders(tau_grid, get_param('MIN_ORDER', config)))
    rhos = profile.rho_array(taus)

    best = np.zeros(len(alphas))
    for t, r in zip(taus, rhos):
        best = np.maximum(best, _grid_scan(t, r, alphas, n, config))
    return float(best[0]) if np.ndim(alpha) == 0 else best


def grid_contains_low_order(tau: float, rho: float, pair: ErrorPair,
                            config: dict = None) -> bool:
    """Region membership at an order tau in (0, 0.5), straight from the moment form.

    For tau < 1, D_tau <= rho is equivalent to
    ln(a^tau b^(1-tau) + (1-a)^tau (1-b)^(1-tau)) >= (tau - 1) rho,
    checked in both directions. Used to confirm such orders add nothing.
    """
    if not (0.0 < tau < 0.5):
        raise DomainError(f"low-order check needs 0 < tau < 0.5, got {tau!r}")
    if math.isinf(rho):
        return True
    slack = get_param('MEMBERSHIP_SLACK', config)
    floor = (tau - 1.0) * rho - slack * (1.0 - tau)
    a, q = pair.alpha, 1.0 - pair.beta
    return bool(log_moment(a, q, tau) >= floor and log_moment(q, a, tau) >= floor)


def cross_check(profile: RdpProfile, alphas, tau_grid, n: int = None,
                cfg: OrderSearchConfig = None, config: dict = None) -> OracleReport:
    """Compare the solvers against the grid scan.

    Per grid order: bisection boundary vs scan (sandwich within 1/n).
    Envelope: envelope_curve vs the scan maximised over tau_grid plus each
    sample's reported active order, within 1/n + SEARCH_SLACK.
    """
    n = _check_n(n if n is not None else get_param('ORACLE_GRID_N', config))
    grid = check_alpha_grid(alphas)
    taus = np.atleast_1d(check_orders(tau_grid, get_param('MIN_ORDER', config)))
    rhos = profile.rho_array(taus)

    report = OracleReport(grid_n=n, tolerance=1.0 / n + get_param('SEARCH_SLACK', config))
    boundary_tol = 1.0 / n + 1e-9

    grid_env = np.zeros(len(grid))
    for t, r in zip(taus, rhos):
        scanned = _grid_scan(t, r, grid, n, config)
        solved = boundary_beta_array(t, r, grid, config)
        grid_env = np.maximum(grid_env, scanned)

        below = scanned - solved            # in [0, 1/n] when both agree
        dev = float(np.max(np.abs(below)))
        report.max_boundary_deviation[float(t)] = dev
        if np.any(below < -1e-9) or np.any(below > boundary_tol):
            report.failures.append(f"boundary at tau={t:g} off the grid scan by {dev:.3g}")

    curve = envelope_curve(profile, grid, cfg, config)
    active = _grid_scan(curve.tau_active, profile.rho_array(curve.tau_active), grid, n, config)
    grid_env = np.maximum(grid_env, active)

    report.max_envelope_deviation = float(np.max(np.abs(curve.betas - grid_env)))
    if report.max_envelope_deviation > report.tolerance:
        worst = int(np.argmax(np.abs(curve.betas - grid_env)))
        report.failures.append(
            f"envelope off the grid envelope by {report.max_envelope_deviation:.3g} "
            f"at alpha={grid[worst]:.6g} (tolerance {report.tolerance:.3g})")
    return report
