"""
bernoulli_divergence.py

Rényi, KL and max divergence between Bernoulli distributions, evaluated in
the log domain. Every kernel broadcasts over numpy arrays of (a, b, tau);
scalar inputs give a float back.

Conventions: 0 * ln 0 = 0, 0^x = 0 for x > 0, 0/0 = 1 in likelihood
ratios. An infinite divergence (support mismatch) is returned as inf.
"""

import numpy as np
from scipy.special import rel_entr

from .config import get_param
from .errors import DomainError


def _probabilities(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise DomainError(f"{name} must lie in [0, 1]")
    return arr


def check_orders(tau, min_order: float) -> np.ndarray:
    arr = np.asarray(tau, dtype=float)
    if not np.all(arr >= min_order):    # also rejects nan
        raise DomainError(f"Rényi order must be >= {min_order} (inf allowed)")
    return arr


def _as_output(values: np.ndarray, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return float(values)
    return values


def _log_term(x: np.ndarray, y: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """ln(x^tau * y^(1-tau)) for finite tau > 0."""
    with np.errstate(divide='ignore', invalid='ignore'):
        val = tau * np.log(x) + (1.0 - tau) * np.log(y)
    # x = 0 kills the term even when y^(1-tau) = inf
    return np.where(x == 0.0, -np.inf, val)


def log_moment(a, b, tau):
    """ln(a^tau b^(1-tau) + (1-a)^tau (1-b)^(1-tau)) via a two-term log-sum-exp.

    Defined for any finite tau > 0 (tau < 0.5 included, the oracle needs it).
    This is the quantity compared against (tau - 1) * rho.
    """
    a = _probabilities(a, 'a')
    b = _probabilities(b, 'b')
    t = np.asarray(tau, dtype=float)
    if not np.all(np.isfinite(t) & (t > 0)):
        raise DomainError("log_moment needs a finite order tau > 0")
    out = np.logaddexp(_log_term(a, b, t), _log_term(1.0 - a, 1.0 - b, t))
    return _as_output(out, a, b, t)


def _log_ratio(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    with np.errstate(divide='ignore', invalid='ignore'):
        r = np.log(x) - np.log(y)
    return np.where((x == 0.0) & (y == 0.0), 0.0, r)


def max_divergence(a, b):
    """D_inf(Bern(a) || Bern(b)) = ln max(a/b, (1-a)/(1-b))."""
    a = _probabilities(a, 'a')
    b = _probabilities(b, 'b')
    out = np.maximum(_log_ratio(a, b), _log_ratio(1.0 - a, 1.0 - b))
    out = np.where(a == b, 0.0, np.maximum(out, 0.0))
    return _as_output(out, a, b)


def kl_divergence(a, b):
    """KL(Bern(a) || Bern(b))."""
    a = _probabilities(a, 'a')
    b = _probabilities(b, 'b')
    out = rel_entr(a, b) + rel_entr(1.0 - a, 1.0 - b)
    out = np.where(a == b, 0.0, np.maximum(out, 0.0))
    return _as_output(out, a, b)


def divergence_any_order(a, b, tau, config: dict = None) -> np.ndarray:
    """Array kernel for D_tau(Bern(a) || Bern(b)) with tau in (0, inf].

    Inputs are assumed validated; callers outside this package go through
    renyi_divergence, which enforces tau >= 0.5.
    """
    kl_band = get_param('KL_BAND', config)
    a, b, tau = np.broadcast_arrays(np.asarray(a, dtype=float),
                                    np.asarray(b, dtype=float),
                                    np.asarray(tau, dtype=float))
    out = np.zeros(a.shape)

    finite = np.isfinite(tau)
    near_kl = finite & (np.abs(tau - 1.0) < kl_band)
    renyi = finite & ~near_kl
    unbounded = ~finite

    if np.any(renyi):
        ar, br, tr = a[renyi], b[renyi], tau[renyi]
        lm = np.logaddexp(_log_term(ar, br, tr), _log_term(1.0 - ar, 1.0 - br, tr))
        with np.errstate(invalid='ignore'):
            out[renyi] = lm / (tr - 1.0)
    if np.any(near_kl):
        ak, bk = a[near_kl], b[near_kl]
        out[near_kl] = rel_entr(ak, bk) + rel_entr(1.0 - ak, 1.0 - bk)
    if np.any(unbounded):
        au, bu = a[unbounded], b[unbounded]
        out[unbounded] = np.maximum(_log_ratio(au, bu), _log_ratio(1.0 - au, 1.0 - bu))

    return np.where(a == b, 0.0, np.maximum(out, 0.0))


def renyi_divergence(a, b, tau, config: dict = None):
    """D_tau(Bern(a) || Bern(b)) for tau in [0.5, inf].

    tau may be a float, an Order or an array of either; tau = 1 is KL and
    tau = inf the max divergence. Orders within KL_BAND of 1 use the KL
    formula because 1/(tau - 1) loses all precision there.

    Raises:
        DomainError: a or b outside [0, 1], or tau < 0.5.
    """
    a = _probabilities(a, 'a')
    b = _probabilities(b, 'b')
    t = check_orders(tau, get_param('MIN_ORDER', config))
    return _as_output(divergence_any_order(a, b, t, config), a, b, t)
