"""
profile.py

RDP profiles tau -> rho(tau): four representations, evaluation,
report-only validation, and the JSON schema used by the CLI.

Schema (strict, unknown keys rejected):
    {"type": "gaussian", "sigma": <float>}
    {"type": "rr", "p": <float>}
    {"type": "point", "tau": <float>, "rho": <float>}
    {"type": "table", "points": [[tau, rho], ...]}

Orders below 0.5 are not representable: for tau in (0, 0.5) the region
constraint is implied by the one at 1 - tau, so nothing is lost.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .bernoulli_divergence import check_orders, divergence_any_order
from .config import get_param
from .errors import DomainError, ProfileFormatError
from .types import ProfileValidationReport, order_value


@dataclass(frozen=True)
class GaussianProfile:
    """Gaussian mechanism, unit sensitivity: rho(tau) = tau / (2 sigma^2)."""
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"sigma must be a positive real, got {self.sigma!r}")

    def rho_array(self, tau: np.ndarray) -> np.ndarray:
        return tau / (2.0 * self.sigma ** 2)     # inf at tau = inf

    def support_orders(self) -> tuple:
        return ()

    def to_dict(self) -> dict:
        return {'type': 'gaussian', 'sigma': self.sigma}


@dataclass(frozen=True)
class RandomizedResponseProfile:
    """Symmetric randomized response with retention p:
    rho(tau) = 1/(tau-1) ln(p^tau (1-p)^(1-tau) + (1-p)^tau p^(1-tau)),
    i.e. D_tau(Bern(p) || Bern(1-p)), with ln(p/(1-p)) at tau = inf.
    """
    p: float

    def __post_init__(self):
        if not (0.5 < self.p < 1.0):
            raise DomainError(f"p must lie in (0.5, 1), got {self.p!r}")

    def rho_array(self, tau: np.ndarray) -> np.ndarray:
        return divergence_any_order(self.p, 1.0 - self.p, tau)

    def support_orders(self) -> tuple:
        return ()

    def to_dict(self) -> dict:
        return {'type': 'rr', 'p': self.p}


@dataclass(frozen=True)
class PointGuaranteeProfile:
    """A single (tau*, rho*)-RDP guarantee; rho = inf at every other order."""
    tau_star: float
    rho_star: float

    def __post_init__(self):
        object.__setattr__(self, 'tau_star', order_value(self.tau_star))
        if not (math.isfinite(self.rho_star) and self.rho_star >= 0):
            raise DomainError(f"rho must be a nonnegative real, got {self.rho_star!r}")

    def rho_array(self, tau: np.ndarray) -> np.ndarray:
        return np.where(tau == self.tau_star, float(self.rho_star), np.inf)

    def support_orders(self) -> tuple:
        return (self.tau_star,)

    def to_dict(self) -> dict:
        return {'type': 'point', 'tau': self.tau_star, 'rho': self.rho_star}


@dataclass(frozen=True)
class TabulatedProfile:
    """rho given at finitely many orders, e.g. the output of an RDP accountant.

    Between nodes tau_i >= 1 the generator h(tau) = (tau-1) rho(tau) is
    interpolated by chords; for a convex h (true of every real profile)
    the chord over-estimates rho, so the interpolated constraint is never
    tighter than the truth. Below 1 the chord would under-estimate, so the
    right node's rho is used there (rho is non-decreasing in tau). Outside
    the node range rho = inf.
    """
    points: tuple

    def __post_init__(self):
        pts = tuple((float(t), float(r)) for t, r in self.points)
        if not pts:
            raise DomainError("points must hold at least one (tau, rho) pair")
        taus = [t for t, _ in pts]
        rhos = [r for _, r in pts]
        if any(not (math.isfinite(t) and t >= 0.5) for t in taus):
            raise DomainError("points: every tau must be finite and >= 0.5")
        if any(t2 <= t1 for t1, t2 in zip(taus, taus[1:])):
            raise DomainError("points: taus must be strictly increasing")
        if any(not (math.isfinite(r) and r >= 0) for r in rhos):
            raise DomainError("points: every rho must be finite and >= 0")
        object.__setattr__(self, 'points', pts)

    @property
    def taus(self) -> np.ndarray:
        return np.array([t for t, _ in self.points])

    @property
    def rhos(self) -> np.ndarray:
        return np.array([r for _, r in self.points])

    def rho_array(self, tau: np.ndarray) -> np.ndarray:
        taus, rhos = self.taus, self.rhos
        out = np.full(np.shape(tau), np.inf)
        inside = (tau >= taus[0]) & (tau <= taus[-1])
        if not np.any(inside):
            return out

        t = tau[inside]
        right = np.searchsorted(taus, t, side='left')       # first node >= t
        left = np.maximum(right - 1, 0)
        exact = taus[right] == t
        chord_ok = ~exact & (taus[left] >= 1.0)
        with np.errstate(divide='ignore', invalid='ignore'):
            chord = np.interp(t, taus, (taus - 1.0) * rhos) / (t - 1.0)
        out[inside] = np.where(chord_ok, chord, rhos[right])
        return out

    def support_orders(self) -> tuple:
        return tuple(t for t, _ in self.points)

    def to_dict(self) -> dict:
        return {'type': 'table', 'points': [[t, r] for t, r in self.points]}


RdpProfile = Union[GaussianProfile, RandomizedResponseProfile,
                   PointGuaranteeProfile, TabulatedProfile]


def rho_at(profile: RdpProfile, tau, config: dict = None):
    """Evaluate rho(tau); tau may be a float, an Order or an array.

    Raises:
        DomainError: tau < 0.5.
    """
    t = check_orders(tau, get_param('MIN_ORDER', config))
    out = np.asarray(profile.rho_array(np.atleast_1d(t)), dtype=float)
    if np.ndim(t) == 0:
        return float(out.reshape(-1)[0])
    return out.reshape(t.shape)


def support_orders(profile: RdpProfile) -> tuple:
    """Orders at which the profile is explicitly specified (point / table nodes)."""
    return profile.support_orders()


def validate_profile(profile: RdpProfile, tau_grid,
                     config: dict = None) -> ProfileValidationReport:
    """Report nonnegativity, decreases in tau and finiteness over tau_grid.

    Report-only: nothing is raised for findings and the profile is untouched.
    """
    taus = np.sort(np.asarray(tau_grid, dtype=float))
    rhos = np.asarray(rho_at(profile, taus, config), dtype=float).reshape(taus.shape)

    report = ProfileValidationReport(taus=taus.tolist(), rhos=rhos.tolist())
    report.nonnegative = bool(np.all(rhos >= 0))
    report.finite = {float(t): bool(math.isfinite(r)) for t, r in zip(taus, rhos)}
    finite_rhos = rhos[np.isfinite(rhos)]
    report.max_finite_rho = float(finite_rhos.max()) if len(finite_rhos) else 0.0

    for (t1, r1), (t2, r2) in zip(zip(taus, rhos), zip(taus[1:], rhos[1:])):
        if math.isfinite(r1) and math.isfinite(r2) and r2 < r1 - 1e-12:
            report.monotonicity_warnings.append(
                f"rho decreases from {r1:.6g} at tau={t1:.6g} to {r2:.6g} at tau={t2:.6g}"
            )
    return report


# ==========================================
# JSON SCHEMA
# ==========================================

_SCHEMA = {
    'gaussian': ('sigma',),
    'rr': ('p',),
    'point': ('tau', 'rho'),
    'table': ('points',),
}


def _number(data: dict, key: str) -> float:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProfileFormatError(f"key '{key}' must be a number, got {value!r}")
    return float(value)


def _table_points(data: dict) -> list:
    value = data['points']
    if not isinstance(value, list):
        raise ProfileFormatError("key 'points' must be a list of [tau, rho] pairs")
    points = []
    for i, item in enumerate(value):
        if not (isinstance(item, list) and len(item) == 2 and
                all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)):
            raise ProfileFormatError(f"key 'points' entry {i} must be a [tau, rho] number pair")
        points.append((float(item[0]), float(item[1])))
    return points


def parse_profile(data: dict) -> RdpProfile:
    """Build a profile from its JSON dict, rejecting unknown or missing keys."""
    if not isinstance(data, dict):
        raise ProfileFormatError("profile must be a JSON object")
    if 'type' not in data:
        raise ProfileFormatError("missing key 'type'")
    kind = data['type']
    if kind not in _SCHEMA:
        raise ProfileFormatError(f"key 'type' has unknown value {kind!r} "
                                 f"(expected one of {sorted(_SCHEMA)})")
    fields = _SCHEMA[kind]
    for key in data:
        if key != 'type' and key not in fields:
            raise ProfileFormatError(f"unknown key '{key}' for profile type '{kind}'")
    for key in fields:
        if key not in data:
            raise ProfileFormatError(f"missing key '{key}' for profile type '{kind}'")

    try:
        if kind == 'gaussian':
            return GaussianProfile(sigma=_number(data, 'sigma'))
        if kind == 'rr':
            return RandomizedResponseProfile(p=_number(data, 'p'))
        if kind == 'point':
            return PointGuaranteeProfile(tau_star=_number(data, 'tau'),
                                         rho_star=_number(data, 'rho'))
        return TabulatedProfile(points=tuple(_table_points(data)))
    except ProfileFormatError:
        raise
    except DomainError as e:
        raise ProfileFormatError(f"invalid '{kind}' profile: {e}") from e


def load_profile(source: str) -> RdpProfile:
    """Load a profile from inline JSON (starting with '{') or a JSON file path."""
    text = source.strip()
    if not text.startswith('{'):
        path = Path(text)
        try:
            text = path.read_text()
        except OSError as e:
            raise ProfileFormatError(f"cannot read profile file {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProfileFormatError(f"profile is not valid JSON: {e}") from e
    return parse_profile(data)


def profile_to_dict(profile: RdpProfile) -> dict:
    """The profile in its JSON schema form."""
    return profile.to_dict()
