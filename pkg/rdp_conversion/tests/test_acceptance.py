"""End-to-end acceptance checks on closed-form cases, the grid oracle and the
Gaussian / randomized-response references."""

import math

import numpy as np
import pytest

from rdp_conversion.bernoulli_divergence import log_moment, renyi_divergence
from rdp_conversion.envelope import delta_at, delta_table, envelope_beta, envelope_curve, search_orders
from rdp_conversion.mechanisms import (GaussianMechanismRef, pure_dp_tradeoff, verify_witness,
                                       witness_at, witness_tradeoff)
from rdp_conversion.oracle import grid_boundary_beta
from rdp_conversion.profile import GaussianProfile, PointGuaranteeProfile, RandomizedResponseProfile
from rdp_conversion.region import boundary_beta_array, contains, symmetric_point
from rdp_conversion.types import ErrorPair, OrderSearchConfig, SingleOrderRegion, TradeoffCurve

REGIONS = [
    SingleOrderRegion(0.5, 0.3),
    SingleOrderRegion(1.0, 0.5),
    SingleOrderRegion(1.5, 0.75),
    SingleOrderRegion(2.0, math.log(7 / 3)),
    SingleOrderRegion(8.0, 2.0),
]
INTERIOR = np.linspace(0.01, 0.99, 99)
FULL = np.linspace(0.0, 1.0, 501)


def _boundary(region: SingleOrderRegion, alphas) -> np.ndarray:
    return boundary_beta_array(region.tau, region.rho, alphas)


@pytest.mark.parametrize("region", REGIONS, ids=lambda r: f"tau={r.tau:g}")
def test_boundary_matches_grid_oracle(region):
    n = 4096
    scanned = grid_boundary_beta(region, INTERIOR, n=n)
    np.testing.assert_allclose(_boundary(region, INTERIOR), scanned, rtol=0, atol=1.0 / n + 1e-9)


def test_symmetric_point_closed_forms():
    assert symmetric_point(SingleOrderRegion(2.0, math.log(7 / 3))) == pytest.approx(0.75, abs=1e-10)
    assert symmetric_point(SingleOrderRegion(1.0, 0.5 * math.log(3))) == pytest.approx(0.75, abs=1e-10)


@pytest.mark.parametrize("region", REGIONS, ids=lambda r: f"tau={r.tau:g}")
def test_region_shape(region):
    betas = _boundary(region, FULL)

    assert np.all(betas <= 1.0 - FULL + 1e-9)
    assert np.all(np.diff(betas) <= 1e-9)

    # convexity at midpoints of every second sample pair
    lo, hi = FULL[:-2:2], FULL[2::2]
    mid = _boundary(region, 0.5 * (lo + hi))
    assert np.all(mid <= 0.5 * (betas[:-2:2] + betas[2::2]) + 1e-9)

    # the region is closed under (alpha, beta) -> (beta, alpha)
    assert np.all(_boundary(region, betas) <= FULL + 1e-9)
    for alpha, beta in zip(FULL[::25], betas[::25]):
        assert contains(region, ErrorPair(alpha, beta).reflected())


class TestGaussianGap:

    @pytest.fixture(scope='class')
    def curve(self):
        return envelope_curve(GaussianProfile(1.0), FULL, OrderSearchConfig(tau_max=256.0))

    def test_below_exact_tradeoff(self, curve):
        exact = GaussianMechanismRef(1.0).tradeoff(FULL)
        assert np.all(curve.betas <= exact + 1e-6)

    @pytest.mark.parametrize("tau", [0.5, 0.8, 1.0, 2.0])
    def test_dominates_anchor_orders(self, curve, tau):
        single = _boundary(SingleOrderRegion(tau, tau / 2.0), FULL)
        # each side carries its own bisection error
        assert np.all(curve.betas >= single - 1e-11)


@pytest.mark.parametrize("p", [0.6, 0.75, 0.9])
def test_randomized_response_recovery(p):
    profile = RandomizedResponseProfile(p)
    target = pure_dp_tradeoff(math.log(p / (1.0 - p)), 0.0, FULL)

    finite = envelope_curve(profile, FULL, OrderSearchConfig(tau_max=4096.0, include_infinite_order=False))
    assert np.max(np.abs(finite.betas - target)) <= 1e-3

    exact = envelope_curve(profile, FULL, OrderSearchConfig(tau_max=4096.0, include_infinite_order=True))
    assert np.max(np.abs(exact.betas - target)) <= 1e-9


@pytest.mark.parametrize("profile", [
    GaussianProfile(1.0),
    RandomizedResponseProfile(0.75),
    PointGuaranteeProfile(1.5, 0.75),
], ids=['gaussian', 'rr', 'point'])
def test_witness_saturation(profile):
    orders = search_orders(profile)
    curve = envelope_curve(profile, FULL)
    for alpha0 in np.linspace(0.1, 0.9, 9):
        witness = witness_at(profile, alpha0)
        report = verify_witness(witness, profile, orders)
        assert report.passed, report.violations

        beta, _ = envelope_beta(profile, alpha0)
        assert witness_tradeoff(witness, alpha0) == pytest.approx(beta, abs=1e-9)
        assert np.all(witness_tradeoff(witness, FULL) >= curve.betas - 1e-6)


class TestDeltaConversion:

    @pytest.fixture
    def vertices(self):
        return TradeoffCurve(alphas=[0.0, 0.25, 1.0], betas=[1.0, 0.25, 0.0],
                             tau_active=[np.nan] * 3)

    def test_pure_dp_vertices(self, vertices):
        assert delta_at(vertices, math.log(3)) == pytest.approx(0.0, abs=1e-12)

        dense = np.linspace(0.0, 1.0, 100_001)
        brute = np.max(1.0 - dense - pure_dp_tradeoff(math.log(3), 0.0, dense))
        assert delta_at(vertices, 0.0) == pytest.approx(brute, abs=1e-9)
        assert brute == pytest.approx(0.5, abs=1e-9)

    def test_non_increasing_on_default_grid(self, vertices):
        epsilons = np.linspace(0.0, 8.0, 801)
        gaussian = envelope_curve(GaussianProfile(1.0), np.linspace(0.0, 1.0, 1001))
        for curve in (vertices, gaussian):
            deltas = np.array([pt.delta for pt in delta_table(curve, epsilons)])
            assert np.all(np.diff(deltas) <= 0.0)


class TestDivergenceKernel:
    A = np.linspace(0.0, 1.0, 50)[:, None, None]
    B = np.linspace(0.0, 1.0, 50)[None, :, None]
    TAUS = np.geomspace(0.5, 64.0, 20)[None, None, :]

    def test_nonnegative_and_zero_on_diagonal(self):
        d = renyi_divergence(self.A, self.B, self.TAUS)
        assert d.shape == (50, 50, 20)
        assert np.all(d >= 0.0)
        same = np.broadcast_to(self.A == self.B, d.shape)
        assert np.all(d[same] == 0.0)
        assert np.all(d[~same] > 0.0)

    def test_non_decreasing_in_order(self):
        d = renyi_divergence(self.A, self.B, self.TAUS)
        lower, upper = d[..., :-1], d[..., 1:]
        # support mismatches are infinite at every order; inf - inf would be nan
        both_infinite = np.isinf(lower) & np.isinf(upper)
        tol = 1e-12 * (1.0 + np.where(np.isfinite(lower), np.abs(lower), 0.0))
        assert np.all(both_infinite | (upper >= lower - tol))
        assert np.any(both_infinite)

    def test_kl_continuity(self):
        a = np.linspace(0.05, 0.95, 50)[:, None]
        b = np.linspace(0.05, 0.95, 50)[None, :]
        kl = renyi_divergence(a, b, 1.0)
        for offset in (-1e-7, 1e-7):
            np.testing.assert_allclose(renyi_divergence(a, b, 1.0 + offset), kl, rtol=0, atol=1e-6)

    def test_skew_symmetry_of_moment(self):
        taus = np.linspace(0.5, 0.99, 20)[None, None, :]
        np.testing.assert_allclose(log_moment(self.A, self.B, taus),
                                   log_moment(self.B, self.A, 1.0 - taus), rtol=0, atol=1e-12)
