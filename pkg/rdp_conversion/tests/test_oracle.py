"""Tests for the grid-scan oracle and its agreement with the bisection solvers."""

import math

import numpy as np
import pytest

from rdp_conversion.envelope import envelope_beta
from rdp_conversion.errors import DomainError
from rdp_conversion.oracle import (cross_check, grid_boundary_beta, grid_contains_low_order,
                                   grid_envelope_beta)
from rdp_conversion.profile import GaussianProfile, PointGuaranteeProfile, RandomizedResponseProfile
from rdp_conversion.region import boundary_beta, contains
from rdp_conversion.types import ErrorPair, OrderSearchConfig, SingleOrderRegion

N = 4096
RR_REGION = SingleOrderRegion(2.0, math.log(7 / 3))


class TestGridBoundary:

    def test_zero_budget_is_diagonal(self):
        assert grid_boundary_beta(SingleOrderRegion(2.0, 0.0), 0.5, n=1000) == pytest.approx(0.5)

    def test_randomized_response_point(self):
        assert grid_boundary_beta(RR_REGION, 0.25, n=N) == pytest.approx(0.25, abs=1.0 / N)

    def test_alpha_zero(self):
        assert grid_boundary_beta(SingleOrderRegion(2.0, 1.0), 0.0, n=N) == 1.0

    @pytest.mark.parametrize("tau, rho", [(0.5, 0.3), (1.0, 0.5), (2.0, 1.0), (16.0, 4.0)])
    def test_sandwiches_bisection(self, tau, rho):
        region = SingleOrderRegion(tau, rho)
        alphas = np.linspace(0, 1, 33)
        scanned = grid_boundary_beta(region, alphas, n=N)
        solved = np.array([boundary_beta(region, a) for a in alphas])
        assert np.all(scanned >= solved - 1e-9)
        assert np.all(scanned <= solved + 1.0 / N + 1e-9)

    def test_finer_grid_never_worse(self):
        alphas = np.linspace(0.05, 0.95, 19)
        coarse = grid_boundary_beta(RR_REGION, alphas, n=256)
        fine = grid_boundary_beta(RR_REGION, alphas, n=4096)
        assert np.all(fine <= coarse + 1e-15)

    def test_rejects_small_n(self):
        with pytest.raises(DomainError):
            grid_boundary_beta(RR_REGION, 0.5, n=1)


class TestGridEnvelope:

    def test_point_guarantee_is_single_order(self):
        profile = PointGuaranteeProfile(2.0, 1.0)
        alphas = np.linspace(0, 1, 21)
        env = grid_envelope_beta(profile, alphas, [0.5, 1.0, 2.0, 8.0], n=N)
        single = grid_boundary_beta(SingleOrderRegion(2.0, 1.0), alphas, n=N)
        np.testing.assert_array_equal(env, single)

    def test_gaussian_agrees_with_envelope(self):
        profile = GaussianProfile(1.0)
        tau_grid = np.geomspace(0.5, 256, 200)
        beta, _ = envelope_beta(profile, 0.5)
        scanned = grid_envelope_beta(profile, 0.5, tau_grid, n=N)
        assert scanned == pytest.approx(beta, abs=1.0 / N + 1e-6)

    def test_randomized_response(self):
        profile = RandomizedResponseProfile(0.75)
        scanned = grid_envelope_beta(profile, 0.25, np.geomspace(0.5, 256, 100), n=N)
        assert scanned == pytest.approx(0.25, abs=2e-3)


class TestLowOrders:

    @pytest.mark.parametrize("tau", [0.1, 0.25, 0.4])
    def test_mirror_identity(self, tau):
        """Order tau with budget rho describes the same region as 1 - tau with rho (1-tau)/tau."""
        rho = 0.4
        mirrored_rho = rho * (1.0 - tau) / tau
        mirror = SingleOrderRegion(1.0 - tau, mirrored_rho)
        looser = SingleOrderRegion(1.0 - tau, mirrored_rho * (1 + 1e-6))
        tighter = SingleOrderRegion(1.0 - tau, mirrored_rho * (1 - 1e-6))
        for alpha in np.linspace(0.0, 1.0, 11):
            for beta in np.linspace(0.0, 1.0, 41):
                pair = ErrorPair(alpha, beta)
                if contains(looser, pair) != contains(tighter, pair):
                    continue
                assert grid_contains_low_order(tau, rho, pair) == contains(mirror, pair)

    def test_unconstrained(self):
        assert grid_contains_low_order(0.3, math.inf, ErrorPair(0.0, 0.0))

    def test_domain(self):
        with pytest.raises(DomainError):
            grid_contains_low_order(0.6, 1.0, ErrorPair(0.5, 0.5))


class TestCrossCheck:

    def test_point_guarantee(self):
        report = cross_check(PointGuaranteeProfile(1.5, 0.75), np.linspace(0, 1, 21),
                             [0.5, 1.5, 4.0], n=1024)
        assert report.passed, report.failures
        assert report.max_envelope_deviation <= report.tolerance

    def test_gaussian(self):
        cfg = OrderSearchConfig(coarse_grid_size=32, refinement=20)
        report = cross_check(GaussianProfile(1.0), np.linspace(0, 1, 21),
                             np.geomspace(0.5, 64, 16), n=1024, cfg=cfg)
        assert report.passed, report.failures
        assert set(report.max_boundary_deviation) == set(np.geomspace(0.5, 64, 16).tolist())

    def test_reports_failures_instead_of_raising(self):
        report = cross_check(GaussianProfile(1.0), np.linspace(0, 1, 11),
                             np.geomspace(0.5, 64, 8), n=2)
        assert report.tolerance == pytest.approx(0.5 + 1e-6)
        assert isinstance(report.failures, list)
