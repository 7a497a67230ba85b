"""Tests for the optimal conversion (envelope over orders) and (epsilon, delta) extraction."""

import math

import numpy as np
import pytest

from rdp_conversion.envelope import (delta_at, delta_table, envelope_beta, envelope_curve,
                                     epsilon_at, joint_contains, search_orders)
from rdp_conversion.errors import ConfigError, DomainError
from rdp_conversion.profile import (GaussianProfile, PointGuaranteeProfile,
                                    RandomizedResponseProfile, TabulatedProfile, rho_at)
from rdp_conversion.region import boundary_beta, sample_curve
from rdp_conversion.types import ErrorPair, OrderSearchConfig, SingleOrderRegion, TradeoffCurve

GAUSSIAN = GaussianProfile(sigma=1.0)
RR = RandomizedResponseProfile(p=0.75)
POINT = PointGuaranteeProfile(tau_star=1.5, rho_star=0.75)


def _pure_dp_vertices() -> TradeoffCurve:
    """f_{ln 3, 0} sampled at its vertices."""
    return TradeoffCurve(alphas=[0.0, 0.25, 1.0], betas=[1.0, 0.25, 0.0],
                         tau_active=[np.nan] * 3)


class TestOrderSearchConfig:

    @pytest.mark.parametrize("kwargs", [
        {"tau_min": 0.4},
        {"tau_min": 8.0, "tau_max": 4.0},
        {"tau_max": math.inf},
        {"coarse_grid_size": 1},
        {"refinement": -1},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            OrderSearchConfig(**kwargs)

    def test_from_config_overrides(self):
        cfg = OrderSearchConfig.from_config({"TAU_MAX": 4096.0})
        assert cfg.tau_max == 4096.0
        assert cfg.coarse_grid_size == 200
        assert cfg.include_infinite_order is None


class TestSearchOrders:

    def test_support_orders_always_searched(self):
        assert 1.5 in search_orders(POINT)
        assert 3.0 in search_orders(TabulatedProfile(((3.0, 1.0),)))

    def test_infinite_order_follows_profile(self):
        assert np.isinf(search_orders(RR)[-1])
        assert not np.any(np.isinf(search_orders(GAUSSIAN)))

    def test_infinite_order_overrides(self):
        assert not np.any(np.isinf(search_orders(RR, OrderSearchConfig(include_infinite_order=False))))
        assert np.isinf(search_orders(GAUSSIAN, OrderSearchConfig(include_infinite_order=True))[-1])

    def test_infinite_support_order_kept(self):
        profile = PointGuaranteeProfile(tau_star=math.inf, rho_star=1.0)
        orders = search_orders(profile, OrderSearchConfig(include_infinite_order=False))
        assert np.isinf(orders[-1])


class TestEnvelopeBeta:

    def test_point_guarantee_is_its_single_order(self):
        beta, tau = envelope_beta(POINT, 0.3)
        assert beta == pytest.approx(boundary_beta(SingleOrderRegion(1.5, 0.75), 0.3), abs=1e-11)
        assert tau.value == 1.5

    def test_gaussian_at_zero(self):
        beta, tau = envelope_beta(GAUSSIAN, 0.0)
        assert beta == 1.0
        assert tau.value >= 1.0

    def test_randomized_response_operating_point(self):
        beta, _ = envelope_beta(RR, 0.25, OrderSearchConfig(include_infinite_order=False))
        assert beta == pytest.approx(0.25, abs=1e-3)

    def test_infinite_order_recovers_pure_dp(self):
        beta, _ = envelope_beta(RR, 0.1)
        # f_{ln 3, 0}(0.1) = 1 - 3 * 0.1
        assert beta == pytest.approx(0.7, abs=1e-9)

    def test_alpha_out_of_range(self):
        with pytest.raises(DomainError):
            envelope_beta(GAUSSIAN, -0.1)

    def test_no_refinement(self):
        beta, _ = envelope_beta(GAUSSIAN, 0.3, OrderSearchConfig(refinement=0))
        refined, _ = envelope_beta(GAUSSIAN, 0.3)
        assert beta <= refined
        assert refined - beta < 1e-4


class TestEnvelopeCurve:

    def test_point_guarantee_matches_sample_curve(self):
        alphas = np.linspace(0, 1, 51)
        curve = envelope_curve(POINT, alphas)
        single = sample_curve(SingleOrderRegion(1.5, 0.75), alphas)
        np.testing.assert_allclose(curve.betas, single.betas, atol=1e-11)

    def test_dominates_searched_orders(self):
        alphas = np.linspace(0, 1, 41)
        curve = envelope_curve(GAUSSIAN, alphas)
        for tau in search_orders(GAUSSIAN)[::20]:
            single = sample_curve(SingleOrderRegion(tau, rho_at(GAUSSIAN, tau)), alphas)
            assert np.all(curve.betas >= single.betas - 1e-11)

    def test_tradeoff_invariants_and_symmetry(self):
        alphas = np.linspace(0, 1, 101)
        curve = envelope_curve(GAUSSIAN, alphas)
        assert curve.invariant_violations() == []

        inner = np.linspace(0.2, 0.8, 7)
        betas = envelope_curve(GAUSSIAN, inner).betas
        reflected = envelope_curve(GAUSSIAN, betas[::-1]).betas[::-1]
        np.testing.assert_allclose(reflected, inner, atol=1e-6)

    def test_active_order_recorded(self):
        curve = envelope_curve(GAUSSIAN, np.linspace(0, 1, 11))
        assert np.all(curve.tau_active >= 0.5)
        assert np.all(np.isfinite(curve.tau_active))

    def test_consistency_with_joint_region(self):
        grid = search_orders(GAUSSIAN)
        for alpha in (0.1, 0.3, 0.6):
            beta, _ = envelope_beta(GAUSSIAN, alpha)
            assert joint_contains(GAUSSIAN, ErrorPair(alpha, beta + 1e-6), grid)
            assert not joint_contains(GAUSSIAN, ErrorPair(alpha, beta - 1e-3), grid)


class TestJointContains:

    @pytest.mark.parametrize("profile", [GAUSSIAN, RR, POINT])
    def test_diagonal(self, profile):
        grid = search_orders(profile)
        assert joint_contains(profile, ErrorPair(0.3, 0.7), grid)

    def test_gaussian_rejects_zero_alpha(self):
        assert not joint_contains(GAUSSIAN, ErrorPair(0.0, 0.5), [2.0, 4.0])

    def test_randomized_response_operating_point(self):
        assert joint_contains(RR, ErrorPair(0.25, 0.25), search_orders(RR))

    def test_rejects_low_orders(self):
        with pytest.raises(DomainError):
            joint_contains(GAUSSIAN, ErrorPair(0.3, 0.7), [0.3])


class TestDeltaExtraction:

    def test_identity_curve(self):
        alphas = np.linspace(0, 1, 11)
        curve = TradeoffCurve(alphas=alphas, betas=1 - alphas, tau_active=np.full(11, np.nan))
        for eps in (0.0, 1.0, 5.0):
            assert delta_at(curve, eps) == 0.0

    def test_pure_dp_vertices(self):
        curve = _pure_dp_vertices()
        assert delta_at(curve, math.log(3)) == pytest.approx(0.0, abs=1e-12)
        assert delta_at(curve, 0.0) == pytest.approx(0.5, abs=1e-12)

    def test_negative_epsilon(self):
        with pytest.raises(DomainError):
            delta_at(_pure_dp_vertices(), -1.0)

    def test_epsilon_at_inverts_delta_at(self):
        curve = _pure_dp_vertices()
        assert epsilon_at(curve, 0.0) == pytest.approx(math.log(3), abs=1e-9)
        assert epsilon_at(curve, 0.5) == 0.0
        # delta(eps) = 0.75 - e^eps / 4 between 0 and ln 3
        assert epsilon_at(curve, 0.25) == pytest.approx(math.log(2), abs=1e-9)

    def test_epsilon_at_unreachable(self):
        curve = TradeoffCurve(alphas=[0.0, 1.0], betas=[0.5, 0.0], tau_active=[np.nan, np.nan])
        assert epsilon_at(curve, 0.1) == math.inf
        assert math.isfinite(epsilon_at(curve, 0.5))

    def test_table_matches_pointwise(self):
        curve = envelope_curve(GAUSSIAN, np.linspace(0, 1, 201))
        epsilons = np.linspace(0, 3, 31)
        table = delta_table(curve, epsilons)
        assert [pt.epsilon for pt in table] == pytest.approx(list(epsilons))
        for pt in table:
            assert pt.delta == pytest.approx(delta_at(curve, pt.epsilon), abs=1e-15)
        deltas = [pt.delta for pt in table]
        assert all(d2 <= d1 for d1, d2 in zip(deltas, deltas[1:]))
