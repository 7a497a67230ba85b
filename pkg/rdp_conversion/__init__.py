"""
rdp_conversion

Optimal conversion of a Rényi differential privacy profile tau -> rho(tau)
into an f-DP trade-off curve: the lower boundary of the intersection of
every single-order privacy region, plus (epsilon, delta) tables, Bernoulli
witnesses showing the curve cannot be improved, and a brute-force oracle.

Public API:
    envelope_curve(profile, alphas, cfg) -> TradeoffCurve
    envelope_beta(profile, alpha, cfg) -> (beta, Order)
    delta_at(curve, epsilon) / epsilon_at(curve, delta) / delta_table(curve, epsilons)
    boundary_beta(region, alpha) / sample_curve(region, alphas) / symmetric_point(region)
    renyi_divergence(a, b, tau)
    witness_at(profile, alpha0, cfg) -> BernoulliWitness, verify_witness(...)
    load_profile(source) / parse_profile(dict) -> RdpProfile

See agent_docs/conversion_cli.md for the command-line surface.
"""

from .types import (FORWARD, REVERSE, BOTH, NONE, Order, ErrorPair, SingleOrderRegion,
                    RegionBoundaryPoint, ApproxDpPoint, TradeoffCurve, OrderSearchConfig,
                    BernoulliWitness, ProfileValidationReport, WitnessReport, OracleReport)
from .config import CONFIG, get_param
from .errors import (ConversionError, DomainError, ProfileFormatError, ConfigError,
                     UnsupportedInputError, DegenerateWitnessError, OrientationError)
from .bernoulli_divergence import renyi_divergence, log_moment, kl_divergence, max_divergence
from .region import (contains, boundary_beta, boundary_point, symmetric_point,
                     sample_curve, binding_directions)
from .profile import (GaussianProfile, RandomizedResponseProfile, PointGuaranteeProfile,
                      TabulatedProfile, RdpProfile, rho_at, support_orders, validate_profile,
                      parse_profile, load_profile, profile_to_dict)
from .envelope import (envelope_beta, envelope_curve, search_orders, joint_contains,
                       delta_at, epsilon_at, delta_table)
from .mechanisms import (rr_epsilon, pure_dp_tradeoff, gaussian_tradeoff, GaussianMechanismRef,
                         SymmetricRR, AsymmetricRR, asymmetric_rr_errors, optimal_test_errors,
                         witness_at, witness_tradeoff, verify_witness)
from .oracle import grid_boundary_beta, grid_envelope_beta, grid_contains_low_order, cross_check
