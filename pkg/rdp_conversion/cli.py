"""
cli.py

Command-line surface: emits curve data, conversion tables and verification
reports as CSV / JSON for downstream plotting. Status lines go to stderr so
stdout (or --output) holds only the artifact.

Usage:
    python -m rdp_conversion tradeoff --profile '{"type": "gaussian", "sigma": 1.0}'
    python -m rdp_conversion region --tau 1.5 --rho 0.75
    python -m rdp_conversion delta --profile-file profile.json --epsilon-max 4
    python -m rdp_conversion witness --profile '{"type": "rr", "p": 0.75}' --alpha0 0.25
    python -m rdp_conversion compare-gaussian --sigma 1.0
    python -m rdp_conversion verify --profile '{"type": "point", "tau": 1.5, "rho": 0.75}'

Exit codes: 0 success, 1 domain / config / profile error, 2 verification failure.
"""

import argparse
import dataclasses
import json
import math
import sys

import numpy as np
import pandas as pd

from .config import get_param
from .envelope import delta_table, envelope_curve, search_orders
from .errors import ConversionError, DomainError, ProfileFormatError
from .mechanisms import GaussianMechanismRef, verify_witness, witness_at
from .oracle import cross_check
from .profile import RdpProfile, load_profile, profile_to_dict
from .region import sample_curve, symmetric_point
from .types import OrderSearchConfig, SingleOrderRegion

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2


def _log(message: str = '') -> None:
    print(message, file=sys.stderr)


def _banner(title: str) -> None:
    _log("=" * 60)
    _log(title)
    _log("=" * 60)


# ==========================================
# ARGUMENT HELPERS
# ==========================================

def _profile_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_mutually_exclusive_group(required=True)
    group.add_argument('--profile', metavar='JSON',
                       help='Inline profile JSON, e.g. \'{"type": "rr", "p": 0.75}\'')
    group.add_argument('--profile-file', metavar='PATH',
                       help='Path to a profile JSON file')
    return parent


def _search_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--tau-min', type=float, help='Smallest searched order (default 0.5)')
    parent.add_argument('--tau-max', type=float, help='Largest finite searched order (default 256)')
    parent.add_argument('--coarse-grid-size', type=int, help='Log-spaced coarse orders (default 200)')
    parent.add_argument('--refinement', type=int, help='Golden-section iterations (default 80)')
    inf_group = parent.add_mutually_exclusive_group()
    inf_group.add_argument('--include-infinite-order', dest='include_infinite_order',
                           action='store_const', const=True, default=None,
                           help='Always search tau = inf')
    inf_group.add_argument('--exclude-infinite-order', dest='include_infinite_order',
                           action='store_const', const=False,
                           help='Never search tau = inf (unless it is a support order)')
    return parent


def _output_parent(tabular: bool = True) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    if tabular:
        parent.add_argument('--format', choices=['csv', 'json'], default='csv',
                            help='Output format (default csv)')
    parent.add_argument('--output', metavar='PATH', help='Write here instead of stdout')
    return parent


def _alpha_parent(default: int) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--alpha-count', type=int, default=default,
                        help=f'Uniform alpha grid size on [0, 1] (default {default})')
    return parent


def _search_config(args) -> OrderSearchConfig:
    """Defaults from CONFIG with the CLI overrides applied."""
    overrides = {
        'tau_min': args.tau_min,
        'tau_max': args.tau_max,
        'coarse_grid_size': args.coarse_grid_size,
        'refinement': args.refinement,
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if args.include_infinite_order is not None:
        overrides['include_infinite_order'] = args.include_infinite_order
    return dataclasses.replace(OrderSearchConfig.from_config(), **overrides)


def _alpha_grid(count: int) -> np.ndarray:
    if count < 2:
        raise DomainError(f"--alpha-count must be >= 2, got {count}")
    return np.linspace(0.0, 1.0, count)


def _read_profile(args) -> RdpProfile:
    if args.profile is not None:
        if not args.profile.strip().startswith('{'):
            raise ProfileFormatError("--profile expects a JSON object; use --profile-file for paths")
        return load_profile(args.profile)
    return load_profile(args.profile_file)


def _describe_search(cfg: OrderSearchConfig) -> str:
    inf = {None: 'auto', True: 'on', False: 'off'}[cfg.include_infinite_order]
    return (f"tau-search {cfg.tau_min:g}..{cfg.tau_max:g} "
            f"({cfg.coarse_grid_size} coarse, {cfg.refinement} golden, inf {inf})")


# ==========================================
# OUTPUT
# ==========================================

def _json_value(value):
    """Standard-JSON view: numpy scalars to Python, +-inf as strings."""
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        if math.isnan(value):
            return None
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _write(text: str, output: str = None) -> None:
    if output:
        with open(output, 'w', newline='') as f:
            f.write(text)
        _log(f"[OUTPUT] Written to {output}")
    else:
        sys.stdout.write(text)


def _emit_frame(df: pd.DataFrame, args) -> None:
    if args.format == 'json':
        # shortest round-trip repr: same doubles as the %.17g CSV text
        text = json.dumps(_json_value(df.to_dict(orient='records')), indent=2) + '\n'
    else:
        text = df.to_csv(index=False,
                         float_format=get_param('FLOAT_FORMAT'),
                         lineterminator=get_param('LINE_TERMINATOR'))
    _write(text, args.output)


def _emit_document(doc: dict, args) -> None:
    _write(json.dumps(_json_value(doc), indent=2) + '\n', args.output)


# ==========================================
# SUBCOMMANDS
# ==========================================

def _run_tradeoff(args) -> int:
    profile = _read_profile(args)
    cfg = _search_config(args)
    alphas = _alpha_grid(args.alpha_count)

    _banner("RDP → TRADE-OFF ENVELOPE")
    _log(f"[TRADEOFF] {len(alphas)} samples, {_describe_search(cfg)}")
    curve = envelope_curve(profile, alphas, cfg)
    for problem in curve.invariant_violations():
        _log(f"  WARN: {problem}")

    _emit_frame(curve.to_frame(), args)
    return EXIT_OK


def _run_region(args) -> int:
    region = SingleOrderRegion(tau=args.tau, rho=args.rho)
    alphas = _alpha_grid(args.alpha_count)

    _banner("SINGLE-ORDER REGION BOUNDARY")
    if math.isfinite(region.rho):
        p_star = symmetric_point(region)
        # put the diagonal crossing on the grid
        alphas = np.union1d(alphas, [1.0 - p_star])
        _log(f"[REGION] tau={region.tau:g}, rho={region.rho:g}, "
             f"symmetric point p*={p_star:.12g} (crossing at alpha={1.0 - p_star:.12g})")
    else:
        _log(f"[REGION] tau={region.tau:g}, rho=inf: unconstrained")

    curve = sample_curve(region, alphas)
    _emit_frame(curve.to_frame(include_binding=True), args)
    return EXIT_OK


def _run_delta(args) -> int:
    profile = _read_profile(args)
    cfg = _search_config(args)
    if not (args.epsilon_step > 0 and args.epsilon_max >= 0):
        raise DomainError("need --epsilon-step > 0 and --epsilon-max >= 0")

    count = args.alpha_count
    min_samples = get_param('DELTA_MIN_SAMPLES')
    if count < min_samples:
        _log(f"[DELTA] alpha grid raised from {count} to {min_samples} samples")
        count = min_samples
    alphas = _alpha_grid(count)
    steps = int(round(args.epsilon_max / args.epsilon_step))
    epsilons = np.linspace(0.0, steps * args.epsilon_step, steps + 1)

    _banner("RDP → (EPSILON, DELTA)")
    _log(f"[DELTA] {len(epsilons)} epsilons over {len(alphas)} samples, {_describe_search(cfg)}")
    curve = envelope_curve(profile, alphas, cfg)
    table = delta_table(curve, epsilons)

    df = pd.DataFrame({'epsilon': [pt.epsilon for pt in table],
                       'delta': [pt.delta for pt in table]})
    _emit_frame(df, args)
    return EXIT_OK


def _run_witness(args) -> int:
    profile = _read_profile(args)
    cfg = _search_config(args)

    _banner("WITNESS MECHANISM")
    witness = witness_at(profile, args.alpha0, cfg)
    grid = search_orders(profile, dataclasses.replace(cfg, coarse_grid_size=args.tau_grid_size))
    report = verify_witness(witness, profile, grid)

    op = witness.operating_point
    _log(f"[WITNESS] P=Bern({witness.a:.12g}), Q=Bern({witness.b:.12g}), "
         f"operating point ({op.alpha:.12g}, {op.beta:.12g})")
    _log(f"[WITNESS] {len(grid)} orders checked, {len(report.violations)} violations")
    for v in report.violations[:10]:
        _log(f"  WARN: {v}")

    _emit_document({
        'profile': profile_to_dict(profile),
        'witness': {'a': witness.a, 'b': witness.b},
        'operating_point': {'alpha': op.alpha, 'beta': op.beta},
        'tau_grid_size': len(grid),
        'min_forward_margin': report.min_forward_margin,
        'min_reverse_margin': report.min_reverse_margin,
        'violations': report.violations,
        'passed': report.passed,
    }, args)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _run_compare_gaussian(args) -> int:
    ref = GaussianMechanismRef(sigma=args.sigma)
    cfg = _search_config(args)
    alphas = _alpha_grid(args.alpha_count)

    _banner("RDP ENVELOPE VS EXACT GAUSSIAN TRADE-OFF")
    _log(f"[GAUSSIAN] sigma={ref.sigma:g}, {len(alphas)} samples, {_describe_search(cfg)}")
    curve = envelope_curve(ref.profile(), alphas, cfg)
    exact = ref.tradeoff(alphas)
    gap = exact - curve.betas

    df = pd.DataFrame({'alpha': alphas, 'envelope_beta': curve.betas,
                       'gaussian_tradeoff': exact, 'gap': gap})
    _log(f"[GAUSSIAN] gap range [{gap.min():.3g}, {gap.max():.3g}]")
    _emit_frame(df, args)

    if gap.min() < -get_param('WITNESS_TOL'):
        _log("[ABORT] envelope exceeds the exact Gaussian trade-off")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _run_verify(args) -> int:
    profile = _read_profile(args)
    cfg = _search_config(args)
    alphas = _alpha_grid(args.alpha_count)
    grid = search_orders(profile, dataclasses.replace(cfg, coarse_grid_size=args.tau_grid_size))

    _banner("ORACLE CROSS-CHECK")
    _log(f"[VERIFY] {len(alphas)} alphas x {len(grid)} orders, grid n={args.oracle_n}")
    report = cross_check(profile, alphas, grid, args.oracle_n, cfg)
    worst = max(report.max_boundary_deviation.values(), default=0.0)
    _log(f"[VERIFY] max |envelope - oracle| = {report.max_envelope_deviation:.3g}")
    _log(f"[VERIFY] max |boundary - oracle| = {worst:.3g} (tolerance {report.tolerance:.3g})")
    for failure in report.failures:
        _log(f"  FAIL: {failure}")

    _emit_document({
        'profile': profile_to_dict(profile),
        'grid_n': report.grid_n,
        'tolerance': report.tolerance,
        'max_envelope_deviation': report.max_envelope_deviation,
        'max_boundary_deviation': {repr(t): d for t, d in report.max_boundary_deviation.items()},
        'failures': report.failures,
        'passed': report.passed,
    }, args)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='rdp_conversion',
        description='Optimal conversion of Rényi DP profiles to trade-off curves',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    profile, search = _profile_parent(), _search_parent()
    table_out, doc_out = _output_parent(), _output_parent(tabular=False)
    alpha_count = get_param('ALPHA_COUNT')

    p = sub.add_parser('tradeoff', help='Envelope trade-off curve (alpha, beta, tau_active)',
                       parents=[profile, search, _alpha_parent(alpha_count), table_out])
    p.set_defaults(handler=_run_tradeoff)

    p = sub.add_parser('region', help='Single-order boundary (alpha, beta, binding_direction)',
                       parents=[_alpha_parent(alpha_count), table_out])
    p.add_argument('--tau', type=float, required=True, help='Rényi order (>= 0.5, inf allowed)')
    p.add_argument('--rho', type=float, required=True, help='Budget at that order')
    p.set_defaults(handler=_run_region)

    p = sub.add_parser('delta', help='(epsilon, delta) table of the envelope',
                       parents=[profile, search, _alpha_parent(alpha_count), table_out])
    p.add_argument('--epsilon-max', type=float, default=get_param('EPSILON_MAX'))
    p.add_argument('--epsilon-step', type=float, default=get_param('EPSILON_STEP'))
    p.set_defaults(handler=_run_delta)

    p = sub.add_parser('witness', help='Bernoulli witness at alpha0 plus its verification',
                       parents=[profile, search, doc_out])
    p.add_argument('--alpha0', type=float, required=True)
    p.add_argument('--tau-grid-size', type=int, default=get_param('WITNESS_TAU_GRID_SIZE'),
                   help='Coarse orders in the verification grid')
    p.set_defaults(handler=_run_witness)

    p = sub.add_parser('compare-gaussian', help='Envelope vs exact Gaussian trade-off',
                       parents=[search, _alpha_parent(alpha_count), table_out])
    p.add_argument('--sigma', type=float, required=True)
    p.set_defaults(handler=_run_compare_gaussian)

    p = sub.add_parser('verify', help='Cross-check solvers against the grid oracle',
                       parents=[profile, search, _alpha_parent(get_param('VERIFY_ALPHA_COUNT')), doc_out])
    p.add_argument('--oracle-n', type=int, default=get_param('ORACLE_GRID_N'))
    p.add_argument('--tau-grid-size', type=int, default=get_param('VERIFY_TAU_GRID_SIZE'))
    p.set_defaults(handler=_run_verify)

    return parser


def main(argv: list[str] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConversionError as e:
        _log(f"[ERROR] {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
