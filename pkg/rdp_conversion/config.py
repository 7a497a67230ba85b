"""
config.py

Configuration defaults for the RDP-to-trade-off conversion engine.
All tolerances, search defaults and output settings live here so that
nothing numeric is hardcoded in the solver modules.
"""

CONFIG = {
    # ═══════════════════════════════════════
    # DIVERGENCE KERNELS
    # ═══════════════════════════════════════
    "MIN_ORDER": 0.5,                  # smallest public Rényi order
    "KL_BAND": 1e-9,                   # |tau - 1| below this → KL formula

    # ═══════════════════════════════════════
    # REGION BOUNDARY (bisection on the β-slice)
    # ═══════════════════════════════════════
    "BISECTION_TOL": 1e-12,            # absolute, on β
    "BISECTION_MAX_ITER": 200,
    "MEMBERSHIP_SLACK": 1e-12,         # divergence units, absorbs rounding at the boundary
    "BINDING_TOL": 1e-9,               # |D - rho| below this → constraint binds
    "SYMMETRIC_POINT_TOL": 1e-13,      # xtol handed to scipy.optimize.bisect

    # ═══════════════════════════════════════
    # ORDER SEARCH (sup over tau)
    # ═══════════════════════════════════════
    "TAU_MIN": 0.5,
    "TAU_MAX": 256.0,
    "COARSE_GRID_SIZE": 200,           # log-spaced
    "GOLDEN_ITERATIONS": 80,
    "GOLDEN_LOG_TAU_TOL": 1e-10,       # stop refining once the log-tau bracket is this narrow
    "INCLUDE_INFINITE_ORDER": None,    # None → include whenever rho(∞) is finite

    # ═══════════════════════════════════════
    # GRIDS
    # ═══════════════════════════════════════
    "ALPHA_COUNT": 1001,
    "EPSILON_MAX": 8.0,
    "EPSILON_STEP": 0.01,
    "DELTA_MIN_SAMPLES": 2048,         # curves used for δ extraction should be at least this dense
    "EPSILON_BISECTION_ITER": 200,

    # ═══════════════════════════════════════
    # ORACLE / VERIFICATION
    # ═══════════════════════════════════════
    "ORACLE_GRID_N": 4096,
    "VERIFY_TAU_GRID_SIZE": 64,
    "VERIFY_ALPHA_COUNT": 101,         # the oracle scans every alpha x order x grid point
    "WITNESS_TAU_GRID_SIZE": 200,
    "WITNESS_TOL": 1e-9,               # divergence slack when verifying witnesses
    "SEARCH_SLACK": 1e-6,              # allowance for the sup over a finite tau set

    # ═══════════════════════════════════════
    # OUTPUT
    # ═══════════════════════════════════════
    "FLOAT_FORMAT": "%.17g",
    "LINE_TERMINATOR": "\n",
}


def get_param(param_name: str, config: dict = None) -> object:
    """Get a parameter value, falling back to CONFIG for missing keys.

    Args:
        param_name: The parameter name (e.g. 'BISECTION_TOL').
        config: Optional (possibly partial) config dict override.

    Returns:
        The parameter value.
    """
    if config and param_name in config:
        return config[param_name]
    return CONFIG[param_name]
