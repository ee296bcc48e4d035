"""Transasymptotic approximations for the static and slowly varying logistic maps.

Modules
-------
maps
    Exact iteration, periodic orbits and multipliers.
static, omega, period4
    2- and 4-periodic resummed transseries of the static map.
weights
    Exponential weights and parameter-region classification.
dynamic
    Approximation of the slowly varying map and its onset weight.
harness
    Landmarks, error sweeps, reference overlays and figure data.
"""
import sys

from .dynamic import (
    action_A,
    b_dynamic,
    find_z0,
    onset_index,
    overline_sigma0,
    overline_tau0,
    r0_series,
    r10,
    r_app_dynamic,
    rm0_table,
    sigma0_dynamic,
)
from .harness import (
    emit_figure_data,
    error_sweep,
    import_reference_errors,
    landmarks,
    solve_K,
)
from .jets import Jet
from .maps import (
    Cycle,
    DynamicMapConfig,
    Orbit,
    StaticMapConfig,
    cycle_multiplier,
    find_cycle,
    iterate_dynamic,
    iterate_static,
    nonperiodic_fixed_point,
    two_cycle,
)
from .omega import omega_e0, omega_e1, omega_o0, omega_o1
from .period4 import (
    EtaParam,
    ThetaConstants,
    b_weight,
    f4,
    g4,
    r4_app,
    solve_sigma1,
    theta_constants,
    theta_leading,
)
from .static import leading_coeffs, r2_app, rbar_recursion, residual_2per, solve_sigma0
from .weights import classify_region, periodicity_of, profile_f4, profile_f8

__version__ = "0.1.0"

__all__ = [
    name
    for name, value in list(globals().items())
    if not name.startswith("_") and not isinstance(value, type(sys))
]
