"""Numerical laboratory for the semilinear generalized Tricomi equation.

The equation under study is

    u_tt - t^m Lap(u) = |u|^p,   t >= 0, x in R^n (n >= 3),

whose propagation speed t^(m/2) degenerates at t = 0.  The package computes
the closed-form exponent thresholds (critical / conformal / Strauss powers,
admissible weight windows), evolves linear and semilinear radial solutions in
n = 3 with a sine-spectral method built on the exact per-frequency multiplier
symbols, and empirically verifies the weighted Strichartz estimates and the
cusp-cone geometric inequalities that underlie them.

Module map
----------
exponents   : exact arithmetic for every closed-form exponent and window
geometry    : degenerate phase phi(t), characteristic weight, cone inequalities
symbols     : multiplier symbols V1/V2 by ODE, Kummer and Bessel routes
linear      : radial spectral solver, finite-difference oracle, decay fits
semilinear  : regularized nonlinearity, Duhamel time march, Picard iteration
strichartz  : fractional Sobolev norms, estimate ratio probes, dyadic tools
config/cli  : JSON configs, scenario runner, CSV/JSON-lines artifacts
"""

from .exponents import (
    ModelParams,
    ExponentReport,
    p_crit,
    p_conf,
    strauss_exponent,
    gamma_interval,
    gamma_window_formula,
    damped_wave_coeffs,
    q_bounds,
    strichartz_gamma_bound,
    yagdjian_ranges,
    exponent_report,
)
from .geometry import phi, phi_inverse, characteristic_weight, finite_speed_radius

__all__ = [
    "ModelParams",
    "ExponentReport",
    "p_crit",
    "p_conf",
    "strauss_exponent",
    "gamma_interval",
    "gamma_window_formula",
    "damped_wave_coeffs",
    "q_bounds",
    "strichartz_gamma_bound",
    "yagdjian_ranges",
    "exponent_report",
    "phi",
    "phi_inverse",
    "characteristic_weight",
    "finite_speed_radius",
]

__version__ = "0.1.0"
