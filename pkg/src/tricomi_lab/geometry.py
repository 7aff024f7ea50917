"""Degenerate phase, characteristic weight, and cusp-cone geometry checks.

The phase phi(t) = (2/(m+2)) t^((m+2)/2) is the distance traveled by
characteristics from time 0 to t; the forward "cusp cone" {|x| < phi(t)}
replaces the light cone of the classical wave equation.  The weighted
space-time estimates all use the characteristic weight

    (phi(t) + M)^2 - |x|^2,

positive on the support region |x| <= phi(t) + M - 1 of solutions with data
in B(0, M-1).

The verification routines sample, over log-spaced desk-scale grids, the two
geometric inequalities that let a shifted cone's own weight phi(t)^2 -
|x - nu|^2 be compared with the centered characteristic weight:

* unshifted:  phi(t)^2 >= (1-delta)|x|^2 + delta (phi(t)+M)^2  on the cone
  {t >= T0/2, |x| <= phi(t) - phi(T0/4)} for small delta > 0;
* shifted:    two-sided ratio bounds 0 < c <= (phi^2 - |x-nu|^2) /
  ((phi+M)^2 - |x|^2) <= C on the shifted cone, up to the maximal shift
  |nu| = M - 1 + phi(3 T0/8).

Sampling in place of symbolic proof is deliberate: both sides grow like
phi(t)^2, so large t is the easy regime and a log grid up to t = 10^3
exercises the binding small-t corner.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "WeightSpec",
    "ConeCheck",
    "ShiftedConeBounds",
    "phi",
    "phi_inverse",
    "characteristic_weight",
    "finite_speed_radius",
    "max_shift",
    "verify_unshifted_cone_inequality",
    "bisect_max_delta",
    "verify_shifted_cone_bounds",
]

T_HI_DEFAULT = 1.0e3


@dataclass(frozen=True)
class WeightSpec:
    """Characteristic-weight norm spec: weight power gamma, exponent q, radius M."""

    gamma: float
    q: float
    M: float

    def __post_init__(self):
        if self.gamma < 0:
            raise ParameterError(f"gamma >= 0 required, got {self.gamma}")
        if not self.q > 1:
            raise ParameterError(f"q > 1 required, got {self.q}")
        if not self.M > 1:
            raise ParameterError(f"M > 1 required, got {self.M}")


def phi(m: int, t):
    """Degenerate phase (2/(m+2)) t^((m+2)/2); vectorized in t."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ParameterError("t >= 0 required")
    out = 2.0 / (m + 2.0) * t ** ((m + 2.0) / 2.0)
    return out if out.ndim else float(out)


def phi_inverse(m: int, s):
    """Inverse phase ((m+2) s / 2)^(2/(m+2)); round-trips with phi."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ParameterError("s >= 0 required")
    out = ((m + 2.0) * s / 2.0) ** (2.0 / (m + 2.0))
    return out if out.ndim else float(out)


def characteristic_weight(m: int, M: float, t, r):
    """(phi(t) + M)^2 - r^2, unclamped.

    Callers that integrate only over r <= phi(t) + M - 1 never see negative
    values; anyone else decides about clamping themselves.
    """
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    out = (phi(m, t) + M) ** 2 - r * r
    return out if out.ndim else float(out)


def finite_speed_radius(m: int, M: float, t) -> float:
    """Maximal support radius phi(t) + M - 1 of solutions with data in B(0, M-1)."""
    return phi(m, t) + M - 1.0


def max_shift(m: int, M: float, T0: float) -> float:
    """Largest cone shift M - 1 + phi(3 T0 / 8) used by the covering argument."""
    return M - 1.0 + phi(m, 3.0 * T0 / 8.0)


def _cone_samples(m, T0, t_lo, t_hi, n_t, n_r, rng=None):
    """Log-spaced t samples and per-t radial fractions on {r <= phi(t) - phi(T0/4)}."""
    ts = np.geomspace(max(t_lo, 1e-12), t_hi, n_t)
    r_top = np.maximum(phi(m, ts) - phi(m, T0 / 4.0), 0.0)
    if rng is None:
        frac = np.linspace(0.0, 1.0, n_r)
        rr = np.outer(r_top, frac)
    else:
        rr = r_top[:, None] * rng.random((ts.size, n_r))
    return ts, rr


@dataclass(frozen=True)
class ConeCheck:
    holds: bool
    worst_margin: float


def verify_unshifted_cone_inequality(
    m: int,
    M: float,
    T0: float,
    delta: float,
    t_hi: float = T_HI_DEFAULT,
    n_t: int = 200,
    n_r: int = 50,
) -> ConeCheck:
    """Sample phi(t)^2 - (1-delta)r^2 - delta(phi(t)+M)^2 >= 0 over the cone.

    Samples t log-spaced on [T0/4, t_hi] and r on [0, phi(t) - phi(T0/4)].
    Returns whether the inequality held everywhere and the minimum slack.
    """
    if not (0.0 <= delta < 1.0):
        raise ParameterError(f"delta in [0, 1) required, got {delta}")
    if not (0.0 < T0 < 1.0):
        raise ParameterError(f"T0 in (0, 1) required, got {T0}")
    if not M > 1.0:
        raise ParameterError(f"M > 1 required, got {M}")
    ts, rr = _cone_samples(m, T0, T0 / 4.0, t_hi, n_t, n_r)
    ph = phi(m, ts)[:, None]
    slack = ph**2 - (1.0 - delta) * rr**2 - delta * (ph + M) ** 2
    worst = float(slack.min())
    return ConeCheck(holds=worst >= 0.0, worst_margin=worst)


def bisect_max_delta(
    m: int,
    M: float,
    T0: float,
    tol: float = 1e-6,
    t_hi: float = T_HI_DEFAULT,
) -> float:
    """Largest delta in (0, 1) for which the unshifted cone inequality holds.

    Plain bisection to absolute tolerance ``tol``; the inequality is monotone
    in delta (the delta-terms enter linearly with fixed signs), so bisection
    on the sampled margin is sound.
    """
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if verify_unshifted_cone_inequality(m, M, T0, mid, t_hi=t_hi).holds:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class ShiftedConeBounds:
    """Empirical two-sided bounds on (phi^2 - |x-nu|^2) / ((phi+M)^2 - |x|^2)."""

    c_lower: float
    C_upper: float


def verify_shifted_cone_bounds(
    m: int,
    M: float,
    T0: float,
    nu: float,
    t_hi: float = T_HI_DEFAULT,
    n_t: int = 120,
    n_r: int = 40,
    n_angle: int = 12,
    rng: np.random.Generator | None = None,
) -> ShiftedConeBounds:
    """Sample the shifted-cone/centered-weight ratio over the shifted cone.

    Points are x = nu e1 + rho omega with rho <= phi(t) - phi(T0/4) and
    omega ranging over the axis-aligned worst case (angle 0 and pi) plus a
    fan of intermediate angles; optional random samples refine the fan.
    Asserts nothing; returns the sampled min and max of the ratio.
    """
    if not (0.0 < T0 < 1.0):
        raise ParameterError(f"T0 in (0, 1) required, got {T0}")
    nu_max = max_shift(m, M, T0)
    if not (0.0 <= nu <= nu_max):
        raise ParameterError(f"nu out of range: need 0 <= nu <= {nu_max:.6f}, got {nu}")
    ts, rr = _cone_samples(m, T0, T0 / 2.0, t_hi, n_t, n_r, rng=rng)
    ph = phi(m, ts)[:, None, None]
    rho = rr[:, :, None]
    # worst-case axis alignment is included as theta = 0, pi
    theta = np.linspace(0.0, np.pi, n_angle)[None, None, :]
    x_sq = nu * nu + rho**2 + 2.0 * nu * rho * np.cos(theta)
    num = ph**2 - rho**2
    den = (ph + M) ** 2 - x_sq
    ratio = num / den
    if np.any(den <= 0.0):
        raise ParameterError("sampled point escaped the weight's positivity region")
    c_lower = float(ratio.min())
    C_upper = float(ratio.max())
    assert 0.0 < c_lower <= C_upper < np.inf
    return ShiftedConeBounds(c_lower=c_lower, C_upper=C_upper)
