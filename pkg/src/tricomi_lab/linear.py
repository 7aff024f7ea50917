"""Radial spectral solver for v_tt - t^m Lap(v) = 0 in n = 3, with oracles.

``solve_linear`` evolves each sine coefficient of w = r v exactly by the
multiplier symbols (V1 for the data, V2 for the velocity); there is no time
stepping and no stability constraint, so snapshots at arbitrary times cost
one transform each.

``fd_oracle`` is the independent verification path: a method-of-lines
leapfrog on w_tt = t^m w_rr with the degeneracy-aware Taylor start and a
time step bounded by the final wave speed t_final^(m/2).  It is second
order by construction; acceptance comparisons run it on a refined grid.

``decay_slope`` fits the sup-norm decay exponent against log phi(t) (the
proved rate is -(n-1)/2 - m/(2(m+2))), and ``weighted_field_norm``
evaluates the characteristic-weight space-time norm used throughout the
estimate probes.
"""

from __future__ import annotations

import numpy as np

from .errors import GridError, InstabilityError, ParameterError
from .exponents import ModelParams
from .geometry import WeightSpec, finite_speed_radius, phi
from .grids import RadialGrid, SpaceTimeField, SpectralField, check_support, origin_value
from .symbols import symbol_matrix

__all__ = [
    "solve_linear",
    "fd_oracle",
    "decay_slope",
    "weighted_field_norm",
]


def solve_linear(
    params: ModelParams,
    f,
    g,
    times,
    grid: RadialGrid,
    enforce_support: bool = True,
) -> SpaceTimeField:
    """Homogeneous radial solution at the requested times.

    ``f`` and ``g`` are callables sampling the data u(0, r) and u_t(0, r).
    Coefficients evolve as c_k(t) = V1(t, lambda_k) f_k + V2(t, lambda_k) g_k.
    """
    times = np.asarray(times, dtype=float)
    grid.validate_horizon(params.m, params.M, float(times.max()))
    r = grid.r
    f_s, g_s = f(r), g(r)
    if enforce_support:
        check_support(f_s, r, params.M - 1.0)
        check_support(g_s, r, params.M - 1.0)
    fh = SpectralField.from_radial(grid, f_s).coeffs
    gh = SpectralField.from_radial(grid, g_s).coeffs
    snaps = np.empty((times.size, grid.N + 1))
    for i, t in enumerate(times):
        v1, v2, _, _ = symbol_matrix(params.m, float(t), grid.lam)
        snaps[i] = SpectralField(grid, v1 * fh + v2 * gh).to_radial()
    return SpaceTimeField(times=times, grid=grid, u=snaps, m=params.m, M=params.M)


def fd_oracle(
    params: ModelParams,
    f,
    g,
    times,
    grid: RadialGrid,
    cfl: float = 0.4,
    enforce_support: bool = True,
) -> SpaceTimeField:
    """Leapfrog finite-difference solution, snapshots snapped to step times.

    dt = cfl * h / t_final^(m/2) (the wave speed t^(m/2) peaks at the end of
    the run).  The first step is a Taylor start consistent with the
    degenerate coefficient: w_tt(0) = 0, and the first nonzero correction is
    the t^(m+2)/((m+1)(m+2)) * lambda^2-type term, supplied for m = 1, 2.
    Returned snapshot times are the nearest step multiples of the requested
    ones.
    """
    times = np.asarray(times, dtype=float)
    t_final = float(times.max())
    grid.validate_horizon(params.m, params.M, t_final)
    m = params.m
    h = grid.h
    r = grid.r
    f_s, g_s = f(r), g(r)
    if enforce_support:
        check_support(f_s, r, params.M - 1.0)
        check_support(g_s, r, params.M - 1.0)
    dt = cfl * h / max(t_final, 1.0) ** (m / 2.0)
    nsteps = int(np.ceil(t_final / dt))
    dt = t_final / nsteps
    snap_steps = sorted(set(int(round(t / dt)) for t in times))
    if snap_steps[0] <= 0:
        raise ParameterError("requested times must be positive")

    w_prev = r * f_s
    lap = np.zeros_like(w_prev)
    lap[1:-1] = (w_prev[2:] - 2.0 * w_prev[1:-1] + w_prev[:-2]) / (h * h)
    w_cur = w_prev + dt * (r * g_s)
    if m == 1:
        w_cur += dt**3 / 6.0 * lap
    elif m == 2:
        w_cur += dt**4 / 12.0 * lap
    w_cur[0] = w_cur[-1] = 0.0

    ref_norm = float(np.sqrt(np.sum(w_cur**2)))
    out_times, out_snaps = [], []
    step = 1
    last = snap_steps[-1]
    while step <= last:
        if step in snap_steps:
            u = np.empty(grid.N + 1)
            u[1:-1] = w_cur[1:-1] / r[1:-1]
            u[0] = origin_value(w_cur[1:5], h)
            u[-1] = 0.0
            out_times.append(step * dt)
            out_snaps.append(u)
        t = step * dt
        lap[1:-1] = (w_cur[2:] - 2.0 * w_cur[1:-1] + w_cur[:-2]) / (h * h)
        w_next = 2.0 * w_cur - w_prev + dt * dt * t**m * lap
        w_next[0] = w_next[-1] = 0.0
        w_prev, w_cur = w_cur, w_next
        step += 1
        if step % 256 == 0:
            cur = float(np.sqrt(np.sum(w_cur**2)))
            if cur > 10.0 * max(ref_norm, 1e-300):
                raise InstabilityError(
                    f"leapfrog norm grew {cur / ref_norm:.1f}x by t={t:.3f}; CFL violated?"
                )
            ref_norm = max(ref_norm, cur)
    return SpaceTimeField(
        times=np.asarray(out_times),
        grid=grid,
        u=np.asarray(out_snaps),
        m=m,
        M=params.M,
    )


def decay_slope(field: SpaceTimeField, t_window: tuple[float, float]) -> float:
    """Least-squares slope of log sup_r |u(t, .)| against log phi(t) in the window.

    Requires at least 8 snapshots inside the window and phi(t_lo) >= 10 M so
    the fit sees the asymptotic regime rather than the data-dominated one.
    """
    t_lo, t_hi = t_window
    if phi(field.m, t_lo) < 10.0 * field.M:
        raise ParameterError(
            f"window starts too early: phi(t_lo)={phi(field.m, t_lo):.2f} < 10M={10 * field.M:.2f}"
        )
    mask = (field.times >= t_lo) & (field.times <= t_hi)
    if mask.sum() < 8:
        raise ParameterError(f"need >= 8 snapshots in window, have {int(mask.sum())}")
    sup = field.sup_norms()[mask]
    ph = phi(field.m, field.times[mask])
    if np.any(sup <= 0):
        return 0.0
    slope, _ = np.polyfit(np.log(ph), np.log(sup), 1)
    return float(slope)


def weighted_field_norm(field: SpaceTimeField, spec: WeightSpec) -> float:
    """(int int ((phi+M)^2 - r^2)^(gamma q) |u|^q 4 pi r^2 dr dt)^(1/q).

    The radial integral runs only over r <= phi(t) + M - 1, where the weight
    is positive by construction; trapezoid in both variables, fixed
    summation order.
    """
    if spec.q < 1.0:
        raise ParameterError("q >= 1 required")
    r = field.grid.r
    per_t = np.empty(field.times.size)
    for i, t in enumerate(field.times):
        edge = finite_speed_radius(field.m, spec.M, float(t))
        mask = r <= edge
        rr = r[mask]
        weight = (phi(field.m, float(t)) + spec.M) ** 2 - rr * rr
        integrand = weight ** (spec.gamma * spec.q) * np.abs(field.u[i, mask]) ** spec.q * rr * rr
        per_t[i] = 4.0 * np.pi * np.trapezoid(integrand, rr)
    total = np.trapezoid(per_t, field.times)
    return float(total ** (1.0 / spec.q))
