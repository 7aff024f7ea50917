"""Radial grids, the sine-spectral reduction, and space-time field containers.

In n = 3 the substitution w = r u turns the radial Laplacian into a plain
second derivative: u_tt - t^m (u_rr + (2/r) u_r) = S becomes
w_tt - t^m w_rr = r S with w(t, 0) = 0.  On [0, r_max] with a Dirichlet
condition at the outer wall (causally invisible as long as the support never
reaches it) the sine modes sin(lambda_k r), lambda_k = k pi / r_max,
diagonalize the spatial operator exactly, so each coefficient evolves under
the scalar mode ODE handled by :mod:`tricomi_lab.symbols`.

The sine transform is a direct matrix product by default for N <= 4096
(bit-reproducible regardless of FFT backends) and a fast DST-I beyond.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.fft import dst as _dst

from .errors import GridError, ParameterError, SupportError
from .geometry import finite_speed_radius, phi

__all__ = ["RadialGrid", "SpectralField", "SpaceTimeField", "origin_value"]

DIRECT_TRANSFORM_MAX_N = 4096


@lru_cache(maxsize=2)
def _sine_matrix(N: int) -> np.ndarray:
    j = np.arange(1, N)
    return np.sin(np.pi * np.outer(j, j) / N)


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid on [0, r_max] with N intervals (nodes 0..N); n_dim = 3."""

    r_max: float
    N: int
    transform: str = "auto"  # "direct" | "fft" | "auto"

    def __post_init__(self):
        if self.r_max <= 0 or self.N < 8:
            raise GridError(f"need r_max > 0 and N >= 8, got {self.r_max}, {self.N}")
        if self.transform not in ("direct", "fft", "auto"):
            raise GridError(f"unknown transform {self.transform!r}")

    @property
    def h(self) -> float:
        return self.r_max / self.N

    @property
    def r(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.h

    @property
    def lam(self) -> np.ndarray:
        """Mode frequencies lambda_k = k pi / r_max, k = 1..N-1."""
        return np.arange(1, self.N) * np.pi / self.r_max

    def _use_direct(self) -> bool:
        if self.transform == "direct":
            return True
        if self.transform == "fft":
            return False
        return self.N <= DIRECT_TRANSFORM_MAX_N

    def forward(self, w_interior: np.ndarray) -> np.ndarray:
        """Sine coefficients c with w_j = sum_k c_k sin(pi j k / N)."""
        if self._use_direct():
            return _sine_matrix(self.N) @ w_interior * (2.0 / self.N)
        return _dst(w_interior, type=1) / self.N

    def inverse(self, coeffs: np.ndarray) -> np.ndarray:
        """Interior samples w_j from sine coefficients."""
        if self._use_direct():
            return _sine_matrix(self.N) @ coeffs
        return _dst(coeffs, type=1) / 2.0

    def validate_horizon(self, m: int, M: float, t_final: float) -> None:
        """Outer wall must stay causally invisible: r_max > phi(t)+M-1+2h."""
        needed = finite_speed_radius(m, M, t_final) + 2.0 * self.h
        if self.r_max <= needed:
            raise GridError(
                f"r_max={self.r_max} too small for t_final={t_final}: "
                f"support radius + 2h = {needed:.3f}"
            )


def origin_value(w_interior: np.ndarray, h: float) -> float:
    """lim_{r->0} w/r = w'(0) by a 4th-order one-sided stencil (w(0) = 0)."""
    w1, w2, w3, w4 = w_interior[0], w_interior[1], w_interior[2], w_interior[3]
    return float((48.0 * w1 - 36.0 * w2 + 16.0 * w3 - 3.0 * w4) / (12.0 * h))


@dataclass(frozen=True)
class SpectralField:
    """Sine-coefficient representation of w = r u at one instant."""

    grid: RadialGrid
    coeffs: np.ndarray

    @classmethod
    def from_radial(cls, grid: RadialGrid, u: np.ndarray) -> "SpectralField":
        if u.shape != (grid.N + 1,):
            raise GridError(f"expected {grid.N + 1} samples, got {u.shape}")
        w = (grid.r * u)[1 : grid.N]
        return cls(grid=grid, coeffs=grid.forward(w))

    def to_radial(self) -> np.ndarray:
        """Radial samples of u = w/r on all nodes, origin by one-sided limit."""
        w = self.grid.inverse(self.coeffs)
        u = np.empty(self.grid.N + 1)
        u[1 : self.grid.N] = w / self.grid.r[1 : self.grid.N]
        u[0] = origin_value(w, self.grid.h)
        u[self.grid.N] = 0.0
        return u

    def grid_l2(self) -> float:
        """L2 of w from grid samples (trapezoid; w vanishes at both ends)."""
        w = self.grid.inverse(self.coeffs)
        return float(np.sqrt(self.grid.h * np.sum(w * w)))

    def coeff_l2(self) -> float:
        """L2 of w from coefficients (Parseval for the sine basis)."""
        return float(np.sqrt(self.grid.r_max / 2.0 * np.sum(self.coeffs**2)))

    def tail_energy_fraction(self, top_fraction: float = 0.1) -> float:
        """Energy fraction carried by the highest ``top_fraction`` of modes."""
        e = self.coeffs**2
        total = e.sum()
        if total == 0.0:
            return 0.0
        k0 = int((1.0 - top_fraction) * e.size)
        return float(e[k0:].sum() / total)


def check_support(u: np.ndarray, r: np.ndarray, radius: float, rel_tol: float = 1e-12) -> None:
    """Require samples beyond ``radius`` to be below rel_tol of the peak."""
    peak = np.abs(u).max()
    if peak == 0.0:
        return
    outside = np.abs(u[r > radius])
    if outside.size and outside.max() > rel_tol * peak:
        raise SupportError(
            f"data leaks outside r <= {radius:.4f}: "
            f"max outside = {outside.max():.3e} vs peak {peak:.3e}"
        )


@dataclass(frozen=True)
class SpaceTimeField:
    """Time-stamped radial snapshots u(t_i, r_j) plus the grid that made them."""

    times: np.ndarray
    grid: RadialGrid
    u: np.ndarray  # shape (len(times), N+1)
    m: int
    M: float

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ParameterError("snapshot times must be strictly increasing")
        if self.u.shape != (len(self.times), self.grid.N + 1):
            raise GridError("snapshot array shape does not match times/grid")

    def sup_norms(self) -> np.ndarray:
        return np.abs(self.u).max(axis=1)

    def l2_norms(self) -> np.ndarray:
        """Per-snapshot radial L2: sqrt(4 pi int u^2 r^2 dr) by trapezoid."""
        r = self.grid.r
        return np.sqrt(4.0 * np.pi * np.trapezoid(self.u**2 * r * r, r, axis=1))

    def support_leak(self) -> np.ndarray:
        """Per-snapshot fraction of int u^2 r^2 dr beyond phi(t) + M - 1 + 2h."""
        r = self.grid.r
        dens = self.u**2 * r * r
        total = np.trapezoid(dens, r, axis=1)
        out = np.zeros(len(self.times))
        for i, t in enumerate(self.times):
            edge = finite_speed_radius(self.m, self.M, float(t)) + 2.0 * self.grid.h
            mask = r > edge
            if np.any(mask) and total[i] > 0:
                out[i] = np.trapezoid(dens[i, mask], r[mask]) / total[i]
        return out
