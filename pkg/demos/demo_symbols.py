"""Multiplier symbols three ways: ODE march, Kummer series, Bessel closed form.

The per-frequency mode ODE v'' + t^m lambda^2 v = 0 has the fundamental pair
(V1, V2); the demo evaluates both by all three routes on a phase grid and
shows the oscillation-with-decay structure and the unit Wronskian.
"""

import numpy as np

from tricomi_lab.geometry import phi_inverse
from tricomi_lab.symbols import (
    amplitude_envelope_bound,
    evolve_mode,
    fit_upper_envelope_slope,
    symbol_matrix,
    v1_symbol,
    v2_symbol,
)

m = 1
print(f"three-route agreement for m={m} (lambda = 1):")
print(f"{'w=phi(t)':>9s} {'V1 ode':>12s} {'V1 kummer':>12s} {'V1 bessel':>12s} {'spread':>9s}")
for w in (0.5, 2.0, 8.0, 20.0, 50.0, 100.0):
    t = phi_inverse(m, w)
    ode = evolve_mode(m, 1.0, t, (1.0, 0.0), rtol=1e-12).v
    kum = v1_symbol(m, t, 1.0, "kummer").real
    bes = v1_symbol(m, t, 1.0, "bessel").real
    spread = max(ode, kum, bes) - min(ode, kum, bes)
    print(f"{w:9.1f} {ode:12.8f} {kum:12.8f} {bes:12.8f} {spread:9.1e}")

print("\ndecay envelope: |V1| against the proved (1 + w)^(-m/(2(m+2))) bound")
ws = np.geomspace(10.0, 1e3, 2000)
ts = phi_inverse(m, ws)
vals = np.array([abs(v1_symbol(m, float(t), 1.0, "bessel")) for t in ts])
slope = fit_upper_envelope_slope(ws, vals)
print(f"  fitted upper-envelope slope: {slope:.4f} (theory: {-m / (2 * (m + 2)):.4f})")
bound = amplitude_envelope_bound(m, ts, 1.0)
print(f"  max |V1| / bound over the grid: {float((vals / bound).max()):.4f} (a constant)")

print("\nWronskian V1 V2' - V1' V2 across frequencies at t = 10:")
lam = np.geomspace(0.1, 50.0, 8)
v1, v2, v1p, v2p = symbol_matrix(m, 10.0, lam)
for i in range(len(lam)):
    print(f"  lambda={lam[i]:8.3f}: W = {v1[i] * v2p[i] - v1p[i] * v2[i]:.12f}")

print("\nV2 vanishes at t=0 with unit velocity:")
for t in (0.0, 1e-3, 1e-2):
    print(f"  t={t:.0e}: V2 = {v2_symbol(m, t, 2.0).real:.6e}")
