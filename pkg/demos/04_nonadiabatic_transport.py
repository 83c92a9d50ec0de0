"""
Energy left behind by a moving working medium
=============================================

Dragging the WM through a thermal cloud excites bath atoms. The
dimensionless transfer S(y, zeta) is evaluated two ways (thermal double sum
and Bessel series) and compared with the slow-transport asymptote.
"""

import numpy as np

from otto_refrigerator.nonadiabatic import (
    NonadiabaticInput, SweepContext, adiabatic_velocity, transferred_energy,
    transferred_energy_asymptotic, transferred_energy_bruteforce, transferred_energy_closed)
from otto_refrigerator.constants import HBAR, K_B, SPECIES_MASS, TWO_PI

# the two evaluations agree to rounding
for y, zeta in [(0.05, 0.5), (0.5, 1.0), (1.0, 5.0)]:
    inp = NonadiabaticInput(y, zeta)
    a, b = transferred_energy_bruteforce(inp), transferred_energy_closed(inp)
    print(f"y={y:<5} zeta={zeta:<4} S={b:.12e}  rel. diff {abs(a - b) / b:.1e}")

# slow transport through a hot (y = 0.05) Cs cloud: exponential suppression
omega = TWO_PI * 80.0
temp = HBAR * omega / (K_B * 0.05)
cs = SPECIES_MASS["Cs133"]
u_a = adiabatic_velocity(SweepContext(cs, omega, temp, 1.0, 1e-40))
print(f"u_a = {u_a * 1e6:.3f} um/s")
for ratio in np.linspace(0.5, 0.2, 4):
    ctx = SweepContext(cs, omega, temp, ratio * u_a, 1e-40)
    full = transferred_energy(ctx)
    print(f"u/u_a = {ratio:.1f}  full {full:.4e} J  asymptote / full = "
          f"{transferred_energy_asymptotic(ctx) / full:.6f}")
