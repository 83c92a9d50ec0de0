"""
Crossing the condensation threshold
===================================

Critical temperature and heat capacity of an ideal Bose gas in a 3D harmonic
trap. The heat capacity jumps at T_crit, so the cooling step per cycle
changes character when the cold cloud condenses.
"""

import numpy as np

from otto_refrigerator import BathState, critical_temperature, heat_capacity
from otto_refrigerator.constants import K_B, SPECIES_MASS, TWO_PI

cs = SPECIES_MASS["Cs133"]
cold = BathState(n_at=2e5, omega_t=TWO_PI * 150.0, temp=1e-6, mass=cs)
t_crit = critical_temperature(cold)
print(f"T_crit = {t_crit * 1e9:.1f} nK")

# C_V / (N k_B) on both sides of the threshold
for ratio in np.array([0.25, 0.5, 0.9, 1.0, 1.0 + 1e-9, 1.5, 3.0, 10.0]):
    b = BathState(cold.n_at, cold.omega_t, ratio * t_crit, cs)
    print(f"T/T_crit = {ratio:<12.9g} C_V/(N k_B) = {heat_capacity(b) / (cold.n_at * K_B):.4f}")
