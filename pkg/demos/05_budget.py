"""
Parasitic heating budget
========================

Photon recoil during a stroke, the adiabatic transport speed and the quench
energy of switching the interspecies coupling, next to the heat the WM
actually removes per cycle.
"""

from otto_refrigerator.constants import K_B, SPECIES_MASS, TWO_PI
from otto_refrigerator.nonadiabatic import (SweepContext, adiabatic_velocity, quench_energy,
                                            recoil_energy, recoil_heating)

rb, cs = SPECIES_MASS["Rb87"], SPECIES_MASS["Cs133"]
print(f"E_R/k_B (Rb, 780 nm)      = {recoil_energy(rb, 780e-9) / K_B * 1e9:.1f} nK")
print(f"Q_sp/k_B (3 Hz, 3 ms)     = {recoil_heating(rb, 780e-9, 3.0, 3e-3) / K_B * 1e9:.2f} nK")

# u_a falls as 1/sqrt(T): transport has to slow down as the bath cools
for temp in (1e-6, 4e-7, 1e-7):
    ctx = SweepContext(cs, TWO_PI * 80.0, temp, 1.0, 1.0)
    print(f"T = {temp * 1e9:6.0f} nK  u_a = {adiabatic_velocity(ctx) * 1e6:.2f} um/s")

# placeholder coupling and density; there is no measured value to ship
print(f"quench energy             = {quench_energy(5e-38, 1e4, 1e19):.2e} J")
