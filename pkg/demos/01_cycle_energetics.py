"""
Heat and work in one refrigeration cycle
========================================

A two-level working medium thermalizes with the cold bath at spacing E_c,
is compressed to E_h, thermalizes with the hot bath and is expanded back.
"""

import numpy as np

from otto_refrigerator import WorkingMediumConfig, cycle_energetics, cooling_condition
from otto_refrigerator.constants import MICROKELVIN as UK, MICROKELVIN_ENERGY as UK_E

# spacings of 2 and 4 uK, both baths at 1 uK
wm = WorkingMediumConfig(n_wm=10_000, e_c=2 * UK_E, e_h=4 * UK_E)
en = cycle_energetics(wm, 1 * UK, 1 * UK)
for name in ("q_c", "w_in", "q_h", "w_out"):
    print(f"{name:6s} = {getattr(en, name) / UK_E:+.6f} uK k_B")
print("first-law residual:", en.closure_residual())

# the cycle only cools while E_h/T_h > E_c/T_c; scan the hot-bath temperature
for t_h in np.linspace(1.0, 2.5, 7):
    print(f"T_h = {t_h:.2f} uK  cooling: {cooling_condition(wm, UK, t_h * UK)}")
