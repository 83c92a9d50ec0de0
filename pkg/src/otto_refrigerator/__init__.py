"""Quantized Otto refrigerator for a two-species cold-atom mixture.

A two-level working medium (one atomic species in a tight optical trap)
shuttles heat from a cold bosonic bath to a hot one. The package provides the
per-cycle energetics, ideal-Bose-gas bath thermodynamics across the
condensation threshold, the cycle-by-cycle refrigeration loop, and the
parasitic-heating budgets (non-adiabatic transport, photon recoil, coupling
quench).
"""

from .bath import BathState, apply_heat, critical_temperature, heat_capacity
from .config import (PRESETS, ParsedConfig, dumps_config, load_config, loads_config,
                     parse_config, preset_document)
from .constants import CONSTANTS, PhysicalConstants
from .engine import (RampSchedule, SimConfig, Trajectory, feasibility_report,
                     run_simulation, spacing_at)
from .errors import (ConfigError, ConvergenceError, DomainError, PhysicsError,
                     RegimeError)
from .nonadiabatic import (NonadiabaticInput, SweepContext, adiabatic_velocity,
                           displacement_matrix_element, quench_energy,
                           recoil_energy, recoil_heating, transferred_energy,
                           transferred_energy_asymptotic,
                           transferred_energy_bruteforce,
                           transferred_energy_closed)
from .otto import (CycleEnergetics, WorkingMediumConfig, cooling_condition,
                   cycle_energetics, min_temperature, thermal_occupation)
from .special import (SignedLogValue, assoc_laguerre, log_bessel_i_scaled,
                      log_bessel_ive, log_factorial_ratio)

__version__ = "0.1.0"
