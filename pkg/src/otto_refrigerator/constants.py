"""Physical constants (CODATA 2018) and unit helpers.

Everything inside the package works in SI base units. The helpers below are
the only places where micro/nano-kelvin or Hz values are turned into SI
quantities and back.
"""

from dataclasses import dataclass
import math


@dataclass(frozen=True)
class PhysicalConstants:
    h: float = 6.62607015e-34
    hbar: float = 6.62607015e-34 / (2.0 * math.pi)
    k_B: float = 1.380649e-23
    zeta3: float = 1.2020569031595943
    zeta4: float = 1.0823232337111382  # pi**4 / 90
    atomic_mass_unit: float = 1.66053906660e-27
    mass_Rb87: float = 86.909180531 * 1.66053906660e-27
    mass_Cs133: float = 132.905451961 * 1.66053906660e-27


CONSTANTS = PhysicalConstants()

HBAR = CONSTANTS.hbar
H_PLANCK = CONSTANTS.h
K_B = CONSTANTS.k_B
ZETA3 = CONSTANTS.zeta3
ZETA4 = CONSTANTS.zeta4

SPECIES_MASS = {
    "Rb87": CONSTANTS.mass_Rb87,
    "Cs133": CONSTANTS.mass_Cs133,
}

# SI value of one unit of each I/O quantity.
MICROKELVIN = 1e-6
NANOKELVIN = 1e-9
MICROKELVIN_ENERGY = 1e-6 * K_B   # J per (uK * k_B)
TWO_PI = 2.0 * math.pi            # rad/s per Hz
MILLISECOND = 1e-3
MICROMETER_PER_S = 1e-6


def uK_to_J(value):
    """Energy given as E/k_B in microkelvin -> joule."""
    return value * MICROKELVIN_ENERGY


def J_to_uK(value):
    return value / MICROKELVIN_ENERGY


def hz_to_rad_s(value):
    return value * TWO_PI


def rad_s_to_hz(value):
    return value / TWO_PI


def invert_scale(si_value, scale):
    """Return ``v`` with ``v * scale == si_value`` exactly, if one exists.

    Plain division can be off by an ulp, which breaks bit-exact round trips
    through a config file. The neighbouring floats of ``si_value / scale`` are
    searched; the nearest quotient is returned when no exact preimage exists.
    """
    guess = si_value / scale
    if guess * scale == si_value:
        return guess
    lo = hi = guess
    for _ in range(8):
        lo = math.nextafter(lo, -math.inf)
        hi = math.nextafter(hi, math.inf)
        for cand in (lo, hi):
            if cand * scale == si_value:
                return cand
    return guess
