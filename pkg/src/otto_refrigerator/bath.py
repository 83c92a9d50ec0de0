"""Ideal Bose gas in an isotropic harmonic trap, used as a heat bath."""

from dataclasses import dataclass, replace
import math
from typing import Literal

from .constants import HBAR, K_B, ZETA3, ZETA4
from .errors import DomainError, PhysicsError


@dataclass(frozen=True)
class BathState:
    n_at: float
    omega_t: float
    temp: float
    mass: float
    label: Literal["cold", "hot"] = "cold"

    def __post_init__(self):
        for name in ("omega_t", "temp", "mass"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{self.label} bath: {name} must be positive")
        if not self.n_at >= 1:
            raise DomainError(f"{self.label} bath: n_at must be >= 1")


def critical_temperature(bath):
    """BEC threshold ``hbar omega N^(1/3) / (k_B zeta(3)^(1/3))``."""
    return HBAR * bath.omega_t * (bath.n_at / ZETA3) ** (1.0 / 3.0) / K_B


def heat_capacity(bath):
    """Heat capacity at constant volume, J/K, on either side of the threshold.

    Exactly at ``T == T_crit`` the condensed branch is used.
    """
    t_crit = critical_temperature(bath)
    ratio = bath.temp / t_crit
    n_kb = bath.n_at * K_B
    if ratio > 1.0:
        return 3.0 * n_kb * (1.0 + ZETA3 / 8.0 / ratio**3)
    return 12.0 * ZETA4 / ZETA3 * n_kb * ratio**3


def is_condensed(bath):
    return bath.temp <= critical_temperature(bath)


def apply_heat(bath, q_per_wm_atom, n_wm):
    """Bath after the WM has taken ``q_per_wm_atom`` from it, per WM atom.

    Explicit first-order step with the heat capacity at the current temperature.
    Raises :class:`PhysicsError` if the step would reach ``T <= 0``.
    """
    if q_per_wm_atom == 0:
        return bath
    new_temp = bath.temp - n_wm * q_per_wm_atom / heat_capacity(bath)
    if not new_temp > 0 or not math.isfinite(new_temp):
        raise PhysicsError(
            f"{bath.label} bath temperature would become {new_temp!r} K "
            f"(step too large for T = {bath.temp!r} K)")
    return replace(bath, temp=new_temp)
