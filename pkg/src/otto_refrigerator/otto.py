"""Energetics of one quantized Otto cycle of a two-level working medium.

Strokes, for a WM with level spacing E_c on the cold isochore and E_h on the
hot one:

1. cold isochore   Q_c   = E_c (n_c - n_h)
2. compression     W_in  = (E_h - E_c) n_c
3. hot isochore    Q_h   = E_h (n_h - n_c)
4. decompression   W_out = (E_c - E_h) n_h

The WM state is frozen during both adiabats, so the compression stroke starts
from the cold thermal state (occupation n_c) and the decompression stroke
from the hot one (n_h). The main-text description of the scheme swaps n_c and
n_h in the two work terms; that version does not close the first law with the
heats above and is not used.

All quantities are per WM atom. The ground-state compression work cancels
between strokes 2 and 4 and is omitted.
"""

from dataclasses import dataclass
import math

from .constants import K_B
from .errors import DomainError


@dataclass(frozen=True)
class WorkingMediumConfig:
    """Two-level working medium: atom count and the two level spacings (J)."""

    n_wm: int
    e_c: float
    e_h: float

    def __post_init__(self):
        if self.n_wm < 1:
            raise DomainError(f"n_wm must be >= 1, got {self.n_wm}")
        if not 0 < self.e_c <= self.e_h:
            raise DomainError(
                f"level spacings must satisfy 0 < E_c <= E_h, got {self.e_c}, {self.e_h}")


@dataclass(frozen=True)
class CycleEnergetics:
    q_c: float
    w_in: float
    q_h: float
    w_out: float
    n_bar_c: float
    n_bar_h: float

    @property
    def net_work(self):
        return self.w_in + self.w_out

    def closure_residual(self):
        """Relative first-law residual ``|sum| / max |term|``."""
        terms = (self.q_c, self.w_in, self.q_h, self.w_out)
        scale = max(abs(t) for t in terms)
        if scale == 0:
            return 0.0
        return abs(math.fsum(terms)) / scale


def thermal_occupation(E, T):
    """Excited-level population ``1 / (exp(E / k_B T) + 1)``."""
    if not E > 0 or not T > 0:
        raise DomainError(f"E and T must be positive, got E={E!r}, T={T!r}")
    # exp(-a)/(1+exp(-a)) never overflows for a > 0
    a = E / (K_B * T)
    e = math.exp(-a)
    return e / (1.0 + e)


_TIE_RTOL = 8 * 2.0**-52


def _occupations(wm, T_c, T_h):
    if not T_c > 0 or not T_h > 0:
        raise DomainError(f"temperatures must be positive, got {T_c!r}, {T_h!r}")
    a_c = wm.e_c / (K_B * T_c)
    a_h = wm.e_h / (K_B * T_h)
    n_c = thermal_occupation(wm.e_c, T_c)
    # E_c/T_c == E_h/T_h up to rounding: the cycle is exactly at its fixed point
    if abs(a_c - a_h) <= _TIE_RTOL * max(a_c, a_h):
        return n_c, n_c
    return n_c, thermal_occupation(wm.e_h, T_h)


def cycle_energetics(wm, T_c, T_h):
    n_c, n_h = _occupations(wm, T_c, T_h)
    de = wm.e_h - wm.e_c
    return CycleEnergetics(
        q_c=wm.e_c * (n_c - n_h),
        w_in=de * n_c,
        q_h=wm.e_h * (n_h - n_c),
        w_out=-de * n_h,
        n_bar_c=n_c,
        n_bar_h=n_h,
    )


def cooling_condition(wm, T_c, T_h):
    """True when the cycle extracts heat from the cold bath.

    Equivalent to ``E_h / T_h > E_c / T_c``; evaluated as ``n_c > n_h`` on the
    same occupations :func:`cycle_energetics` uses, so it agrees with the sign
    of ``q_c`` on every input. Ratios equal to within a few ulps count as equal.
    """
    n_c, n_h = _occupations(wm, T_c, T_h)
    return n_c > n_h


def min_temperature(wm, T_h):
    """Lowest cold-bath temperature reachable for the given hot-bath temperature."""
    if not T_h > 0:
        raise DomainError(f"T_h must be positive, got {T_h!r}")
    return wm.e_c / wm.e_h * T_h
