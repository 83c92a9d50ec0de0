"""Energy deposited in a thermal 1D bath by a WM dragged through it.

A point-like WM, ``V(z, t) = V0 delta(z - u t)``, crosses a harmonically
trapped ideal gas at constant speed ``u``. In lowest-order perturbation theory
the mean energy gained per bath atom is ``hbar omega chi**2 * S(y, zeta)`` with

* ``y = hbar omega / (k_B T)``,
* ``zeta = omega / (sqrt(2) alpha u)``, ``alpha = sqrt(m omega / hbar)``,
* ``chi = V0 / (hbar u)``.

``S`` is available as the thermal double sum over initial levels and
excitation number (:func:`transferred_energy_bruteforce`) and as the single
Bessel series obtained from it with the Hille-Hardy formula
(:func:`transferred_energy_closed`). The two are independent evaluations of the
same number.

The Hille-Hardy summation gives ``2 l sinh(l y / 2)`` as the prefactor of the
l-th Bessel term. Writing ``sinh(y / 2)`` instead only agrees at ``l = 1``,
which is all the high-temperature asymptote needs, but it misses the double
sum by a factor of ~2 at moderate ``zeta``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .constants import H_PLANCK, HBAR, K_B
from .errors import ConvergenceError, DomainError, RegimeError
from .special import laguerre_log_table, log_bessel_ive, log_factorial_ratio

TERM_RTOL = 1e-16
N0_TAIL_WEIGHT = 1e-14
MAX_N0 = 10**5
MAX_L = 10**4
_L_BLOCK = 128


@dataclass(frozen=True)
class NonadiabaticInput:
    y: float
    zeta: float
    chi: float = 1.0

    def __post_init__(self):
        if not self.y > 0 or not self.zeta > 0 or not self.chi >= 0:
            raise DomainError(
                f"need y > 0, zeta > 0, chi >= 0; got {self.y}, {self.zeta}, {self.chi}")


@dataclass(frozen=True)
class SweepContext:
    """WM transport through one bath, in SI units.

    ``v0`` is the contact-potential strength ``g_IB * N_WM`` in J m.
    """

    mass: float
    omega_t: float
    temp: float
    speed: float
    v0: float

    def __post_init__(self):
        for name in ("mass", "omega_t", "temp", "speed", "v0"):
            if not getattr(self, name) > 0:
                raise DomainError(f"SweepContext.{name} must be positive")

    @property
    def beta(self):
        return 1.0 / (K_B * self.temp)

    @property
    def alpha(self):
        return math.sqrt(self.mass * self.omega_t / HBAR)

    @property
    def y(self):
        return HBAR * self.omega_t * self.beta

    def lam(self, n0, n):
        """Displacement parameter for the transition ``n0 -> n``."""
        return self.omega_t * (n - n0) / (math.sqrt(2.0) * self.speed * self.alpha)

    def to_input(self):
        return NonadiabaticInput(
            y=self.y,
            zeta=self.omega_t / (math.sqrt(2.0) * self.alpha * self.speed),
            chi=self.v0 / (HBAR * self.speed),
        )


@dataclass(frozen=True)
class DisplacementElement:
    """``<n| exp(i lam (a + a^dag)) |n0>`` as ``i**quadrant * sign * exp(log_magnitude)``."""

    log_magnitude: float
    sign: int
    quadrant: int

    @property
    def magnitude(self):
        return 0.0 if self.sign == 0 else math.exp(self.log_magnitude)

    @property
    def value(self):
        return self.sign * self.magnitude * 1j**self.quadrant


def displacement_matrix_element(n0, n, lam):
    if n0 < 0 or n < n0:
        raise DomainError(f"need n >= n0 >= 0, got n0={n0}, n={n}")
    l = n - n0
    lam2 = lam * lam
    lag_log, lag_sign = laguerre_log_table(n0, l, lam2)
    sign = int(lag_sign[n0])
    if lam == 0:
        if l > 0:
            return DisplacementElement(-math.inf, 0, l % 4)
        return DisplacementElement(0.0, 1, 0)
    if lam < 0 and l % 2:
        sign = -sign
    log_mag = (-0.5 * lam2 + l * math.log(abs(lam))
               + 0.5 * log_factorial_ratio(n0, l) + float(lag_log[n0]))
    return DisplacementElement(log_mag, sign, l % 4)


def _logsumexp(a, axis=None):
    m = np.max(a, axis=axis, keepdims=True)
    m = np.where(np.isfinite(m), m, 0.0)
    with np.errstate(divide="ignore"):
        out = np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True)) + m
    return np.squeeze(out, axis=axis) if axis is not None else float(out.ravel()[0])


def _n0_cutoff(y):
    n_max = math.ceil(-math.log(N0_TAIL_WEIGHT) / y)
    if n_max > MAX_N0:
        raise ConvergenceError(f"n0 sum needs {n_max} terms (> {MAX_N0}) at y={y}")
    return n_max


def transferred_energy_bruteforce(inp):
    """Thermal double sum over initial level ``n0`` and excitation ``l``.

    Returns ``S`` with ``<dE> = hbar omega chi**2 S``.
    """
    y, zeta = inp.y, inp.zeta
    if y < 0.01 or zeta < 0.05:
        raise DomainError(f"brute-force sum requires y >= 0.01 and zeta >= 0.05, "
                          f"got y={y}, zeta={zeta}")
    n_max = _n0_cutoff(y)
    n0 = np.arange(n_max + 1, dtype=float)[:, None]
    log_n0_plus1 = np.log(n0[:-1] + 1.0)
    log_total = -math.inf
    prev_last = math.inf
    for l_start in range(1, MAX_L + 1, _L_BLOCK):
        ls = np.arange(l_start, min(l_start + _L_BLOCK, MAX_L + 1), dtype=float)
        x = zeta * zeta * ls * ls
        lag_log, lag_sign = laguerre_log_table(n_max, ls, x)
        # ln(n0!/(n0+l)!) for all n0, from n0 = 0 upward
        start = np.array([log_factorial_ratio(0, int(l)) for l in ls])
        steps = log_n0_plus1 - np.log(n0[:-1] + 1.0 + ls)
        log_ratio = np.vstack([start, start + np.cumsum(steps, axis=0)])
        with np.errstate(divide="ignore"):
            log_terms = (-y * n0 + log_ratio + 2.0 * lag_log
                         + ls * np.log(x) - x)
        log_terms = np.where(lag_sign == 0, -math.inf, log_terms)
        per_l = (_logsumexp(log_terms, axis=0) + np.log(ls)
                 + np.log(-np.expm1(-y * ls)))
        block_max = float(np.max(per_l))
        log_total = float(np.logaddexp(log_total, _logsumexp(per_l)))
        last = float(per_l[-1])
        decreasing = len(per_l) < 2 or per_l[-1] < per_l[-2]
        if (block_max < log_total + math.log(TERM_RTOL) and decreasing
                and last <= prev_last):
            return math.exp(log_total + math.log(-math.expm1(-y)))
        prev_last = last
    raise ConvergenceError(f"l sum not converged within {MAX_L} terms "
                           f"(y={y}, zeta={zeta})")


def _log_sinh(a):
    return a + math.log1p(-math.exp(-2.0 * a)) - math.log(2.0)


def closed_form_terms(inp, l_max=None):
    """Log of the individual Bessel-series terms, ``l = 1, 2, ...``.

    Without ``l_max`` the series is truncated once a term falls below
    ``1e-16`` of the partial sum past the peak.
    """
    y, zeta = inp.y, inp.zeta
    half = 0.5 * y
    inv_sinh = 1.0 / math.sinh(half)
    gap = math.tanh(0.25 * y)   # coth(y/2) - 1/sinh(y/2)
    out = []
    log_total = -math.inf
    last = -math.inf
    cap = MAX_L if l_max is None else l_max
    for l in range(1, cap + 1):
        x = zeta * zeta * l * l
        log_term = (math.log(2.0 * l) + _log_sinh(l * half) - x * gap
                    + log_bessel_ive(l, x * inv_sinh))
        out.append(log_term)
        log_total = float(np.logaddexp(log_total, log_term))
        if l_max is None and log_term < last and \
                log_term < log_total + math.log(TERM_RTOL):
            return out
        last = log_term
    if l_max is None:
        raise ConvergenceError(f"Bessel series not converged within {MAX_L} terms "
                               f"(y={y}, zeta={zeta})")
    return out


def transferred_energy_closed(inp):
    """Single Bessel series for ``S`` (same normalisation as the double sum)."""
    return math.exp(_logsumexp(np.array(closed_form_terms(inp))))


def _high_temperature_l1_term(inp):
    """Leading ``l = 1`` term of ``S`` in the ``y << 1`` limit.

    ``y**1.5 exp(-zeta**2 y / 4) / (2 sqrt(pi) zeta)``; large-argument Bessel
    asymptote plus small-``y`` expansion of the hyperbolic factors.
    """
    y, zeta = inp.y, inp.zeta
    return y**1.5 * math.exp(-0.25 * zeta * zeta * y) / (2.0 * math.sqrt(math.pi) * zeta)


def mean_transferred_energy(inp, omega_t, method="closed"):
    """``hbar omega chi**2 S`` in joule."""
    if inp.chi == 0:
        return 0.0
    if method == "closed":
        s = transferred_energy_closed(inp)
    elif method == "bruteforce":
        s = transferred_energy_bruteforce(inp)
    else:
        raise ValueError(f"unknown method {method!r}")
    return HBAR * omega_t * inp.chi**2 * s


def transferred_energy(ctx, method="closed"):
    return mean_transferred_energy(ctx.to_input(), ctx.omega_t, method)


def adiabatic_velocity(ctx):
    """``u_a = omega * sqrt(beta hbar**2 / (8 m))``, in m/s."""
    return ctx.omega_t * math.sqrt(ctx.beta * HBAR**2 / (8.0 * ctx.mass))


def transferred_energy_asymptotic(ctx):
    """Exponentially suppressed energy transfer for ``y << 1`` and ``u << u_a``.

    Raises :class:`RegimeError` unless ``y < 0.2`` and ``u <= u_a / 2``.
    """
    y = ctx.y
    u_a = adiabatic_velocity(ctx)
    if not y < 0.2:
        raise RegimeError(f"high-temperature asymptote needs y < 0.2, got y={y:.4g}")
    if not ctx.speed <= 0.5 * u_a:
        raise RegimeError(f"asymptote needs u <= u_a/2, got u/u_a={ctx.speed / u_a:.4g}")
    r = u_a / ctx.speed
    return (2.0 / math.sqrt(math.pi) * ctx.beta * (ctx.alpha * ctx.v0) ** 2
            * r * math.exp(-r * r))


def quench_energy(g_ib, n_wm, bath_density):
    """Interaction energy ``g N_WM n_bath`` dumped by a sudden (de)coupling."""
    if g_ib < 0 or n_wm < 0 or bath_density < 0:
        raise DomainError("quench_energy inputs must be non-negative")
    return g_ib * n_wm * bath_density


def recoil_energy(mass, wavelength):
    if not mass > 0 or not wavelength > 0:
        raise DomainError("mass and wavelength must be positive")
    return H_PLANCK**2 / (2.0 * mass * wavelength**2)


def recoil_heating(mass, wavelength, gamma, stroke_time):
    """Heat per WM atom per stroke from spontaneous emission, ``E_R gamma tau``."""
    if gamma < 0 or stroke_time < 0:
        raise DomainError("gamma and stroke_time must be non-negative")
    return recoil_energy(mass, wavelength) * gamma * stroke_time
