"""Cycle-by-cycle refrigeration loop and its feasibility audit.

Each cycle uses the level spacings from the ramp schedule and the bath
temperatures at the start of the cycle. The cold bath loses ``N_WM q_c``, the
hot bath gains ``-N_WM q_h``, and both temperatures are updated once per cycle.
The baths never exchange heat directly.
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Optional

from . import bath as bath_model
from . import nonadiabatic
from .bath import BathState
from .constants import HBAR, K_B, SPECIES_MASS
from .errors import DomainError
from .otto import WorkingMediumConfig, cooling_condition, cycle_energetics

log = logging.getLogger(__name__)

STEP_GUARD = 0.01
OCCUPANCY_LIMIT = 0.05
RECOIL_FRACTION = 0.1
MIN_STROKE_TIME = 1e-3

TERMINATION_MAX_CYCLES = "max_cycles"
TERMINATION_MODE_SPACING = "mode_spacing"
TERMINATION_NO_COOLING = "no_cooling"


@dataclass(frozen=True)
class RampSchedule:
    """Linear ramp of both level spacings over cycles ``1..ramp_cycles``."""

    e_c_initial: float
    e_c_final: float
    e_h_initial: float
    e_h_final: float
    ramp_cycles: int
    shape: str = "linear"

    def __post_init__(self):
        if self.shape != "linear":
            raise DomainError(f"unsupported ramp shape {self.shape!r}")
        if self.ramp_cycles < 1:
            raise DomainError("ramp_cycles must be >= 1")
        for name in ("e_c_initial", "e_c_final", "e_h_initial", "e_h_final"):
            if not getattr(self, name) > 0:
                raise DomainError(f"ramp {name} must be positive")
        # both spacings are linear in the cycle index, so the endpoints decide
        if self.e_c_initial > self.e_h_initial or self.e_c_final > self.e_h_final:
            raise DomainError("ramp would give E_c > E_h")


def spacing_at(ramp, cycle):
    """``(E_c, E_h)`` for a 1-based cycle index.

    Cycle 1 uses the initial spacings, cycles ``>= ramp_cycles`` the final
    ones; in between the spacings move in equal steps.
    """
    if cycle < 1:
        raise DomainError(f"cycle index must be >= 1, got {cycle}")
    if cycle >= ramp.ramp_cycles:
        return ramp.e_c_final, ramp.e_h_final
    frac = (cycle - 1) / (ramp.ramp_cycles - 1)
    e_c = ramp.e_c_initial + (ramp.e_c_final - ramp.e_c_initial) * frac
    e_h = ramp.e_h_initial + (ramp.e_h_final - ramp.e_h_initial) * frac
    return e_c, e_h


@dataclass(frozen=True)
class SimConfig:
    cold: BathState
    hot: BathState
    wm: WorkingMediumConfig
    ramp: RampSchedule
    max_cycles: int
    stop_mode_spacing_factor: float = 7.0
    cycle_time: float = 10e-3
    max_intensity_ratio: float = 100.0
    halt_on_no_cooling: bool = False

    def __post_init__(self):
        if self.max_cycles < 1:
            raise DomainError("max_cycles must be >= 1")
        if not self.stop_mode_spacing_factor > 0:
            raise DomainError("stop_mode_spacing_factor must be positive")
        if not self.cycle_time > 0:
            raise DomainError("cycle_time must be positive")
        if not self.max_intensity_ratio > 0:
            raise DomainError("max_intensity_ratio must be positive")

    @property
    def stop_temperature(self):
        """Cold-bath temperature at which ``k_B T`` equals the stop factor times the mode spacing."""
        return self.stop_mode_spacing_factor * HBAR * self.cold.omega_t / K_B


@dataclass(frozen=True)
class CycleRecord:
    """State after one completed cycle.

    Temperatures are the post-update values; spacings, occupations and
    energetics (per WM atom) belong to the cycle itself and were computed from
    the temperatures at its start.
    """

    cycle: int
    T_c: float
    T_h: float
    E_c: float
    E_h: float
    n_bar_c: float
    n_bar_h: float
    q_c: float
    w_in: float
    q_h: float
    w_out: float
    T_crit_c: float
    T_crit_h: float
    condensed_c: bool
    condensed_h: bool
    cooling_active: bool


@dataclass
class Trajectory:
    initial_cold: BathState
    initial_hot: BathState
    records: list = field(default_factory=list)
    termination: str = TERMINATION_MAX_CYCLES
    warnings: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    @property
    def final(self):
        return self.records[-1] if self.records else None

    def threshold_crossing_cycle(self):
        """First cycle whose cold bath ends below its critical temperature."""
        if self.initial_cold.temp <= bath_model.critical_temperature(self.initial_cold):
            return 0
        for rec in self.records:
            if rec.condensed_c:
                return rec.cycle
        return None

    def mean_cooling_rate(self, cycle_time):
        """Average cold-bath cooling rate over the run, K/s (positive = cooling)."""
        if not self.records:
            return 0.0
        drop = self.initial_cold.temp - self.records[-1].T_c
        return drop / (len(self.records) * cycle_time)


def run_simulation(cfg):
    """Run the refrigeration loop until a stop condition fires."""
    cold, hot = cfg.cold, cfg.hot
    n_wm = cfg.wm.n_wm
    t_crit_c = bath_model.critical_temperature(cold)
    t_crit_h = bath_model.critical_temperature(hot)
    t_stop = cfg.stop_temperature
    traj = Trajectory(initial_cold=cold, initial_hot=hot)

    for n in range(1, cfg.max_cycles + 1):
        e_c, e_h = spacing_at(cfg.ramp, n)
        wm = WorkingMediumConfig(n_wm, e_c, e_h)
        en = cycle_energetics(wm, cold.temp, hot.temp)
        active = cooling_condition(wm, cold.temp, hot.temp)
        if not active and cfg.halt_on_no_cooling:
            traj.termination = TERMINATION_NO_COOLING
            traj.warnings.append(f"cycle {n}: cooling condition violated, run halted")
            return traj
        if not active and not any("cooling condition" in w for w in traj.warnings):
            traj.warnings.append(f"cycle {n}: cooling condition violated, continuing")

        new_cold = bath_model.apply_heat(cold, en.q_c, n_wm)
        new_hot = bath_model.apply_heat(hot, en.q_h, n_wm)
        for before, after in ((cold, new_cold), (hot, new_hot)):
            rel = abs(after.temp - before.temp) / before.temp
            if rel > STEP_GUARD:
                msg = (f"cycle {n}: {before.label} bath step |dT|/T = {rel:.3g} "
                       f"exceeds {STEP_GUARD:g}")
                traj.warnings.append(msg)
                log.debug(msg)
        cold, hot = new_cold, new_hot

        traj.records.append(CycleRecord(
            cycle=n, T_c=cold.temp, T_h=hot.temp, E_c=e_c, E_h=e_h,
            n_bar_c=en.n_bar_c, n_bar_h=en.n_bar_h,
            q_c=en.q_c, w_in=en.w_in, q_h=en.q_h, w_out=en.w_out,
            T_crit_c=t_crit_c, T_crit_h=t_crit_h,
            condensed_c=cold.temp <= t_crit_c, condensed_h=hot.temp <= t_crit_h,
            cooling_active=active,
        ))
        if cold.temp <= t_stop:
            traj.termination = TERMINATION_MODE_SPACING
            break
    else:
        traj.termination = TERMINATION_MAX_CYCLES
    if traj.warnings:
        log.info("run finished with %d warnings", len(traj.warnings))
    return traj


# -- feasibility audit ---------------------------------------------------------

@dataclass(frozen=True)
class Check:
    """One audit line. ``passed`` is None when the check could not be run."""

    name: str
    passed: Optional[bool]
    detail: str
    cycle: Optional[int] = None


@dataclass(frozen=True)
class FeasibilityReport:
    checks: tuple

    @property
    def passed(self):
        return all(c.passed is not False for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self):
        out = []
        for c in self.checks:
            status = {True: "PASS", False: "FAIL", None: "n/a "}[c.passed]
            where = f" (first at cycle {c.cycle})" if c.cycle is not None else ""
            out.append(f"[{status}] {c.name}: {c.detail}{where}")
        return out


def recoil_check(q_c, recoil_heat):
    """Recoil heat per stroke must stay below 10% of the heat taken from the cold bath."""
    return recoil_heat <= RECOIL_FRACTION * q_c


def transport_check(transport):
    if transport is None:
        return Check("transport", None, "not configured")
    u_a = nonadiabatic.adiabatic_velocity(transport)
    ratio = transport.speed / u_a
    return Check("transport", ratio < 1.0,
                 f"u = {transport.speed * 1e6:.4g} um/s, u_a = {u_a * 1e6:.4g} um/s, "
                 f"u/u_a = {ratio:.3g}")


def feasibility_report(cfg, transport=None, trajectory=None, *,
                       wm_mass=SPECIES_MASS["Rb87"], wavelength=780e-9,
                       gamma=3.0, stroke_time=None):
    """Audit a configuration against the experimental constraints.

    Checks the spacing ratio against the laser-intensity range, the WM
    occupancy, transport speed against ``u_a``, recoil heating against the cold
    heat per cycle, and the 1 ms adiabaticity floor on the stroke time
    (default stroke time: a quarter of the cycle time).
    """
    if trajectory is None:
        trajectory = run_simulation(cfg)
    if stroke_time is None:
        stroke_time = cfg.cycle_time / 4.0
    recs = trajectory.records
    checks = []

    bound = math.sqrt(cfg.max_intensity_ratio)
    ratios = [(r.E_h / r.E_c, r.cycle) for r in recs]
    worst, _ = max(ratios) if ratios else (0.0, None)
    first_bad = next((c for q, c in ratios if q > bound), None)
    checks.append(Check("spacing_ratio", first_bad is None,
                        f"max E_h/E_c = {worst:.4g}, bound sqrt({cfg.max_intensity_ratio:g}) "
                        f"= {bound:.4g}", first_bad))

    occ = [(max(r.n_bar_c, r.n_bar_h), r.cycle) for r in recs]
    worst_occ = max((o for o, _ in occ), default=0.0)
    first_bad = next((c for o, c in occ if o > OCCUPANCY_LIMIT), None)
    checks.append(Check("occupancy", first_bad is None,
                        f"max n_bar = {worst_occ:.4g}, limit {OCCUPANCY_LIMIT:g}", first_bad))

    checks.append(transport_check(transport))

    q_sp = nonadiabatic.recoil_heating(wm_mass, wavelength, gamma, stroke_time)
    active = [r for r in recs if r.cooling_active]
    first_bad = next((r.cycle for r in active if not recoil_check(r.q_c, q_sp)), None)
    q_first = active[0].q_c if active else 0.0
    checks.append(Check("recoil", bool(active) and first_bad is None,
                        f"Q_sp/k_B = {q_sp / K_B * 1e9:.4g} nK per stroke vs "
                        f"q_c/k_B = {q_first / K_B * 1e9:.4g} nK at first active cycle",
                        first_bad))

    checks.append(Check("stroke_time", stroke_time >= MIN_STROKE_TIME,
                        f"stroke time {stroke_time * 1e3:.4g} ms, floor 1 ms"))
    return FeasibilityReport(tuple(checks))


def with_transport_bath(cfg, speed, v0, which="cold"):
    """SweepContext for moving the WM through one of the configured baths."""
    b = cfg.cold if which == "cold" else cfg.hot
    return nonadiabatic.SweepContext(mass=b.mass, omega_t=b.omega_t, temp=b.temp,
                                     speed=speed, v0=v0)


__all__ = [
    "RampSchedule", "SimConfig", "CycleRecord", "Trajectory", "spacing_at",
    "run_simulation", "Check", "FeasibilityReport", "feasibility_report",
    "recoil_check", "transport_check", "with_transport_bath",
]
