"""Configuration documents (TOML) and the two bundled presets.

Document layout, with units carried by the key names::

    [baths.cold]   atoms, trap_freq_hz, temp_uK, species | mass_kg
    [baths.hot]    same keys
    [wm]           atoms, e_c_uK, e_h_uK
    [ramp]         e_c_final_uK, e_h_final_uK, cycles, shape        (optional)
    [run]          max_cycles, stop_factor, cycle_time_ms,
                   max_intensity_ratio, halt_on_no_cooling          (optional)
    [transport]    speed_um_s, v0_Jm, g_ib_Jm3, bath_density_m3      (optional)

Unknown keys are rejected. Spacings and temperatures are in microkelvin
(spacings as E/k_B), trap frequencies in Hz.
"""

from dataclasses import dataclass
import copy
import math
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .bath import BathState
from .constants import (MICROKELVIN, MICROKELVIN_ENERGY, MICROMETER_PER_S,
                        MILLISECOND, SPECIES_MASS, TWO_PI, invert_scale)
from .engine import RampSchedule, SimConfig
from .errors import ConfigError, DomainError
from .nonadiabatic import SweepContext
from .otto import WorkingMediumConfig

_BATH_KEYS = {"atoms", "trap_freq_hz", "temp_uK", "species", "mass_kg"}
_WM_KEYS = {"atoms", "e_c_uK", "e_h_uK"}
_RAMP_KEYS = {"e_c_final_uK", "e_h_final_uK", "cycles", "shape"}
_RUN_KEYS = {"max_cycles", "stop_factor", "cycle_time_ms",
             "max_intensity_ratio", "halt_on_no_cooling"}
_TRANSPORT_KEYS = {"speed_um_s", "v0_Jm", "g_ib_Jm3", "bath_density_m3"}
_TOP_KEYS = {"baths", "wm", "ramp", "run", "transport"}

RUN_DEFAULTS = {
    "max_cycles": 1500,
    "stop_factor": 7.0,
    "cycle_time_ms": 10.0,
    "max_intensity_ratio": 100.0,
    "halt_on_no_cooling": False,
}


def _bath_doc(freq_hz, atoms):
    return {"atoms": atoms, "trap_freq_hz": freq_hz, "temp_uK": 1.0, "species": "Cs133"}


def _preset(cold_hz, hot_hz):
    return {
        "baths": {"cold": _bath_doc(cold_hz, 200000), "hot": _bath_doc(hot_hz, 5000000)},
        "wm": {"atoms": 10000, "e_c_uK": 2.0, "e_h_uK": 4.0},
        "ramp": {"e_c_final_uK": 0.1, "e_h_final_uK": 4.0, "cycles": 1000, "shape": "linear"},
        "run": dict(RUN_DEFAULTS),
    }


# "as-text" keeps the trap frequencies as assigned in the prose (cold 80 Hz,
# hot 150 Hz); "paper-repro" swaps them, which reproduces the quoted critical
# temperatures of 395 nK and 617 nK.
PRESETS = {
    "as-text": _preset(80.0, 150.0),
    "paper-repro": _preset(150.0, 80.0),
}


def preset_document(name):
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise ConfigError("preset", f"unknown preset {name!r}; "
                          f"choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class ParsedConfig:
    sim: SimConfig
    transport: Optional[SweepContext] = None
    g_ib: Optional[float] = None
    bath_density: Optional[float] = None


# -- validation helpers ---------------------------------------------------------

def _section(doc, key, path, required=True):
    if key not in doc:
        if required:
            raise ConfigError(f"{path}{key}", "missing required section")
        return None
    value = doc[key]
    if not isinstance(value, dict):
        raise ConfigError(f"{path}{key}", "must be a table")
    return value


def _reject_unknown(section, allowed, path):
    for key in section:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", "unknown key")


def _number(section, key, path, default=None, positive=True, integer=False):
    full = f"{path}.{key}"
    if key not in section:
        if default is None:
            raise ConfigError(full, "missing required key")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(full, f"must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(full, "must be finite")
    if integer and value != int(value):
        raise ConfigError(full, f"must be an integer, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(full, f"must be positive, got {value!r}")
    return int(value) if integer else float(value)


def _parse_bath(doc, label):
    path = f"baths.{label}"
    sec = doc[label] if isinstance(doc.get(label), dict) else None
    if sec is None:
        raise ConfigError(path, "missing required section")
    _reject_unknown(sec, _BATH_KEYS, path)
    atoms = _number(sec, "atoms", path)
    if atoms < 1:
        raise ConfigError(f"{path}.atoms", "must be >= 1")
    freq = _number(sec, "trap_freq_hz", path)
    temp = _number(sec, "temp_uK", path)
    if "species" in sec and "mass_kg" in sec:
        raise ConfigError(path, "give either species or mass_kg, not both")
    if "species" in sec:
        species = sec["species"]
        if species not in SPECIES_MASS:
            raise ConfigError(f"{path}.species",
                              f"unknown species {species!r}; use mass_kg instead")
        mass = SPECIES_MASS[species]
    elif "mass_kg" in sec:
        mass = _number(sec, "mass_kg", path)
    else:
        raise ConfigError(f"{path}.species", "missing required key (or mass_kg)")
    return BathState(n_at=atoms, omega_t=freq * TWO_PI, temp=temp * MICROKELVIN,
                     mass=mass, label=label)


def parse_config(doc):
    """Validate a config document (a mapping) and convert it to SI units."""
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "document must be a table")
    _reject_unknown(doc, _TOP_KEYS, "<root>")
    baths = _section(doc, "baths", "")
    _reject_unknown(baths, {"cold", "hot"}, "baths")
    cold = _parse_bath(baths, "cold")
    hot = _parse_bath(baths, "hot")

    wm_sec = _section(doc, "wm", "")
    _reject_unknown(wm_sec, _WM_KEYS, "wm")
    n_wm = _number(wm_sec, "atoms", "wm", integer=True)
    e_c_uk = _number(wm_sec, "e_c_uK", "wm")
    e_h_uk = _number(wm_sec, "e_h_uK", "wm")
    if e_c_uk > e_h_uk:
        raise ConfigError("wm.e_c_uK", "must not exceed wm.e_h_uK")

    ramp_sec = _section(doc, "ramp", "", required=False) or {}
    _reject_unknown(ramp_sec, _RAMP_KEYS, "ramp")
    e_c_final = _number(ramp_sec, "e_c_final_uK", "ramp", default=e_c_uk)
    e_h_final = _number(ramp_sec, "e_h_final_uK", "ramp", default=e_h_uk)
    cycles = _number(ramp_sec, "cycles", "ramp", default=1, integer=True)
    shape = ramp_sec.get("shape", "linear")
    if shape != "linear":
        raise ConfigError("ramp.shape", f"unsupported shape {shape!r}")
    if e_c_final > e_h_final:
        raise ConfigError("ramp.e_c_final_uK", "must not exceed ramp.e_h_final_uK")

    run_sec = _section(doc, "run", "", required=False) or {}
    _reject_unknown(run_sec, _RUN_KEYS, "run")
    halt = run_sec.get("halt_on_no_cooling", RUN_DEFAULTS["halt_on_no_cooling"])
    if not isinstance(halt, bool):
        raise ConfigError("run.halt_on_no_cooling", "must be true or false")

    try:
        sim = SimConfig(
            cold=cold,
            hot=hot,
            wm=WorkingMediumConfig(n_wm, e_c_uk * MICROKELVIN_ENERGY,
                                   e_h_uk * MICROKELVIN_ENERGY),
            ramp=RampSchedule(e_c_uk * MICROKELVIN_ENERGY, e_c_final * MICROKELVIN_ENERGY,
                              e_h_uk * MICROKELVIN_ENERGY, e_h_final * MICROKELVIN_ENERGY,
                              cycles, shape),
            max_cycles=_number(run_sec, "max_cycles", "run",
                               default=RUN_DEFAULTS["max_cycles"], integer=True),
            stop_mode_spacing_factor=_number(run_sec, "stop_factor", "run",
                                             default=RUN_DEFAULTS["stop_factor"]),
            cycle_time=_number(run_sec, "cycle_time_ms", "run",
                               default=RUN_DEFAULTS["cycle_time_ms"]) * MILLISECOND,
            max_intensity_ratio=_number(run_sec, "max_intensity_ratio", "run",
                                        default=RUN_DEFAULTS["max_intensity_ratio"]),
            halt_on_no_cooling=halt,
        )
    except DomainError as exc:
        raise ConfigError("<root>", str(exc)) from exc

    transport = g_ib = density = None
    tr_sec = _section(doc, "transport", "", required=False)
    if tr_sec is not None:
        _reject_unknown(tr_sec, _TRANSPORT_KEYS, "transport")
        speed = _number(tr_sec, "speed_um_s", "transport") * MICROMETER_PER_S
        v0 = _number(tr_sec, "v0_Jm", "transport")
        # the WM is moved through the cold bath
        transport = SweepContext(mass=cold.mass, omega_t=cold.omega_t, temp=cold.temp,
                                 speed=speed, v0=v0)
        if ("g_ib_Jm3" in tr_sec) != ("bath_density_m3" in tr_sec):
            raise ConfigError("transport", "g_ib_Jm3 and bath_density_m3 go together")
        if "g_ib_Jm3" in tr_sec:
            g_ib = _number(tr_sec, "g_ib_Jm3", "transport", positive=False)
            density = _number(tr_sec, "bath_density_m3", "transport", positive=False)
            if g_ib < 0 or density < 0:
                raise ConfigError("transport", "g_ib_Jm3 and bath_density_m3 "
                                  "must be non-negative")
    return ParsedConfig(sim=sim, transport=transport, g_ib=g_ib, bath_density=density)


def loads_config(text):
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError("<document>", f"not valid TOML: {exc}") from exc
    return parse_config(doc)


def load_document(path):
    """Raw (unvalidated) document from a TOML file."""
    with open(path, "rb") as fh:
        try:
            return tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError("<document>", f"{path}: not valid TOML: {exc}") from exc


def load_config(path):
    return parse_config(load_document(path))


# -- serialisation ----------------------------------------------------------------

def _species_of(mass):
    for name, m in SPECIES_MASS.items():
        if m == mass:
            return name
    return None


def _bath_to_doc(b):
    out = {
        "atoms": b.n_at,
        "trap_freq_hz": invert_scale(b.omega_t, TWO_PI),
        "temp_uK": invert_scale(b.temp, MICROKELVIN),
    }
    species = _species_of(b.mass)
    if species is None:
        out["mass_kg"] = b.mass
    else:
        out["species"] = species
    return out


def config_to_document(parsed):
    """Inverse of :func:`parse_config`; values re-parse to the same SI floats."""
    sim = parsed.sim if isinstance(parsed, ParsedConfig) else parsed
    uk = MICROKELVIN_ENERGY
    doc = {
        "baths": {"cold": _bath_to_doc(sim.cold), "hot": _bath_to_doc(sim.hot)},
        "wm": {"atoms": sim.wm.n_wm,
               "e_c_uK": invert_scale(sim.wm.e_c, uk),
               "e_h_uK": invert_scale(sim.wm.e_h, uk)},
        "ramp": {"e_c_final_uK": invert_scale(sim.ramp.e_c_final, uk),
                 "e_h_final_uK": invert_scale(sim.ramp.e_h_final, uk),
                 "cycles": sim.ramp.ramp_cycles,
                 "shape": sim.ramp.shape},
        "run": {"max_cycles": sim.max_cycles,
                "stop_factor": sim.stop_mode_spacing_factor,
                "cycle_time_ms": invert_scale(sim.cycle_time, MILLISECOND),
                "max_intensity_ratio": sim.max_intensity_ratio,
                "halt_on_no_cooling": sim.halt_on_no_cooling},
    }
    if isinstance(parsed, ParsedConfig) and parsed.transport is not None:
        tr = {"speed_um_s": invert_scale(parsed.transport.speed, MICROMETER_PER_S),
              "v0_Jm": parsed.transport.v0}
        if parsed.g_ib is not None:
            tr["g_ib_Jm3"] = parsed.g_ib
            tr["bath_density_m3"] = parsed.bath_density
        doc["transport"] = tr
    return doc


def _toml_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialise {v!r}")


def dumps_document(doc):
    """Write a (two-level nested) config document as TOML text."""
    lines = []

    def emit(prefix, table):
        scalars = {k: v for k, v in table.items() if not isinstance(v, dict)}
        if scalars:
            lines.append(f"[{prefix}]")
            lines.extend(f"{k} = {_toml_value(v)}" for k, v in scalars.items())
            lines.append("")
        for k, v in table.items():
            if isinstance(v, dict):
                emit(f"{prefix}.{k}", v)

    for key, table in doc.items():
        emit(key, table)
    return "\n".join(lines)


def dumps_config(parsed):
    return dumps_document(config_to_document(parsed))
