import math

import pytest
from hypothesis import given, settings, strategies as st

from otto_refrigerator.config import (
    RUN_DEFAULTS, config_to_document, dumps_config, dumps_document, load_config,
    loads_config, parse_config, preset_document)
from otto_refrigerator.constants import SPECIES_MASS, TWO_PI
from otto_refrigerator.engine import run_simulation
from otto_refrigerator.errors import ConfigError
from otto_refrigerator.table import (COLUMNS, HEADER, format_trajectory,
                                     parse_trajectory, read_trajectory, write_trajectory)

from conftest import UK, UK_E


def test_presets():
    repro = parse_config(preset_document("paper-repro")).sim
    assert repro.cold.n_at == 2e5 and repro.cold.omega_t == TWO_PI * 150.0
    assert repro.cold.temp == UK and repro.hot.omega_t == TWO_PI * 80.0
    text = parse_config(preset_document("as-text")).sim
    assert text.cold.omega_t == TWO_PI * 80.0 and text.hot.omega_t == TWO_PI * 150.0
    assert repro.wm.e_c == 2 * UK_E and repro.ramp.e_c_final == pytest.approx(0.1 * UK_E)
    assert repro.cold.mass == SPECIES_MASS["Cs133"]
    with pytest.raises(ConfigError):
        preset_document("nope")


def test_presets_are_copies():
    doc = preset_document("paper-repro")
    doc["wm"]["atoms"] = 1
    assert preset_document("paper-repro")["wm"]["atoms"] == 10_000


@pytest.mark.parametrize("path,value,needle", [
    (("baths", "cold", "temp_uK"), -1.0, "baths.cold.temp_uK"),
    (("baths", "hot", "atoms"), 0, "baths.hot.atoms"),
    (("wm", "atoms"), 1.5, "wm.atoms"),
    (("run", "max_cycles"), 0, "run.max_cycles"),
    (("run", "cycle_time_ms"), "ten", "run.cycle_time_ms"),
    (("run", "halt_on_no_cooling"), 1, "run.halt_on_no_cooling"),
    (("ramp", "shape"), "cubic", "ramp.shape"),
    (("baths", "cold", "species"), "Li7", "baths.cold.species"),
])
def test_errors_name_the_key(path, value, needle):
    doc = preset_document("paper-repro")
    node = doc
    for p in path[:-1]:
        node = node[p]
    node[path[-1]] = value
    with pytest.raises(ConfigError, match=needle.replace(".", r"\.")):
        parse_config(doc)


def test_unknown_and_missing_keys():
    doc = preset_document("paper-repro")
    doc["wm"]["e_x_uK"] = 1.0
    with pytest.raises(ConfigError, match=r"wm\.e_x_uK"):
        parse_config(doc)
    doc = preset_document("paper-repro")
    doc["extra"] = {}
    with pytest.raises(ConfigError, match="extra"):
        parse_config(doc)
    doc = preset_document("paper-repro")
    del doc["wm"]["e_h_uK"]
    with pytest.raises(ConfigError, match=r"wm\.e_h_uK"):
        parse_config(doc)
    doc = preset_document("paper-repro")
    del doc["baths"]["hot"]
    with pytest.raises(ConfigError, match=r"baths\.hot"):
        parse_config(doc)


def test_species_or_mass():
    doc = preset_document("paper-repro")
    doc["baths"]["cold"]["mass_kg"] = 1e-25
    with pytest.raises(ConfigError, match="not both"):
        parse_config(doc)
    del doc["baths"]["cold"]["species"]
    assert parse_config(doc).sim.cold.mass == 1e-25
    del doc["baths"]["cold"]["mass_kg"]
    with pytest.raises(ConfigError):
        parse_config(doc)


def test_run_defaults():
    doc = preset_document("paper-repro")
    del doc["run"]
    sim = parse_config(doc).sim
    assert sim.stop_mode_spacing_factor == 7.0
    assert sim.max_cycles == RUN_DEFAULTS["max_cycles"]
    assert sim.cycle_time == pytest.approx(10e-3, rel=1e-15)
    assert sim.max_intensity_ratio == 100.0 and sim.halt_on_no_cooling is False


def test_missing_ramp_means_fixed_spacings():
    doc = preset_document("paper-repro")
    del doc["ramp"]
    sim = parse_config(doc).sim
    assert sim.ramp.e_c_final == sim.wm.e_c and sim.ramp.e_h_final == sim.wm.e_h


def test_transport_section():
    doc = preset_document("paper-repro")
    doc["transport"] = {"speed_um_s": 1.0, "v0_Jm": 1e-40}
    parsed = parse_config(doc)
    assert parsed.transport.speed == pytest.approx(1e-6, rel=1e-15)
    assert parsed.transport.temp == parsed.sim.cold.temp
    assert parsed.g_ib is None
    doc["transport"]["g_ib_Jm3"] = 5e-38
    with pytest.raises(ConfigError, match="together"):
        parse_config(doc)
    doc["transport"]["bath_density_m3"] = 1e19
    assert parse_config(doc).bath_density == 1e19


def test_toml_errors():
    with pytest.raises(ConfigError, match="TOML"):
        loads_config("[baths\n")


def _assert_same(a, b):
    assert a.sim == b.sim
    assert a.transport == b.transport
    assert a.g_ib == b.g_ib and a.bath_density == b.bath_density


@pytest.mark.parametrize("name", ["paper-repro", "as-text"])
def test_round_trip_presets(name, tmp_path):
    parsed = parse_config(preset_document(name))
    _assert_same(loads_config(dumps_config(parsed)), parsed)
    path = tmp_path / "c.toml"
    path.write_text(dumps_config(parsed))
    _assert_same(load_config(path), parsed)


def test_round_trip_with_transport_and_mass():
    doc = preset_document("paper-repro")
    doc["transport"] = {"speed_um_s": 3.3, "v0_Jm": 1.7e-40,
                        "g_ib_Jm3": 5e-38, "bath_density_m3": 1e19}
    doc["baths"]["hot"].pop("species")
    doc["baths"]["hot"]["mass_kg"] = 1.23456789e-25
    parsed = parse_config(doc)
    _assert_same(loads_config(dumps_config(parsed)), parsed)


pos = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(freq=pos, temp=pos, e_c=pos, gap=pos, cyc=pos, speed=pos)
def test_round_trip_bit_exact(freq, temp, e_c, gap, cyc, speed):
    doc = preset_document("paper-repro")
    doc["baths"]["cold"]["trap_freq_hz"] = freq
    doc["baths"]["hot"]["temp_uK"] = temp
    doc["wm"]["e_c_uK"] = e_c
    doc["wm"]["e_h_uK"] = e_c + gap
    doc["ramp"] = {"e_c_final_uK": e_c, "e_h_final_uK": e_c + gap, "cycles": 3}
    doc["run"]["cycle_time_ms"] = cyc
    doc["transport"] = {"speed_um_s": speed, "v0_Jm": 1e-40}
    parsed = parse_config(doc)
    again = loads_config(dumps_config(parsed))
    _assert_same(again, parsed)


def test_dumps_document_format():
    text = dumps_document({"run": {"max_cycles": 3, "halt_on_no_cooling": True},
                           "baths": {"cold": {"species": "Cs133", "temp_uK": 0.5}}})
    assert "[run]\nmax_cycles = 3\nhalt_on_no_cooling = true" in text
    assert '[baths.cold]\nspecies = "Cs133"\ntemp_uK = 0.5' in text


# -- trajectory table ------------------------------------------------------------

@pytest.fixture(scope="module")
def short_traj():
    doc = preset_document("paper-repro")
    doc["run"]["max_cycles"] = 60
    return run_simulation(parse_config(doc).sim)


def test_header_exact(short_traj):
    text = format_trajectory(short_traj)
    assert text.splitlines()[0] == (
        "cycle,T_c_nK,T_h_nK,E_c_uK,E_h_uK,n_bar_c,n_bar_h,q_c_uKkB,w_in_uKkB,"
        "q_h_uKkB,w_out_uKkB,T_crit_c_nK,T_crit_h_nK,condensed_c,condensed_h,cooling_active")
    assert HEADER == text.splitlines()[0] and len(COLUMNS) == 16
    assert len(text.splitlines()) == 61


def test_row_format(short_traj):
    first = format_trajectory(short_traj).splitlines()[1].split(",")
    assert first[0] == "1"
    assert first[-3:] == ["0", "0", "1"]
    for field in first[1:-3]:
        digits = field.lstrip("-").split("e")[0].replace(".", "").lstrip("0")
        assert len(digits) <= 9


def test_byte_identical_files(tmp_path):
    cfg = parse_config(preset_document("paper-repro")).sim
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_trajectory(run_simulation(cfg), a)
    write_trajectory(run_simulation(cfg), b)
    assert a.read_bytes() == b.read_bytes()


def test_reparsed_rows_close_first_law(short_traj, tmp_path):
    path = tmp_path / "t.csv"
    write_trajectory(short_traj, path)
    rows = read_trajectory(path)
    assert len(rows) == len(short_traj)
    for row, rec in zip(rows, short_traj.records):
        terms = [row[k] for k in ("q_c_uKkB", "w_in_uKkB", "q_h_uKkB", "w_out_uKkB")]
        assert abs(math.fsum(terms)) <= 1e-8 * max(map(abs, terms))
        assert row["T_c_nK"] == pytest.approx(rec.T_c / 1e-9, rel=1e-8)
        assert row["cycle"] == rec.cycle


def test_bad_header():
    with pytest.raises(ValueError):
        parse_trajectory("a,b\n1,2\n")
