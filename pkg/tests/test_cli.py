import subprocess
import sys

import pytest

from otto_refrigerator import cli
from otto_refrigerator.config import dumps_document, preset_document
from otto_refrigerator.table import HEADER, read_trajectory


def write_doc(tmp_path, doc, name="c.toml"):
    path = tmp_path / name
    path.write_text(dumps_document(doc))
    return str(path)


def test_simulate_preset(tmp_path, capsys):
    out = tmp_path / "traj.csv"
    assert cli.main(["simulate", "--preset", "paper-repro", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "termination:         mode_spacing" in text
    assert "threshold crossing:  cycle" in text
    rows = read_trajectory(out)
    assert rows[-1]["T_c_nK"] < rows[-1]["T_crit_c_nK"]
    assert out.read_text().splitlines()[0] == HEADER
    rate = float(text.split("mean cooling rate:")[1].split()[0])
    assert 0.05 <= rate <= 0.5


def test_simulate_fixed_point(tmp_path, capsys):
    doc = preset_document("paper-repro")
    doc["baths"]["hot"]["temp_uK"] = 2.0
    del doc["ramp"]
    doc["run"]["max_cycles"] = 20
    path = write_doc(tmp_path, doc)
    assert cli.main(["simulate", "--config", path, "--out", str(tmp_path / "t.csv")]) == 0
    text = capsys.readouterr().out
    assert "threshold crossing:  none" in text
    assert "termination:         max_cycles" in text


def test_simulate_to_stdout(capsys, tmp_path):
    doc = preset_document("paper-repro")
    doc["run"]["max_cycles"] = 3
    assert cli.main(["simulate", "--config", write_doc(tmp_path, doc)]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == HEADER
    assert len(captured.out.splitlines()) == 4
    assert "cycles run" in captured.err


def test_validation_exit(tmp_path, capsys):
    doc = preset_document("paper-repro")
    doc["baths"]["cold"]["temp_uK"] = -1.0
    assert cli.main(["simulate", "--config", write_doc(tmp_path, doc)]) == 1
    assert "baths.cold.temp_uK" in capsys.readouterr().err
    assert cli.main(["simulate", "--config", str(tmp_path / "missing.toml")]) == 1
    bad = tmp_path / "bad.toml"
    bad.write_text("[baths\n")
    assert cli.main(["budget", "--config", str(bad)]) == 1
    assert cli.main(["simulate", "--config", str(bad), "--preset", "as-text"]) == 1


def test_runtime_exit(tmp_path, capsys):
    doc = preset_document("paper-repro")
    doc["baths"]["cold"]["atoms"] = 10
    doc["wm"]["atoms"] = 1_000_000
    assert cli.main(["simulate", "--config", write_doc(tmp_path, doc)]) == 2
    assert "runtime error" in capsys.readouterr().err


def test_oracle_compare_default(capsys):
    assert cli.main(["oracle-compare"]) == 0
    out = capsys.readouterr().out
    assert len([l for l in out.splitlines() if "e-" in l.split()[-1]]) >= 16
    dev = float(out.split("max relative deviation:")[1].split()[0])
    assert dev < 1e-8


def test_oracle_compare_single_point(capsys):
    assert cli.main(["oracle-compare", "--grid-y", "0.5", "--grid-zeta", "1"]) == 0
    row = capsys.readouterr().out.splitlines()[1].split()
    assert float(row[2]) == pytest.approx(0.38105836884520648, rel=1e-12)
    assert float(row[3]) == pytest.approx(0.38105836884520648, rel=1e-12)


def test_oracle_compare_precondition(capsys):
    assert cli.main(["oracle-compare", "--grid-y", "0.001,0.5", "--grid-zeta", "1"]) == 1
    assert "precondition error" in capsys.readouterr().out


def test_oracle_compare_detects_mismatch(monkeypatch, capsys):
    real = cli.na.transferred_energy_closed
    monkeypatch.setattr(cli.na, "transferred_energy_closed", lambda inp: real(inp) * (1 + 1e-6))
    assert cli.main(["oracle-compare", "--grid-y", "0.5", "--grid-zeta", "1"]) == 3


def test_budget_without_transport(capsys):
    assert cli.main(["budget", "--preset", "paper-repro"]) == 0
    captured = capsys.readouterr()
    assert "no [transport] section" in captured.err
    out = captured.out
    assert "E_R/k_B (Rb87, 780 nm): 181.1 nK" in out
    assert "quench energy: not configured" in out
    assert "transport: not configured" in out
    assert "[FAIL] spacing_ratio" in out


def test_budget_with_transport(tmp_path, capsys):
    doc = preset_document("as-text")
    doc["transport"] = {"speed_um_s": 1.0, "v0_Jm": 1e-40,
                        "g_ib_Jm3": 5e-38, "bath_density_m3": 1e19}
    assert cli.main(["budget", "--config", write_doc(tmp_path, doc)]) == 0
    out = capsys.readouterr().out
    # as-text preset: the cold Cs bath sits in the 80 Hz trap at 1 uK
    line = next(l for l in out.splitlines() if "u_a (cold" in l)
    assert 10.7 * 0.95 < float(line.split(":")[1].split()[0]) < 10.7 * 1.05
    assert "quench energy g N_WM n_bath: 5e-15 J" in out
    assert "[PASS] transport" in out


def test_sweep_order(tmp_path, capsys):
    values = [4.0, 3.0, 3.5]
    out = tmp_path / "sweep.csv"
    assert cli.main(["sweep", "--preset", "paper-repro", "--param", "wm.e_h_uK",
                     "--values", "4,3,3.5", "--workers", "2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("wm.e_h_uK,cycles")
    assert [float(l.split(",")[0]) for l in lines[1:]] == values
    serial = cli.sweep(preset_document("paper-repro"), "wm.e_h_uK", values, workers=1)
    parallel = cli.sweep(preset_document("paper-repro"), "wm.e_h_uK", values, workers=3)
    assert serial == parallel


def test_sweep_rejects_bad_value(capsys):
    assert cli.main(["sweep", "--param", "baths.cold.temp_uK", "--values", "1,-1"]) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "otto_refrigerator", "oracle-compare",
                          "--grid-y", "1", "--grid-zeta", "2"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0
    assert "max relative deviation" in res.stdout
