"""Trajectory table: one CSV row per completed cycle."""

import csv
import io

from .constants import MICROKELVIN_ENERGY, NANOKELVIN

HEADER = ("cycle,T_c_nK,T_h_nK,E_c_uK,E_h_uK,n_bar_c,n_bar_h,q_c_uKkB,w_in_uKkB,"
          "q_h_uKkB,w_out_uKkB,T_crit_c_nK,T_crit_h_nK,condensed_c,condensed_h,"
          "cooling_active")
COLUMNS = tuple(HEADER.split(","))
_FLAGS = {"condensed_c", "condensed_h", "cooling_active"}


def _num(x):
    return f"{x:.9g}"


def record_row(rec):
    uk = MICROKELVIN_ENERGY
    nk = NANOKELVIN
    return [
        str(rec.cycle),
        _num(rec.T_c / nk), _num(rec.T_h / nk),
        _num(rec.E_c / uk), _num(rec.E_h / uk),
        _num(rec.n_bar_c), _num(rec.n_bar_h),
        _num(rec.q_c / uk), _num(rec.w_in / uk), _num(rec.q_h / uk), _num(rec.w_out / uk),
        _num(rec.T_crit_c / nk), _num(rec.T_crit_h / nk),
        str(int(rec.condensed_c)), str(int(rec.condensed_h)), str(int(rec.cooling_active)),
    ]


def format_trajectory(trajectory):
    lines = [HEADER]
    lines.extend(",".join(record_row(r)) for r in trajectory.records)
    return "\n".join(lines) + "\n"


def write_trajectory(trajectory, path):
    with open(path, "w", newline="") as fh:
        fh.write(format_trajectory(trajectory))


def parse_trajectory(text):
    """Rows of a trajectory table as dicts (ints for cycle and flags, floats otherwise)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError("unexpected trajectory header")
    rows = []
    for raw in reader:
        row = {}
        for key, val in zip(COLUMNS, raw):
            row[key] = int(val) if key == "cycle" or key in _FLAGS else float(val)
        rows.append(row)
    return rows


def read_trajectory(path):
    with open(path) as fh:
        return parse_trajectory(fh.read())
