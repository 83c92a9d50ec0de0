"""Command-line interface.

Exit status: 0 success, 1 validation error, 2 runtime/physics error,
3 oracle cross-check failure.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
import copy
import logging
import sys

from . import nonadiabatic as na
from .config import PRESETS, load_config, load_document, parse_config, preset_document
from .constants import K_B, NANOKELVIN, SPECIES_MASS
from .engine import feasibility_report, run_simulation
from .errors import ConfigError, ConvergenceError, DomainError, PhysicsError
from .table import format_trajectory, write_trajectory

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_CHECK_FAILED = 3

ORACLE_RTOL = 1e-8
DEFAULT_GRID_Y = (0.05, 0.1, 0.5, 1.0)
DEFAULT_GRID_ZETA = (0.5, 1.0, 2.0, 5.0)

# WM optics for the recoil budget (Rb confined near its D2 line)
WM_SPECIES = "Rb87"
WM_WAVELENGTH = 780e-9
WM_SCATTER_RATE = 3.0


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _load(args):
    if args.config and args.preset:
        raise ConfigError("--config", "use either --config or --preset")
    if args.config:
        return load_config(args.config)
    return parse_config(preset_document(args.preset or "paper-repro"))


def _summary(traj, cycle_time):
    final = traj.final
    crossing = traj.threshold_crossing_cycle()
    rate = traj.mean_cooling_rate(cycle_time) / NANOKELVIN * 1e-3
    lines = [
        f"cycles run:          {len(traj)}",
        f"termination:         {traj.termination}",
        f"final T_c:           {final.T_c / NANOKELVIN:.4f} nK" if final else "final T_c: n/a",
        f"final T_h:           {final.T_h / NANOKELVIN:.4f} nK" if final else "final T_h: n/a",
        f"T_crit (cold bath):  {final.T_crit_c / NANOKELVIN:.4f} nK" if final else "",
        "threshold crossing:  " + ("none" if crossing is None else f"cycle {crossing}"),
        f"mean cooling rate:   {rate:.4g} nK/ms at {cycle_time * 1e3:g} ms per cycle",
        f"warnings:            {len(traj.warnings)}",
    ]
    return [line for line in lines if line]


def cmd_simulate(args):
    parsed = _load(args)
    traj = run_simulation(parsed.sim)
    if args.out in (None, "-"):
        sys.stdout.write(format_trajectory(traj))
    else:
        write_trajectory(traj, args.out)
    out = sys.stderr if args.out in (None, "-") else sys.stdout
    for line in _summary(traj, parsed.sim.cycle_time):
        print(line, file=out)
    return EXIT_OK


def oracle_compare(grid_y, grid_zeta):
    """Evaluate both series on a grid; returns ``(rows, max_dev, n_errors)``."""
    rows = []
    max_dev = 0.0
    n_err = 0
    for y in grid_y:
        for zeta in grid_zeta:
            try:
                inp = na.NonadiabaticInput(y, zeta)
                brute = na.transferred_energy_bruteforce(inp)
                closed = na.transferred_energy_closed(inp)
            except (DomainError, ConvergenceError) as exc:
                rows.append((y, zeta, None, None, None, str(exc)))
                n_err += 1
                continue
            dev = abs(brute - closed) / closed
            max_dev = max(max_dev, dev)
            rows.append((y, zeta, brute, closed, dev, ""))
    return rows, max_dev, n_err


def cmd_oracle_compare(args):
    rows, max_dev, n_err = oracle_compare(args.grid_y, args.grid_zeta)
    print(f"{'y':>8} {'zeta':>8} {'S_double_sum':>24} {'S_bessel':>24} {'rel_dev':>10}")
    for y, zeta, brute, closed, dev, err in rows:
        if err:
            print(f"{y:8.4g} {zeta:8.4g}   precondition error: {err}")
        else:
            print(f"{y:8.4g} {zeta:8.4g} {brute:24.17g} {closed:24.17g} {dev:10.3e}")
    print(f"max relative deviation: {max_dev:.3e} (tolerance {ORACLE_RTOL:g})")
    if max_dev > ORACLE_RTOL:
        return EXIT_CHECK_FAILED
    return EXIT_VALIDATION if n_err else EXIT_OK


def budget_lines(parsed):
    sim = parsed.sim
    lines = []
    wm_mass = SPECIES_MASS[WM_SPECIES]
    e_r = na.recoil_energy(wm_mass, WM_WAVELENGTH)
    stroke = sim.cycle_time / 4.0
    q_sp = na.recoil_heating(wm_mass, WM_WAVELENGTH, WM_SCATTER_RATE, stroke)
    lines.append(f"recoil energy E_R/k_B ({WM_SPECIES}, {WM_WAVELENGTH * 1e9:g} nm): "
                 f"{e_r / K_B / NANOKELVIN:.4g} nK")
    lines.append(f"recoil heat per stroke (gamma = {WM_SCATTER_RATE:g} Hz, "
                 f"tau = {stroke * 1e3:g} ms): {q_sp / K_B / NANOKELVIN:.4g} nK")
    for b in (sim.cold, sim.hot):
        ctx = na.SweepContext(b.mass, b.omega_t, b.temp, speed=1.0, v0=1.0)
        u_a = na.adiabatic_velocity(ctx)
        lines.append(f"adiabatic velocity u_a ({b.label} bath, initial T): "
                     f"{u_a * 1e6:.4g} um/s")
    if parsed.transport is None:
        lines.append("transport speed check: not configured")
        lines.append("quench energy: not configured")
    else:
        if parsed.g_ib is None:
            lines.append("quench energy: not configured")
        else:
            dE = na.quench_energy(parsed.g_ib, sim.wm.n_wm, parsed.bath_density)
            lines.append(f"quench energy g N_WM n_bath: {dE:.4g} J "
                         f"({dE / K_B / NANOKELVIN:.4g} nK k_B)")
    report = feasibility_report(sim, parsed.transport, wm_mass=wm_mass,
                                wavelength=WM_WAVELENGTH, gamma=WM_SCATTER_RATE,
                                stroke_time=stroke)
    lines.append("feasibility:")
    lines.extend("  " + line for line in report.lines())
    return lines


def cmd_budget(args):
    parsed = _load(args)
    if parsed.transport is None:
        print("warning: no [transport] section; transport rows disabled", file=sys.stderr)
    for line in budget_lines(parsed):
        print(line)
    return EXIT_OK


def _set_key(doc, dotted, value):
    parts = dotted.split(".")
    node = doc
    for p in parts[:-1]:
        if p not in node or not isinstance(node[p], dict):
            node[p] = {}
        node = node[p]
    node[parts[-1]] = value


def _sweep_one(doc):
    traj = run_simulation(parse_config(doc).sim)
    final = traj.final
    return (len(traj), traj.termination, traj.threshold_crossing_cycle(),
            final.T_c if final else float("nan"), final.T_h if final else float("nan"))


def sweep(doc, key, values, workers=1):
    """Independent runs over one config key; results in the order of ``values``."""
    docs = []
    for v in values:
        d = copy.deepcopy(doc)
        _set_key(d, key, v)
        parse_config(d)  # fail fast on invalid values
        docs.append(d)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, docs))
    else:
        results = [_sweep_one(d) for d in docs]
    return list(zip(values, results))


def cmd_sweep(args):
    if args.config:
        doc = load_document(args.config)
    else:
        doc = preset_document(args.preset or "paper-repro")
    rows = sweep(doc, args.param, args.values, args.workers)
    lines = [f"{args.param},cycles,termination,crossing_cycle,T_c_final_nK,T_h_final_nK"]
    for v, (n, term, cross, tc, th) in rows:
        lines.append(f"{v:.9g},{n},{term},{'' if cross is None else cross},"
                     f"{tc / NANOKELVIN:.9g},{th / NANOKELVIN:.9g}")
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="otto-fridge",
        description="Quantized Otto refrigerator for a two-species cold-atom mixture.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("--config", metavar="PATH", help="TOML configuration file")
        p.add_argument("--preset", choices=sorted(PRESETS),
                       help="bundled configuration (default: paper-repro)")

    p = sub.add_parser("simulate", help="run the refrigeration cycle")
    add_source(p)
    p.add_argument("--out", metavar="PATH", help="trajectory CSV (default: stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle-compare", help="cross-check the two transferred-energy series")
    p.add_argument("--grid-y", type=_float_list, default=list(DEFAULT_GRID_Y), metavar="LIST")
    p.add_argument("--grid-zeta", type=_float_list, default=list(DEFAULT_GRID_ZETA),
                   metavar="LIST")
    p.set_defaults(func=cmd_oracle_compare)

    p = sub.add_parser("budget", help="recoil, adiabaticity and feasibility budget")
    add_source(p)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("sweep", help="run independent simulations over one config key")
    add_source(p)
    p.add_argument("--param", required=True, metavar="KEY",
                   help="dotted config key, e.g. wm.e_h_uK")
    p.add_argument("--values", required=True, type=_float_list, metavar="LIST")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="PATH", help="summary CSV (default: stdout)")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (PhysicsError, ConvergenceError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
