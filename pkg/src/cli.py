#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cli.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
import argparse
from dataclasses import replace
import logging
import sys
from typing import List
from typing import Optional

import pandas as pd

from src.cycles import CycleConsistencyError
from src.cycles import CycleKind
from src.cycles import OttoSpec
from src.cycles import StirlingSpec
from src.cycles import otto_report
from src.cycles import stirling_report
from src.emit_results import emit_csv
from src.emit_results import emit_json
from src.emit_results import emit_text
from src.emit_results import format_number
from src.material import band_gap
from src.material import band_structure
from src.material import classify_phase
from src.run_config import COMMANDS
from src.run_config import ConfigError
from src.run_config import build_config
from src.run_config import load_config_file
from src.sweep import CurveSpec
from src.sweep import cycle_curves
from src.sweep import otto_work_map
from src.unit_conversions import SIConversion
from src.unit_conversions import to_si


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Command-line front end.

Run as ``python -m src.cli <command> [options]``. Commands:

-   ``gap``, ``phase``: band gap and phase at one field potential.
-   ``bands``: the two positive bands over a momentum grid.
-   ``otto``, ``stirling``: JSON report of one cycle.
-   ``map``: Otto work over a (u_cold, u_hot) grid.
-   ``curve``: work or efficiency of either cycle along one swept parameter.

Exit codes: 0 success, 2 usage or configuration error, 3 numerical
non-convergence or inconsistent Stirling work, 4 output could not be written.

Examples:

.. code-block:: bash

    python -m src.cli gap --lambda-so 30 --u 30
    python -m src.cli otto --t-hot 40 --t-cold 30 --u-hot 33 --u-cold 30
    python -m src.cli curve --cycle stirling --axis u_cold --u-hot 40 \\
        --start 20 --stop 40 --steps 81 --threads 4 -o fig8a.csv
"""
__all__ = [
    "build_parser",
    "execute",
    "run",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

PROG = "stanene-cycles"
'''str : Program name in usage messages.'''

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICS = 3
EXIT_IO = 4

_NON_CONFIG = ("command", "config", "dump_config", "verbose")


###############################################################################
# FUNCTIONS
###############################################################################
def _common_parser():
    """Helper function for options shared by every command.

    Every default is SUPPRESS so that only flags actually given reach the
    merged configuration.
    """
    common = argparse.ArgumentParser(
        add_help=False, argument_default=argparse.SUPPRESS
    )
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument(
        "--dump-config", action="store_true",
        help="print the resolved configuration as JSON and exit"
    )
    common.add_argument("-o", "--output", help="output file (default stdout)")
    common.add_argument("--format", choices=("text", "csv", "json"))
    common.add_argument(
        "--lambda-so", dest="lambda_so", type=float,
        help="spin-orbit coupling, meV (default 30)"
    )
    common.add_argument(
        "--positive-bands-only", dest="include_valence",
        action="store_const", const=False,
        help="drop the doubling from the renormalised valence bands"
    )
    common.add_argument("--rel-tol", dest="rel_tol", type=float)
    common.add_argument("--abs-tol", dest="abs_tol", type=float)
    common.add_argument(
        "--threads", type=int, help="worker processes for sweeps"
    )
    common.add_argument(
        "--v-f", dest="v_f", type=float,
        help="Fermi velocity in m/s; write densities in J/m^2"
    )
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def _add_cycle_options(sub, fields):
    for name in fields:
        unit = "K" if name.startswith("t_") else "meV"
        sub.add_argument(
            "--" + name.replace("_", "-"), dest=name, type=float,
            help=f"{name} ({unit})"
        )


def _add_grid_options(sub, hot=False):
    sub.add_argument("--start", type=float)
    sub.add_argument("--stop", type=float)
    sub.add_argument("--steps", type=int)
    if hot:
        sub.add_argument("--hot-start", dest="hot_start", type=float)
        sub.add_argument("--hot-stop", dest="hot_stop", type=float)
        sub.add_argument("--hot-steps", dest="hot_steps", type=int)


def build_parser():
    """Argument parser with one subcommand per :data:`COMMANDS` entry."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Quantum Otto and Stirling cycles with a stanene "
                    "working substance",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    helps = {
        "gap": "band gap at field potential u",
        "bands": "positive bands over a momentum grid",
        "phase": "topological phase at field potential u",
        "otto": "quantum Otto cycle report",
        "stirling": "Stirling cycle report",
        "map": "Otto positive-work map over (u_cold, u_hot)",
        "curve": "work or efficiency along one swept parameter",
    }
    for command in COMMANDS:
        sub = subs.add_parser(
            command, parents=[common], help=helps[command],
            argument_default=argparse.SUPPRESS,
        )
        if command in ("gap", "phase", "bands"):
            sub.add_argument("--u", type=float, help="field potential (meV)")
        if command == "bands":
            _add_grid_options(sub)
        if command in ("otto", "stirling", "curve"):
            _add_cycle_options(sub, ("t_hot", "t_cold", "u_hot", "u_cold"))
        if command == "map":
            _add_cycle_options(sub, ("t_hot", "t_cold"))
            _add_grid_options(sub, hot=True)
        if command == "curve":
            sub.add_argument("--cycle", choices=("otto", "stirling"))
            sub.add_argument("--quantity", choices=("work", "efficiency"))
            sub.add_argument(
                "--axis", choices=("u_cold", "u_hot", "t_hot", "t_cold")
            )
            _add_grid_options(sub)
    return parser


def _scaled(x, conv):
    """Helper function applying the SI conversion when requested."""
    if conv is None or x is None:
        return x
    return to_si(x, conv)


def _report_dict(report, conv):
    """Helper function converting a CycleReport for output."""
    d = report.to_dict()
    d["units"] = "J/m^2" if conv else "meV^3"
    if conv is None:
        return d
    for key in ("work", "q_in", "q_out"):
        d[key] = _scaled(d[key], conv)
    d["strokes"] = {k: _scaled(v, conv) for k, v in d["strokes"].items()}
    d["numerics"]["error_estimate"] = _scaled(
        d["numerics"]["error_estimate"], conv
    )
    d["numerics"]["cross_check"] = _scaled(d["numerics"]["cross_check"], conv)
    for corner in d.get("corners", {}).values():
        for key in ("internal_energy", "entropy", "grand_term"):
            corner[key] = _scaled(corner[key], conv)
    return d


def _run_cycle(cfg, p, q, conv):
    kind = CycleKind(cfg.command)
    if kind is CycleKind.OTTO:
        spec = OttoSpec(cfg.t_hot, cfg.t_cold, cfg.u_hot, cfg.u_cold)
        report = otto_report(spec, p, q)
    else:
        spec = StirlingSpec(cfg.t_hot, cfg.t_cold, cfg.u_hot, cfg.u_cold)
        report = stirling_report(spec, p, q)
    emit_json(_report_dict(report, conv), cfg.output)
    return report.numerics.converged


def _run_map(cfg, p, q, conv):
    grid_cold, grid_hot = cfg.grids()
    work_map = otto_work_map(
        grid_cold, grid_hot, cfg.t_hot, cfg.t_cold, p, q,
        workers=cfg.threads,
    )
    if conv is not None:
        work_map = replace(
            work_map,
            values=to_si(work_map.values, conv),
            errors=to_si(work_map.errors, conv),
        )
    if cfg.output_format == "csv":
        emit_csv(work_map, cfg.output)
    else:
        emit_json({
            "u_cold": grid_cold.nodes(),
            "u_hot": grid_hot.nodes(),
            "work": work_map.values,
            "sign": work_map.signs,
            "mode_counts": work_map.mode_counts(),
            "meta": work_map.meta,
        }, cfg.output)
    return work_map.converged


def _run_curve(cfg, p, q, conv):
    holes = {
        name: getattr(cfg, name)
        for name in ("t_hot", "t_cold", "u_hot", "u_cold")
    }
    holes[cfg.axis] = None
    grid, _ = cfg.grids()
    work, efficiency = cycle_curves(
        CycleKind(cfg.cycle), CurveSpec(**holes), grid, p, q,
        workers=cfg.threads,
    )
    curve = work if cfg.quantity == "work" else efficiency
    if conv is not None and cfg.quantity == "work":
        curve = replace(curve, values=to_si(curve.values, conv))
    if cfg.output_format == "csv":
        emit_csv(curve, cfg.output)
    else:
        emit_json({
            "axis": curve.axis,
            "quantity": curve.quantity,
            "abscissa": curve.abscissa,
            "values": curve.values,
            "meta": curve.meta,
        }, cfg.output)
    return curve.converged


def execute(cfg):
    """
    Compute and write the result of one resolved configuration.

    Parameters
    ----------
    cfg : RunConfig

    Returns
    -------
    bool
        False when a quadrature was flagged as not converged.

    Raises
    ------
    ValueError
        Invalid physical input.
    CycleConsistencyError
        Stirling work paths disagree.
    OSError
        The output cannot be written.
    """
    p = cfg.material()
    q = cfg.quadrature()
    conv = SIConversion(cfg.v_f) if cfg.v_f is not None else None
    fmt = cfg.output_format
    logger.info("Running %s", cfg.command)

    if cfg.command == "gap":
        gap = band_gap(cfg.u, p)
        if fmt == "text":
            emit_text(format_number(gap), cfg.output)
        else:
            emit_json(
                {"u": cfg.u, "lambda_so": p.lambda_so, "gap": gap},
                cfg.output,
            )
        return True

    if cfg.command == "phase":
        phase = classify_phase(cfg.u, p)
        if fmt == "text":
            emit_text(phase.value, cfg.output)
        else:
            emit_json({
                "u": cfg.u,
                "lambda_so": p.lambda_so,
                "phase": phase.value,
                "gap": band_gap(cfg.u, p),
            }, cfg.output)
        return True

    if cfg.command == "bands":
        grid, _ = cfg.grids()
        if grid.start < 0:
            raise ValueError(
                f"momentum grid must start at k >= 0, got {grid.start}"
            )
        k = grid.nodes()
        e1, e2 = band_structure(k, cfg.u, p)
        frame = pd.DataFrame({"k_meV": k, "e1_meV": e1, "e2_meV": e2})
        if fmt == "csv":
            emit_csv(frame, cfg.output)
        else:
            emit_json(
                {"u": cfg.u, "k": k, "e1": e1, "e2": e2}, cfg.output
            )
        return True

    if cfg.command in ("otto", "stirling"):
        return _run_cycle(cfg, p, q, conv)
    if cfg.command == "map":
        return _run_map(cfg, p, q, conv)
    return _run_curve(cfg, p, q, conv)


def _fail(message):
    print(f"{PROG}: error: {message}", file=sys.stderr)


def run(argv: Optional[List[str]] = None):
    """
    Parse ``argv``, run the command and return the exit code.

    Parameters
    ----------
    argv : list of str, optional
        Arguments without the program name; ``sys.argv[1:]`` when None.

    Returns
    -------
    int
        0 success, 2 usage/config error, 3 non-convergence or inconsistent
        cycle, 4 I/O failure.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        # argparse has already printed usage to stderr.
        return EXIT_OK if not e.code else EXIT_USAGE

    values = vars(args)
    command = values["command"]
    config_path = values.get("config")
    dump = values.get("dump_config", False)
    logging.basicConfig(
        level=logging.DEBUG if values.get("verbose") else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    flags = {k: v for k, v in values.items() if k not in _NON_CONFIG}

    try:
        file_values = load_config_file(config_path) if config_path else {}
        cfg = build_config(command, file_values, flags)
    except (ConfigError, OSError) as e:
        _fail(e)
        return EXIT_USAGE

    if dump:
        emit_text(cfg.to_json())
        return EXIT_OK

    try:
        converged = execute(cfg)
    except CycleConsistencyError as e:
        _fail(e)
        return EXIT_NUMERICS
    except OSError as e:
        _fail(f"cannot write output: {e}")
        return EXIT_IO
    except ValueError as e:
        _fail(e)
        return EXIT_USAGE

    if not converged:
        _fail("numerical integration did not converge; output is flagged")
        return EXIT_NUMERICS
    return EXIT_OK


###############################################################################
# MAIN
###############################################################################
if __name__ == "__main__":
    sys.exit(run())
