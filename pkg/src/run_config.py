#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# run_config.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import fields
import json
import logging
import math
from typing import Optional
from typing import get_args

from src.material import MaterialParams
from src.quadrature import QuadratureSettings
from src.sweep import DEFAULT_STEPS
from src.sweep import GridSpec


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Run configuration of the command-line front end.

A :class:`RunConfig` is resolved from three sources, later ones winning:

1.  the dataclass defaults (lambda_so = 30 meV, T_h = 40 K, T_c = 30 K,
    rel_tol = 1e-9, one worker);
2.  a JSON object file given with ``--config`` whose keys are RunConfig
    field names;
3.  command-line flags.

Unknown keys and missing per-command fields raise :class:`ConfigError`
before anything is computed. ``RunConfig.to_json`` is what ``--dump-config``
prints; feeding it back through ``--config`` reproduces the run.
"""
__all__ = [
    "COMMANDS",
    "ConfigError",
    "RunConfig",
    "build_config",
    "load_config_file",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

COMMANDS = ("gap", "bands", "phase", "otto", "stirling", "map", "curve")
'''tuple : Subcommands of the CLI.'''

CURVE_AXES = ("u_cold", "u_hot", "t_hot", "t_cold")
'''tuple : Parameters a curve may sweep.'''

REQUIRED = {
    "gap": ("u",),
    "phase": ("u",),
    "bands": ("u", "start", "stop"),
    "otto": ("u_hot", "u_cold"),
    "stirling": ("u_hot", "u_cold"),
    "map": ("start", "stop"),
    "curve": ("axis", "start", "stop"),
}
'''dict : Fields that must be set for each command.'''

DEFAULT_FORMATS = {
    "gap": "text",
    "phase": "text",
    "bands": "csv",
    "otto": "json",
    "stirling": "json",
    "map": "csv",
    "curve": "csv",
}
'''dict : Output format used when none is configured.'''

ALLOWED_FORMATS = {
    "gap": ("text", "json"),
    "phase": ("text", "json"),
    "bands": ("csv", "json"),
    "otto": ("json",),
    "stirling": ("json",),
    "map": ("csv", "json"),
    "curve": ("csv", "json"),
}
'''dict : Output formats each command can write.'''


###############################################################################
# CLASSES
###############################################################################
class ConfigError(ValueError):
    """Invalid, incomplete or unknown configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs.

    Attributes
    ----------
    command : str
        One of :data:`COMMANDS`.
    lambda_so, include_valence
        Material parameters.
    u : float, optional
        Field potential of ``gap``, ``phase`` and ``bands`` (meV).
    t_hot, t_cold, u_hot, u_cold
        Cycle parameters (K, meV). The one named by ``axis`` is ignored.
    cycle, quantity, axis
        Curve selection.
    start, stop, steps
        Swept grid (momentum for ``bands``, u_cold for ``map``).
    hot_start, hot_stop, hot_steps
        u_hot grid of ``map``; defaults to the u_cold grid.
    rel_tol, abs_tol, threads
        Numerics.
    output, format
        Destination (stdout when None) and format.
    v_f : float, optional
        Fermi velocity in m/s; when set, densities are written in J/m^2.
    """
    command: str
    lambda_so: float = 30.0
    include_valence: bool = True
    u: Optional[float] = None
    t_hot: float = 40.0
    t_cold: float = 30.0
    u_hot: Optional[float] = None
    u_cold: Optional[float] = None
    cycle: str = "otto"
    quantity: str = "work"
    axis: Optional[str] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    steps: int = DEFAULT_STEPS
    hot_start: Optional[float] = None
    hot_stop: Optional[float] = None
    hot_steps: Optional[int] = None
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    threads: int = 1
    output: Optional[str] = None
    format: Optional[str] = None
    v_f: Optional[float] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(
                f"unknown command '{self.command}', expected one of "
                f"{', '.join(COMMANDS)}"
            )
        for f in fields(self):
            _check_type(f.name, getattr(self, f.name), f.type)

        missing = [
            name for name in REQUIRED[self.command]
            if getattr(self, name) is None
            and not (self.command == "curve" and name == self.axis)
        ]
        if self.command == "curve":
            if self.axis is not None and self.axis not in CURVE_AXES:
                raise ConfigError(
                    f"curve axis must be one of {', '.join(CURVE_AXES)}, got "
                    f"'{self.axis}'"
                )
            missing += [
                name for name in ("u_hot", "u_cold")
                if name != self.axis and getattr(self, name) is None
            ]
        if missing:
            raise ConfigError(
                f"command '{self.command}' requires: {', '.join(missing)}"
            )

        if self.cycle not in ("otto", "stirling"):
            raise ConfigError(
                f"cycle must be otto or stirling, got '{self.cycle}'"
            )
        if self.quantity not in ("work", "efficiency"):
            raise ConfigError(
                f"quantity must be work or efficiency, got '{self.quantity}'"
            )
        if self.format is not None \
                and self.format not in ALLOWED_FORMATS[self.command]:
            raise ConfigError(
                f"command '{self.command}' cannot write format "
                f"'{self.format}'"
            )
        if self.threads < 1:
            raise ConfigError(
                f"threads must be at least 1, got {self.threads}"
            )

        # Delegate range checks to the value objects.
        try:
            self.material()
            self.quadrature()
            self.grids()
        except ValueError as e:
            raise ConfigError(str(e)) from e

    @property
    def output_format(self):
        return self.format or DEFAULT_FORMATS[self.command]

    def material(self):
        return MaterialParams(self.lambda_so, self.include_valence)

    def quadrature(self):
        return QuadratureSettings(rel_tol=self.rel_tol, abs_tol=self.abs_tol)

    def grids(self):
        """The swept grid and, for ``map``, the u_hot grid (else None)."""
        if self.start is None or self.stop is None:
            return None, None
        grid = GridSpec(self.start, self.stop, self.steps)
        if self.command != "map":
            return grid, None
        hot = GridSpec(
            self.start if self.hot_start is None else self.hot_start,
            self.stop if self.hot_stop is None else self.hot_stop,
            self.steps if self.hot_steps is None else self.hot_steps,
        )
        return grid, hot

    def to_json(self):
        """Resolved configuration as sorted, indented JSON."""
        return json.dumps(asdict(self), indent=2, sort_keys=True)


###############################################################################
# FUNCTIONS
###############################################################################
def _check_type(name, x, annotation):
    """Helper function validating JSON/flag value types."""
    args = get_args(annotation)
    if x is None:
        if type(None) in args:
            return
        raise ConfigError(f"{name} must not be null")
    base = next((a for a in args if a is not type(None)), annotation)
    if base is bool:
        ok = isinstance(x, bool)
    elif base is int:
        ok = isinstance(x, int) and not isinstance(x, bool)
    elif base is float:
        ok = (isinstance(x, (int, float)) and not isinstance(x, bool)
              and math.isfinite(x))
    else:
        ok = isinstance(x, base)
    if not ok:
        raise ConfigError(f"invalid value for {name}: {x!r}")



def load_config_file(path):
    """
    Read a JSON configuration object.

    Parameters
    ----------
    path : str

    Returns
    -------
    dict

    Raises
    ------
    ConfigError
        Not valid JSON, not an object, or unknown keys.
    OSError
        The file cannot be read.
    """
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    _reject_unknown(data, f"config file {path}")
    logger.debug("Loaded config keys %s from %s", sorted(data), path)
    return data


def _reject_unknown(values, source):
    """Helper function raising on keys that are not RunConfig fields."""
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"unknown keys in {source}: {', '.join(unknown)}")


def build_config(command, file_values=None, flag_values=None):
    """
    Merge defaults, file values and flags into a RunConfig.

    Parameters
    ----------
    command : str
        The subcommand; it overrides any ``command`` key of the file.
    file_values, flag_values : dict, optional
        Flags win over the file.

    Returns
    -------
    RunConfig

    Raises
    ------
    ConfigError
    """
    merged = dict(file_values or {})
    merged.update(flag_values or {})
    _reject_unknown(merged, "configuration")
    merged["command"] = command
    return RunConfig(**merged)
