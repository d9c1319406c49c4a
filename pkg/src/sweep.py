#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# sweep.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from functools import partial
import logging
import math
from multiprocessing import Pool
from multiprocessing import cpu_count
from typing import List
from typing import Optional

import numpy as np
import pandas as pd

from src.cycles import CycleKind
from src.cycles import OttoSpec
from src.cycles import StirlingSpec
from src.cycles import otto_report
from src.cycles import stirling_report
from src.material import band_gap
from src.quadrature import DEFAULT_SETTINGS


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Parameter Sweep Module

This module evaluates cycles on uniform grids of field potentials or
temperatures and turns the results into figure-ready tables.

**Assumptions**

-   Grids include both endpoints; with 161 nodes on [0, 40] meV the spacing is
    0.25 meV and the critical field 30 meV is a node.
-   Nodes are independent. They are evaluated serially or with a
    :class:`multiprocessing.Pool`; ``Pool.map`` returns results in grid order,
    so the output does not depend on the number of workers.

**Logic**

1.  A :class:`CurveSpec` fixes three of the four cycle parameters and leaves
    the swept one as None.
2.  Every grid node is turned into an OttoSpec or StirlingSpec and handed to
    the cycle report.
3.  Work, efficiency (NaN where absent), error estimate and mode are stored
    by node index in :class:`Curve` or :class:`WorkMap`.

Main Functions:

-   :func:`otto_work_map`: positive-work domain over (u_cold, u_hot).
-   :func:`work_curve`, :func:`efficiency_curve`, :func:`cycle_curves`
-   :func:`locate_extrema`: discrete three-point extremum finder.
-   :func:`gap_curve`, :func:`count_sign_changes`
"""
__all__ = [
    "Curve",
    "CurveSpec",
    "ExtremumReport",
    "GridSpec",
    "WorkMap",
    "count_sign_changes",
    "cycle_curves",
    "efficiency_curve",
    "gap_curve",
    "locate_extrema",
    "otto_work_map",
    "work_curve",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

DEFAULT_STEPS = 161
'''int : Default nodes per axis (0.25 meV on [0, 40] meV).'''

TEMPERATURE_AXES = ("t_hot", "t_cold")
'''tuple : Swept parameters measured in kelvin; the others are in meV.'''

SIGN_LABELS = {1: "+", -1: "-", 0: "0"}
'''dict : CSV labels of the work sign.'''

_REPORTS = {
    CycleKind.OTTO: (OttoSpec, otto_report),
    CycleKind.STIRLING: (StirlingSpec, stirling_report),
}


###############################################################################
# CLASSES
###############################################################################
@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with inclusive endpoints.

    Attributes
    ----------
    start, stop : float
        Endpoints, ``stop > start`` (meV or K).
    steps : int
        Number of nodes, at least 2.
    """
    start: float
    stop: float
    steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError(
                f"grid endpoints must be finite, got {self.start}, "
                f"{self.stop}"
            )
        if not self.stop > self.start:
            raise ValueError(
                f"grid stop must exceed start, got [{self.start}, "
                f"{self.stop}]"
            )
        if isinstance(self.steps, bool) or int(self.steps) != self.steps:
            raise ValueError(f"grid steps must be an integer, got {self.steps}")
        if self.steps < 2:
            raise ValueError(f"grid needs at least 2 steps, got {self.steps}")

    @property
    def spacing(self):
        return (self.stop - self.start) / (self.steps - 1)

    def nodes(self):
        """Grid nodes as a float array."""
        return np.linspace(self.start, self.stop, int(self.steps))


@dataclass(frozen=True)
class CurveSpec:
    """Cycle parameters with exactly one hole (None) to sweep."""
    t_hot: Optional[float] = None
    t_cold: Optional[float] = None
    u_hot: Optional[float] = None
    u_cold: Optional[float] = None

    def __post_init__(self):
        holes = [f.name for f in fields(self) if getattr(self, f.name) is None]
        if len(holes) != 1:
            raise ValueError(
                f"exactly one cycle parameter must be swept, got holes "
                f"{holes or 'none'}"
            )

    @property
    def swept(self):
        """Name of the swept parameter."""
        return next(
            f.name for f in fields(self) if getattr(self, f.name) is None
        )

    def fixed(self):
        """The three fixed parameters as a dict."""
        return {
            f.name: getattr(self, f.name) for f in fields(self)
            if getattr(self, f.name) is not None
        }

    def build(self, kind, x):
        """Cycle spec of ``kind`` with the hole filled by ``x``."""
        spec_cls = _REPORTS[kind][0]
        return spec_cls(**self.fixed(), **{self.swept: float(x)})


@dataclass(frozen=True, eq=False)
class Curve:
    """One quantity tabulated along a swept parameter.

    Attributes
    ----------
    abscissa : numpy.ndarray
        Strictly increasing node values.
    values : numpy.ndarray
        Same length; NaN marks an absent value (e.g. no efficiency).
    axis : str
        Swept parameter name (``u_cold``, ``t_hot``, ``u`` ...).
    quantity : str
    meta : dict
        Fixed parameters of the sweep, including ``lambda_so``.
    errors : numpy.ndarray, optional
        Per-node error estimates of ``values``.
    converged : bool
        False if any node integral was flagged.
    """
    abscissa: np.ndarray
    values: np.ndarray
    axis: str
    quantity: str
    meta: dict = field(default_factory=dict)
    errors: Optional[np.ndarray] = None
    converged: bool = True

    def __post_init__(self):
        if len(self.abscissa) != len(self.values):
            raise ValueError(
                f"abscissa and values differ in length: "
                f"{len(self.abscissa)} != {len(self.values)}"
            )
        if np.any(np.diff(self.abscissa) <= 0):
            raise ValueError("curve abscissa must be strictly increasing")

    @property
    def unit(self):
        return "K" if self.axis in TEMPERATURE_AXES else "meV"

    def to_frame(self):
        """Two-column table ``abscissa_<unit>, value``."""
        return pd.DataFrame({
            f"abscissa_{self.unit}": self.abscissa,
            "value": self.values,
        })


@dataclass(frozen=True, eq=False)
class WorkMap:
    """Otto work over a (u_cold, u_hot) grid.

    ``values[i, j]`` is the work at ``u_hot = axis_u_hot.nodes()[i]`` and
    ``u_cold = axis_u_cold.nodes()[j]``; a row is a work curve in u_cold.
    """
    axis_u_cold: GridSpec
    axis_u_hot: GridSpec
    values: np.ndarray
    errors: np.ndarray
    signs: np.ndarray
    modes: np.ndarray
    meta: dict = field(default_factory=dict)
    converged: bool = True

    def __post_init__(self):
        shape = (self.axis_u_hot.steps, self.axis_u_cold.steps)
        for name in ("values", "errors", "signs", "modes"):
            if getattr(self, name).shape != shape:
                raise ValueError(
                    f"{name} has shape {getattr(self, name).shape}, "
                    f"expected {shape}"
                )

    def mode_counts(self):
        """Number of nodes per operation mode."""
        labels, counts = np.unique(self.modes, return_counts=True)
        return {str(k): int(v) for k, v in zip(labels, counts)}

    def sign_counts(self):
        """Number of nodes with positive, negative and zero work."""
        return {
            label: int(np.count_nonzero(self.signs == s))
            for s, label in SIGN_LABELS.items()
        }

    def to_frame(self):
        """Long table ``u_cold_meV, u_hot_meV, work, sign`` in row order."""
        u_hot, u_cold = np.meshgrid(
            self.axis_u_hot.nodes(), self.axis_u_cold.nodes(), indexing="ij"
        )
        return pd.DataFrame({
            "u_cold_meV": u_cold.ravel(),
            "u_hot_meV": u_hot.ravel(),
            "work": self.values.ravel(),
            "sign": [SIGN_LABELS[int(s)] for s in self.signs.ravel()],
        })


@dataclass(frozen=True)
class ExtremumReport:
    """A strict discrete local extremum of a curve."""
    location: float
    value: float
    kind: str
    is_at_critical: bool


###############################################################################
# FUNCTIONS
###############################################################################
def _node_task(kind, p, q, spec):
    """Evaluate one node.

    Returns ``(work, error, efficiency, mode, converged)``.

    Module level so that it pickles for worker processes.
    """
    report = _REPORTS[kind][1](spec, p, q)
    eff = math.nan if report.efficiency is None else report.efficiency
    return (
        report.work,
        report.numerics.error_estimate,
        eff,
        report.mode.value,
        report.numerics.converged,
    )


def _run_nodes(kind, specs, p, q, workers):
    """Helper function mapping the node task over ``specs`` in order."""
    task = partial(_node_task, kind, p, q)
    if workers is None:
        workers = cpu_count()
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")

    logger.info(
        "Evaluating %d %s nodes with %d worker(s)",
        len(specs), kind.value, workers
    )
    if workers == 1 or len(specs) < 2:
        results = list(map(task, specs))
    else:
        chunksize = max(1, len(specs) // (4 * workers))
        with Pool(workers) as pool:
            results = pool.map(task, specs, chunksize=chunksize)
    logger.info("Finished %d %s nodes", len(specs), kind.value)
    return results


def _sign(value, band):
    """Helper function for the work sign with a zero band."""
    if value > band:
        return 1
    if value < -band:
        return -1
    return 0


def otto_work_map(grid_u_cold, grid_u_hot, t_hot, t_cold, p,
                  q=DEFAULT_SETTINGS, workers=1):
    """
    Otto work over a grid of cold and hot field potentials.

    Parameters
    ----------
    grid_u_cold, grid_u_hot : GridSpec
        Field potential axes, meV.
    t_hot, t_cold : float
        Bath temperatures, K.
    p : MaterialParams
    q : QuadratureSettings, optional
    workers : int or None, optional
        Worker processes; 1 runs serially, None uses every CPU.

    Returns
    -------
    WorkMap
        Signs are 0 where ``|work|`` does not exceed the node error
        estimate.
    """
    u_hot = grid_u_hot.nodes()
    u_cold = grid_u_cold.nodes()
    specs = [
        OttoSpec(t_hot, t_cold, float(uh), float(uc))
        for uh in u_hot for uc in u_cold
    ]
    results = _run_nodes(CycleKind.OTTO, specs, p, q, workers)

    shape = (len(u_hot), len(u_cold))
    values = np.array([r[0] for r in results]).reshape(shape)
    errors = np.array([r[1] for r in results]).reshape(shape)
    signs = np.array(
        [_sign(r[0], r[1]) for r in results], dtype=np.int8
    ).reshape(shape)
    modes = np.array([r[3] for r in results]).reshape(shape)
    converged = all(r[4] for r in results)
    return WorkMap(
        axis_u_cold=grid_u_cold,
        axis_u_hot=grid_u_hot,
        values=values,
        errors=errors,
        signs=signs,
        modes=modes,
        converged=converged,
        meta={
            "cycle": CycleKind.OTTO.value,
            "t_hot": t_hot,
            "t_cold": t_cold,
            "lambda_so": p.lambda_so,
            "include_valence": p.include_valence,
        },
    )


def cycle_curves(kind, fixed, axis, p, q=DEFAULT_SETTINGS, workers=1):
    """
    Work and efficiency curves from one sweep.

    Parameters
    ----------
    kind : CycleKind
    fixed : CurveSpec
        Fixed parameters; the hole is swept along ``axis``.
    axis : GridSpec
    p : MaterialParams
    q : QuadratureSettings, optional
    workers : int or None, optional

    Returns
    -------
    tuple of Curve
        ``(work, efficiency)``; efficiency is NaN where not an engine.
    """
    xs = axis.nodes()
    specs = [fixed.build(kind, x) for x in xs]
    results = _run_nodes(kind, specs, p, q, workers)

    meta = {
        "cycle": kind.value,
        **fixed.fixed(),
        "lambda_so": p.lambda_so,
        "include_valence": p.include_valence,
    }
    errors = np.array([r[1] for r in results])
    converged = all(r[4] for r in results)
    work = Curve(
        abscissa=xs,
        values=np.array([r[0] for r in results]),
        axis=fixed.swept,
        quantity="work",
        meta=meta,
        errors=errors,
        converged=converged,
    )
    efficiency = Curve(
        abscissa=xs,
        values=np.array([r[2] for r in results]),
        axis=fixed.swept,
        quantity="efficiency",
        meta=meta,
        converged=converged,
    )
    return work, efficiency


def work_curve(kind, fixed, axis, p, q=DEFAULT_SETTINGS, workers=1):
    """Net work versus the swept parameter of ``fixed``."""
    return cycle_curves(kind, fixed, axis, p, q, workers)[0]


def efficiency_curve(kind, fixed, axis, p, q=DEFAULT_SETTINGS, workers=1):
    """Efficiency versus the swept parameter; NaN where absent."""
    return cycle_curves(kind, fixed, axis, p, q, workers)[1]


def gap_curve(axis, p):
    """Band gap versus field potential ``u`` (meV), negative fields allowed."""
    xs = axis.nodes()
    return Curve(
        abscissa=xs,
        values=np.array([band_gap(x, p) for x in xs]),
        axis="u",
        quantity="gap",
        meta={"lambda_so": p.lambda_so},
    )


def locate_extrema(curve) -> List[ExtremumReport]:
    """
    Strict interior local extrema of a curve.

    A node is a maximum (minimum) when its value is strictly greater (less)
    than both neighbours. NaN nodes never qualify. ``is_at_critical`` is set
    for field axes when the node lies within one grid step of
    ``curve.meta["lambda_so"]``.

    Raises
    ------
    ValueError
        Fewer than three nodes.
    """
    x = np.asarray(curve.abscissa, dtype=float)
    y = np.asarray(curve.values, dtype=float)
    if len(x) < 3:
        raise ValueError(f"need at least 3 nodes, got {len(x)}")

    critical = curve.meta.get("lambda_so")
    field_axis = curve.axis not in TEMPERATURE_AXES
    out = []
    for i in range(1, len(x) - 1):
        left, mid, right = y[i - 1], y[i], y[i + 1]
        if mid > left and mid > right:
            kind = "max"
        elif mid < left and mid < right:
            kind = "min"
        else:
            continue
        step = max(x[i] - x[i - 1], x[i + 1] - x[i])
        at_critical = (
            field_axis and critical is not None
            and abs(abs(x[i]) - critical) <= step * (1 + 1e-9)
        )
        out.append(ExtremumReport(
            float(x[i]), float(mid), kind, bool(at_critical)
        ))
    return out


def count_sign_changes(curve, zero_band=None):
    """
    Number of sign changes along a curve.

    Values within ``zero_band`` of zero (default: the per-node error
    estimates, or 0) and NaN values are skipped.
    """
    y = np.asarray(curve.values, dtype=float)
    if zero_band is None:
        zero_band = curve.errors if curve.errors is not None else 0.0
    band = np.broadcast_to(np.asarray(zero_band, dtype=float), y.shape)
    signs = [
        _sign(v, b) for v, b in zip(y, band) if not math.isnan(v)
    ]
    signs = [s for s in signs if s != 0]
    return int(sum(1 for a, b in zip(signs, signs[1:]) if a != b))
