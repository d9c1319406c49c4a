#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cycle_types.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
from dataclasses import asdict
from dataclasses import dataclass
from enum import Enum
import math
from typing import Mapping
from typing import Optional
from typing import Union

from src.statmech import ThermoState


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Value types shared by the Otto and Stirling cycle modules.

**Assumptions**

-   Temperatures are in kelvin and field potentials in meV.
-   ``t_hot > t_cold`` is not required; the ordering only matters for
    efficiency reporting.
-   Every heat is counted positive when absorbed by the working substance.
"""
__all__ = [
    "CycleKind",
    "CycleReport",
    "CycleSpec",
    "Numerics",
    "OperationMode",
    "OttoSpec",
    "StirlingSpec",
]


###############################################################################
# CLASSES
###############################################################################
class CycleKind(Enum):
    OTTO = "otto"
    STIRLING = "stirling"


class OperationMode(Enum):
    """What a cycle does with its two baths."""
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    DISSIPATOR = "dissipator"


@dataclass(frozen=True)
class CycleSpec:
    """Bath temperatures (K) and field potentials (meV) of a cycle."""
    t_hot: float
    t_cold: float
    u_hot: float
    u_cold: float

    def __post_init__(self):
        for name in ("t_hot", "t_cold"):
            t = getattr(self, name)
            if not (math.isfinite(t) and t > 0):
                raise ValueError(
                    f"{name} must be a finite positive temperature, got {t}"
                )
        for name in ("u_hot", "u_cold"):
            u = getattr(self, name)
            if not math.isfinite(u):
                raise ValueError(f"{name} must be finite, got {u}")

    @property
    def carnot_efficiency(self):
        """``1 - t_cold/t_hot``; only meaningful when t_hot > t_cold."""
        return 1.0 - self.t_cold / self.t_hot


@dataclass(frozen=True)
class OttoSpec(CycleSpec):
    """Quantum Otto cycle: isochores at u_hot (hot bath) and u_cold."""


@dataclass(frozen=True)
class StirlingSpec(CycleSpec):
    """Stirling cycle with corners A=(t_hot, u_hot), B=(t_hot, u_cold),
    C=(t_cold, u_cold) and D=(t_cold, u_hot)."""


@dataclass(frozen=True)
class Numerics:
    """Aggregated quadrature diagnostics of one cycle evaluation.

    Attributes
    ----------
    error_estimate : float
        Bound on the absolute error of the reported work.
    converged : bool
        False if any underlying integral was flagged.
    cross_check : float, optional
        Stirling only: ``|W_heats - W_grand|`` of the two work paths.
    """
    error_estimate: float
    converged: bool = True
    cross_check: Optional[float] = None

    @classmethod
    def combine(cls, *parts, cross_check=None):
        """Sum error estimates and AND the convergence flags of ``parts``.

        Each part needs ``error_estimate`` and ``converged`` attributes.
        """
        return cls(
            error_estimate=sum(x.error_estimate for x in parts),
            converged=all(x.converged for x in parts),
            cross_check=cross_check,
        )


@dataclass(frozen=True)
class CycleReport:
    """Heat ledger, work, efficiency and mode of one cycle.

    Attributes
    ----------
    kind : CycleKind
    spec : OttoSpec or StirlingSpec
    work : float
        Net work per area done by the working substance (natural units).
    q_in, q_out : float
        Incoming and outgoing heats; ``work = q_in + q_out``.
    strokes : dict
        Heat of every stroke keyed by its corner labels (Otto: ``AB``,
        ``CD``; Stirling: ``BA``, ``CB``, ``DC``, ``AD``).
    efficiency : float or None
        ``work / q_in``, present only for engines with t_hot > t_cold.
    mode : OperationMode
    numerics : Numerics
    corners : dict, optional
        Stirling only: :class:`src.statmech.ThermoState` at A, B, C and D.
    """
    kind: CycleKind
    spec: Union[OttoSpec, StirlingSpec]
    work: float
    q_in: float
    q_out: float
    strokes: Mapping[str, float]
    efficiency: Optional[float]
    mode: OperationMode
    numerics: Numerics
    corners: Optional[Mapping[str, ThermoState]] = None

    def to_dict(self):
        """Nested plain-Python representation, ready for JSON."""
        d = {
            "cycle": self.kind.value,
            "spec": asdict(self.spec),
            "work": self.work,
            "q_in": self.q_in,
            "q_out": self.q_out,
            "strokes": dict(self.strokes),
            "efficiency": self.efficiency,
            "mode": self.mode.value,
            "numerics": asdict(self.numerics),
        }
        if self.corners is not None:
            d["corners"] = {
                label: {
                    "temperature": st.point.temperature,
                    "u": st.point.u,
                    "internal_energy": st.internal_energy.value,
                    "entropy": st.entropy.value,
                    "grand_term": st.grand_term.value,
                }
                for label, st in self.corners.items()
            }
        return d
