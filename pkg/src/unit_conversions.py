#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# unit_conversions.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
from dataclasses import dataclass
from functools import cached_property
import logging
import math

import numpy as np
from pyomo.environ import units
from pyomo.environ import value
from scipy.constants import hbar


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
This module converts natural-unit densities to SI.

Inside the package hbar = v_f = 1, so momenta carry meV and every per-area
density (work, heat, internal energy) carries meV^3. Restoring the units
divides by ``(hbar v_f)^2``::

    E [J/m^2] = E [meV^3] * (meV in J)^3 / (hbar * v_f)^2

The meV to joule factor and the final unit check are done with Pyomo's unit
system, the same way flows are converted elsewhere with ``units.convert``.
The Fermi velocity is a user input; the material has no built-in value.
"""
__all__ = [
    "SIConversion",
    "to_si",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)


###############################################################################
# CLASSES
###############################################################################
@dataclass(frozen=True)
class SIConversion:
    """Natural-unit density to J/m^2 for a given Fermi velocity.

    Attributes
    ----------
    v_f : float
        Fermi velocity, m/s, strictly positive.
    """
    v_f: float

    def __post_init__(self):
        if not (math.isfinite(self.v_f) and self.v_f > 0):
            raise ValueError(
                f"Fermi velocity v_f must be a finite positive speed in m/s, "
                f"got {self.v_f}"
            )

    @cached_property
    def scale(self):
        """Multiplier from meV^3 to J/m^2."""
        expression = (
            units.meV ** 3
            / (hbar * units.J * units.s * self.v_f * units.m / units.s) ** 2
        )
        factor = value(
            units.convert(expression, to_units=units.J / units.m ** 2)
        )
        logger.debug("SI scale for v_f=%g m/s: %.12g", self.v_f, factor)
        return factor


###############################################################################
# FUNCTIONS
###############################################################################
def to_si(x, conv):
    """
    Convert a natural-unit density (meV^3) to J/m^2.

    Parameters
    ----------
    x : float or numpy.ndarray
    conv : SIConversion

    Returns
    -------
    float or numpy.ndarray
        ``x * conv.scale``; NaN entries stay NaN.

    Examples
    --------
    >>> to_si(0.0, SIConversion(5e5))
    0.0
    """
    if isinstance(x, np.ndarray):
        return x * conv.scale
    return float(x) * conv.scale
