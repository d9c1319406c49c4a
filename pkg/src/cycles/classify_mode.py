#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# classify_mode.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
import logging

from src.cycles.cycle_types import OperationMode


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Operation-mode classification and the efficiency rule shared by both cycles.

**Logic**

1.  Positive net work means an engine.
2.  Otherwise, if heat is drawn from the cold bath the cycle refrigerates.
    Otto passes its cold-isochore heat; Stirling passes only the heat of the
    cold isotherm (D to C), since the isoelectric strokes are not attributed
    to a bath.
3.  Anything else only dissipates work into the baths.
"""
__all__ = [
    "classify_mode",
    "engine_efficiency",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)


###############################################################################
# FUNCTIONS
###############################################################################
def classify_mode(work, q_in, q_cold_absorbed):
    """
    Classify a cycle from its net work and bath heats.

    Parameters
    ----------
    work : float
        Net work done by the working substance.
    q_in : float
        Heat absorbed from the hot side. It does not change the mode.
    q_cold_absorbed : float
        Heat absorbed from the cold bath.

    Returns
    -------
    OperationMode

    Examples
    --------
    >>> classify_mode(1.0, 2.0, -1.0)
    <OperationMode.ENGINE: 'engine'>
    >>> classify_mode(-1.0, 0.5, 0.5)
    <OperationMode.REFRIGERATOR: 'refrigerator'>
    """
    if work > 0:
        if q_in <= 0:
            logger.debug(
                "Positive work %g with non-positive q_in %g", work, q_in
            )
        return OperationMode.ENGINE
    if q_cold_absorbed > 0:
        return OperationMode.REFRIGERATOR
    return OperationMode.DISSIPATOR


def engine_efficiency(work, q_in, mode, spec):
    """
    Return ``work / q_in`` for an engine, otherwise None.

    The efficiency is defined only when the mode is ENGINE, ``q_in > 0``
    and ``spec.t_hot > spec.t_cold``.
    """
    if mode is not OperationMode.ENGINE:
        return None
    if not q_in > 0:
        logger.warning("Engine with q_in = %g; efficiency skipped", q_in)
        return None
    if not spec.t_hot > spec.t_cold:
        logger.warning(
            "Engine with t_hot %g <= t_cold %g; efficiency skipped",
            spec.t_hot, spec.t_cold
        )
        return None
    return work / q_in
