#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# stirling_cycle.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
import logging
import math
import sys
from typing import NamedTuple

import numpy as np

from src.cycles.classify_mode import classify_mode
from src.cycles.classify_mode import engine_efficiency
from src.cycles.cycle_types import CycleKind
from src.cycles.cycle_types import CycleReport
from src.cycles.cycle_types import Numerics
from src.quadrature import DEFAULT_SETTINGS
from src.quadrature import integrate_decaying
from src.statmech import BOLTZMANN_MEV_PER_K
from src.statmech import DensityValue
from src.statmech import ThermoPoint
from src.statmech import decay_scale
from src.statmech import thermo_state


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Stirling cycle (idealised, no regenerator).

Corners: A=(T_h, u_hot), B=(T_h, u_cold), C=(T_c, u_cold), D=(T_c, u_hot).

Stroke heats, absorbed by the substance, from the renormalised U and S:

-   hot isotherm A to B: ``q_BA = T_h (S_B - S_A)``
-   isoelectric cooling B to C: ``q_CB = U_C - U_B``
-   cold isotherm C to D: ``q_DC = T_c (S_D - S_C)``
-   isoelectric heating D to A: ``q_AD = U_A - U_D``

``q_in = q_BA + q_AD``, ``q_out = q_CB + q_DC``.

The net work is computed twice. Path (a) sums the four heats. Path (b)
telescopes the ledger into grand-potential terms,
``W = G_B - G_A + G_D - G_C`` with ``G = T S - U``, integrated as a single
combined integrand. Disagreement beyond ten times the summed error
estimates (plus a roundoff floor) raises :class:`CycleConsistencyError`.
"""
__all__ = [
    "CycleConsistencyError",
    "StirlingHeats",
    "stirling_heats",
    "stirling_report",
    "stirling_work_grand",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

CONSISTENCY_FACTOR = 10.0
'''float : Allowed path disagreement in units of the summed error estimates.'''

ROUNDOFF_ULPS = 64.0
'''float : Roundoff floor in machine epsilons of the summed heat magnitudes.'''


###############################################################################
# CLASSES
###############################################################################
class CycleConsistencyError(RuntimeError):
    """The two Stirling work paths disagree beyond their numerics."""


class StirlingHeats(NamedTuple):
    """Stroke heats of a Stirling cycle plus the corner thermodynamics."""
    q_BA: DensityValue
    q_CB: DensityValue
    q_DC: DensityValue
    q_AD: DensityValue
    corners: dict


###############################################################################
# FUNCTIONS
###############################################################################
def _corner_points(spec):
    """Helper function returning the four corners keyed by label."""
    return {
        "A": ThermoPoint(spec.t_hot, spec.u_hot),
        "B": ThermoPoint(spec.t_hot, spec.u_cold),
        "C": ThermoPoint(spec.t_cold, spec.u_cold),
        "D": ThermoPoint(spec.t_cold, spec.u_hot),
    }


def _difference(a, b, scale=1.0):
    """Helper function for ``scale * (a - b)`` of two DensityValues."""
    return DensityValue(
        scale * (a.value - b.value),
        scale * (a.error_estimate + b.error_estimate),
        a.converged and b.converged,
    )


def stirling_heats(spec, p, q=DEFAULT_SETTINGS):
    """
    Per-stroke heats of the Stirling cycle.

    Parameters
    ----------
    spec : StirlingSpec
    p : MaterialParams
    q : QuadratureSettings, optional

    Returns
    -------
    StirlingHeats
        ``q_BA``, ``q_CB``, ``q_DC``, ``q_AD`` and the ThermoState of each
        corner. The divergent ground-state energies cancel in every
        difference and are never formed.
    """
    points = _corner_points(spec)
    # Equal fields collapse B onto A and C onto D; reuse the states so the
    # degenerate ledger cancels exactly.
    corners = {}
    for label, pt in points.items():
        twin = next((st for st in corners.values() if st.point == pt), None)
        corners[label] = twin if twin is not None else thermo_state(pt, p, q)

    a, b, c, d = (corners[x] for x in "ABCD")
    return StirlingHeats(
        q_BA=_difference(b.entropy, a.entropy, spec.t_hot),
        q_CB=_difference(c.internal_energy, b.internal_energy),
        q_DC=_difference(d.entropy, c.entropy, spec.t_cold),
        q_AD=_difference(a.internal_energy, d.internal_energy),
        corners=corners,
    )


def stirling_work_grand(spec, p, q=DEFAULT_SETTINGS):
    """
    Stirling net work from the grand-potential terms of the corners.

    ``W = G_B - G_A + G_D - G_C`` as one integral of
    ``c/pi * k * [k_B T_h (L_B - L_A) + k_B T_c (L_D - L_C)]`` with
    ``L = sum_n ln(1 + exp(-E_n/(k_B T)))`` at each corner.

    Returns
    -------
    DensityValue
    """
    kt_h = BOLTZMANN_MEV_PER_K * spec.t_hot
    kt_c = BOLTZMANN_MEV_PER_K * spec.t_cold
    a_h = abs(spec.u_hot)
    a_c = abs(spec.u_cold)
    lso = p.lambda_so
    prefactor = p.band_factor / math.pi

    def log_sum(k, a, kt):
        e1 = math.hypot(k, a - lso)
        e2 = math.hypot(k, a + lso)
        return np.logaddexp(0.0, -e1 / kt) + np.logaddexp(0.0, -e2 / kt)

    def integrand(k):
        hot = log_sum(k, a_c, kt_h) - log_sum(k, a_h, kt_h)
        cold = log_sum(k, a_h, kt_c) - log_sum(k, a_c, kt_c)
        return prefactor * k * (kt_h * hot + kt_c * cold)

    scale = decay_scale(
        [spec.t_hot, spec.t_cold], [spec.u_hot, spec.u_cold], p
    )
    return DensityValue.from_result(integrate_decaying(integrand, scale, q))


def stirling_report(spec, p, q=DEFAULT_SETTINGS):
    """
    Work, efficiency and operation mode of a Stirling cycle.

    Parameters
    ----------
    spec : StirlingSpec
    p : MaterialParams
    q : QuadratureSettings, optional

    Returns
    -------
    CycleReport
        ``work`` is the sum of the four stroke heats; the corner states are
        attached. Mode uses ``q_DC`` as the cold bath heat.

    Raises
    ------
    CycleConsistencyError
        The heat sum and the grand-potential work disagree beyond
        ``10 * (err_a + err_b)`` plus a roundoff floor.
    """
    heats = stirling_heats(spec, p, q)
    strokes = {
        "BA": heats.q_BA.value,
        "CB": heats.q_CB.value,
        "DC": heats.q_DC.value,
        "AD": heats.q_AD.value,
    }
    q_in = strokes["BA"] + strokes["AD"]
    q_out = strokes["CB"] + strokes["DC"]
    work = strokes["BA"] + strokes["CB"] + strokes["DC"] + strokes["AD"]
    parts = (heats.q_BA, heats.q_CB, heats.q_DC, heats.q_AD)
    err_a = sum(x.error_estimate for x in parts)

    grand = stirling_work_grand(spec, p, q)
    gap = abs(work - grand.value)
    tolerance = (
        CONSISTENCY_FACTOR * (err_a + grand.error_estimate)
        + ROUNDOFF_ULPS * sys.float_info.epsilon
        * sum(abs(v) for v in strokes.values())
    )
    if gap > tolerance:
        raise CycleConsistencyError(
            f"Stirling work paths disagree for {spec}: heat sum {work:.12g}, "
            f"grand potential {grand.value:.12g}, difference {gap:.3g} > "
            f"tolerance {tolerance:.3g}"
        )

    numerics = Numerics.combine(*parts, cross_check=gap)
    if not (numerics.converged and grand.converged):
        logger.warning("Stirling integrals not converged for %s", spec)
        numerics = Numerics(numerics.error_estimate, False, gap)

    mode = classify_mode(work, q_in, strokes["DC"])
    logger.debug("stirling %s: work=%.12g mode=%s", spec, work, mode.value)
    return CycleReport(
        kind=CycleKind.STIRLING,
        spec=spec,
        work=work,
        q_in=q_in,
        q_out=q_out,
        strokes=strokes,
        efficiency=engine_efficiency(work, q_in, mode, spec),
        mode=mode,
        numerics=numerics,
        corners=heats.corners,
    )
