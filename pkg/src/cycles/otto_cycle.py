#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# otto_cycle.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
import logging
import math
from typing import NamedTuple

from scipy.special import expit

from src.cycles.classify_mode import classify_mode
from src.cycles.classify_mode import engine_efficiency
from src.cycles.cycle_types import CycleKind
from src.cycles.cycle_types import CycleReport
from src.cycles.cycle_types import Numerics
from src.quadrature import DEFAULT_SETTINGS
from src.quadrature import integrate_decaying
from src.statmech import BOLTZMANN_MEV_PER_K
from src.statmech import DensityValue
from src.statmech import decay_scale


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Quantum Otto cycle.

The four strokes are:

1.  A to B, hot isochore at ``u_hot``: the substance thermalises with the hot
    bath and absorbs ``q_in``.
2.  B to C, quantum adiabat: the field is switched to ``u_cold`` with the
    occupations frozen.
3.  C to D, cold isochore at ``u_cold``: thermalisation with the cold bath,
    heat ``q_out``.
4.  D to A, quantum adiabat back to ``u_hot``.

Because the adiabats conserve occupations, the occupations entering each
isochore are the ones left by the previous bath::

    q_in  = c/pi int k sum_n E_n^h [f(E_n^h, T_h) - f(E_n^c, T_c)] dk
    q_out = c/pi int k sum_n E_n^c [f(E_n^c, T_c) - f(E_n^h, T_h)] dk

and the net work is ``q_in + q_out``. The field is constant on each isochore,
so the renormalisation constant of the valence bands cancels within every
stroke and only the band factor ``c`` survives.
"""
__all__ = [
    "OttoHeats",
    "otto_heats",
    "otto_report",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)


###############################################################################
# CLASSES
###############################################################################
class OttoHeats(NamedTuple):
    """Heats of the hot (``q_in``) and cold (``q_out``) isochores."""
    q_in: DensityValue
    q_out: DensityValue


###############################################################################
# FUNCTIONS
###############################################################################
def otto_heats(spec, p, q=DEFAULT_SETTINGS):
    """
    Isochoric heats of a quantum Otto cycle.

    Parameters
    ----------
    spec : OttoSpec
    p : MaterialParams
    q : QuadratureSettings, optional

    Returns
    -------
    OttoHeats
        ``q_in`` absorbed on the hot isochore and ``q_out`` on the cold one,
        both in natural units. Non-convergence is carried by the flags.

    Examples
    --------
    >>> h = otto_heats(OttoSpec(40.0, 30.0, 30.0, 30.0), MaterialParams())
    >>> h.q_in.value + h.q_out.value
    0.0
    """
    kt_h = BOLTZMANN_MEV_PER_K * spec.t_hot
    kt_c = BOLTZMANN_MEV_PER_K * spec.t_cold
    a_h = abs(spec.u_hot)
    a_c = abs(spec.u_cold)
    lso = p.lambda_so
    prefactor = p.band_factor / math.pi

    def _bands(k):
        e1h = math.hypot(k, a_h - lso)
        e2h = math.hypot(k, a_h + lso)
        e1c = math.hypot(k, a_c - lso)
        e2c = math.hypot(k, a_c + lso)
        return e1h, e2h, e1c, e2c

    def heat_in(k):
        e1h, e2h, e1c, e2c = _bands(k)
        return prefactor * k * (
            e1h * (expit(-e1h / kt_h) - expit(-e1c / kt_c))
            + e2h * (expit(-e2h / kt_h) - expit(-e2c / kt_c))
        )

    def heat_out(k):
        e1h, e2h, e1c, e2c = _bands(k)
        return prefactor * k * (
            e1c * (expit(-e1c / kt_c) - expit(-e1h / kt_h))
            + e2c * (expit(-e2c / kt_c) - expit(-e2h / kt_h))
        )

    scale = decay_scale(
        [spec.t_hot, spec.t_cold], [spec.u_hot, spec.u_cold], p
    )
    q_in = DensityValue.from_result(integrate_decaying(heat_in, scale, q))
    q_out = DensityValue.from_result(integrate_decaying(heat_out, scale, q))
    return OttoHeats(q_in, q_out)


def otto_report(spec, p, q=DEFAULT_SETTINGS):
    """
    Work, efficiency and operation mode of a quantum Otto cycle.

    Parameters
    ----------
    spec : OttoSpec
    p : MaterialParams
    q : QuadratureSettings, optional

    Returns
    -------
    CycleReport
        ``work = q_in + q_out``. The cold bath heat used for the mode is
        ``q_out``. The efficiency ``work / q_in`` is only reported for an
        engine with ``q_in > 0`` and ``t_hot > t_cold``.
    """
    heats = otto_heats(spec, p, q)
    q_in = heats.q_in.value
    q_out = heats.q_out.value
    work = q_in + q_out
    mode = classify_mode(work, q_in, q_out)
    numerics = Numerics.combine(heats.q_in, heats.q_out)
    if not numerics.converged:
        logger.warning("Otto heats not converged for %s", spec)

    logger.debug("otto %s: work=%.12g mode=%s", spec, work, mode.value)
    return CycleReport(
        kind=CycleKind.OTTO,
        spec=spec,
        work=work,
        q_in=q_in,
        q_out=q_out,
        strokes={"AB": q_in, "CD": q_out},
        efficiency=engine_efficiency(work, q_in, mode, spec),
        mode=mode,
        numerics=numerics,
    )
