#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# statmech.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
from dataclasses import dataclass
import logging
import math
from typing import NamedTuple

import numpy as np
from scipy.special import expit

from src.quadrature import DEFAULT_SETTINGS
from src.quadrature import integrate_decaying


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Statistical Mechanics Module

This module provides Fermi-Dirac occupations and the per-area thermodynamic
densities of the neutral working substance (Fermi energy fixed at zero).

Only the two positive bands are ever integrated. The divergent filled
valence bands are renormalised by subtracting their zero-temperature energy,
which by particle-hole symmetry ``f(-E) = 1 - f(E)`` doubles every
positive-band quantity. ``MaterialParams.include_valence`` switches the
doubling off to reproduce the positive-manifold-only treatment.

With ``c`` the band factor (2 or 1), ``x = E / (k_B T)`` and the measure
``d^2k / (2 pi)^2`` folded with the spin degeneracy into ``1/pi``:

-   internal energy ``U = c/pi * int k sum_n E_n f(x_n) dk``
-   entropy ``S = c k_B/pi * int k sum_n s(x_n) dk`` with the per-mode
    binary entropy ``s = -[(1-f) ln(1-f) + f ln f] = ln(1+e^-x) + x f``
-   grand-potential term ``G = T S - U = c k_B T/pi * int k sum_n
    ln(1+e^-x_n) dk``

Densities are in natural units (meV^3 for U and G, meV^3/K for S).

Main Functions:

-   :func:`fermi_occupation`
-   :func:`internal_energy_density`
-   :func:`entropy_density`
-   :func:`grand_term_density`
-   :func:`thermo_state`: U, S and G at one cycle corner.
"""
__all__ = [
    "BOLTZMANN_MEV_PER_K",
    "CONSTANTS",
    "DensityValue",
    "PhysicalConstants",
    "ThermoPoint",
    "ThermoState",
    "decay_scale",
    "entropy_density",
    "fermi_occupation",
    "grand_term_density",
    "internal_energy_density",
    "mode_entropy",
    "mode_grand_term",
    "thermo_state",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

BOLTZMANN_MEV_PER_K = 0.08617333262
'''float : Boltzmann constant, meV/K (CODATA).'''


###############################################################################
# CLASSES
###############################################################################
@dataclass(frozen=True)
class PhysicalConstants:
    """Fixed physical constants in the package unit system."""
    k_b: float = BOLTZMANN_MEV_PER_K


CONSTANTS = PhysicalConstants()
'''PhysicalConstants : Shared constants instance.'''


@dataclass(frozen=True)
class ThermoPoint:
    """A (temperature, field potential) state, e.g. a cycle corner.

    Attributes
    ----------
    temperature : float
        Bath temperature, K, strictly positive.
    u : float
        Field potential, meV.
    """
    temperature: float
    u: float

    def __post_init__(self):
        if not (math.isfinite(self.temperature) and self.temperature > 0):
            raise ValueError(
                f"temperature must be a finite positive number of kelvin, "
                f"got {self.temperature}"
            )
        if not math.isfinite(self.u):
            raise ValueError(f"field potential u must be finite, got {self.u}")

    @property
    def thermal_energy(self):
        """k_B T in meV."""
        return BOLTZMANN_MEV_PER_K * self.temperature


@dataclass(frozen=True)
class DensityValue:
    """A per-area density with its numerical error bound."""
    value: float
    error_estimate: float
    converged: bool = True

    @classmethod
    def from_result(cls, result):
        """Build from a :class:`src.quadrature.QuadratureResult`."""
        return cls(result.value, result.error_estimate, result.converged)


class ThermoState(NamedTuple):
    """Renormalised thermodynamics at one point."""
    point: ThermoPoint
    internal_energy: DensityValue
    entropy: DensityValue
    grand_term: DensityValue


###############################################################################
# FUNCTIONS
###############################################################################
def fermi_occupation(E, T):
    """
    Fermi-Dirac occupation at zero Fermi energy.

    Parameters
    ----------
    E : float or numpy.ndarray
        Energy, meV.
    T : float
        Temperature, K, > 0.

    Returns
    -------
    float or numpy.ndarray
        ``1 / (exp(E / (k_B T)) + 1)``, evaluated without overflow.

    Raises
    ------
    ValueError
        Non-positive temperature.
    """
    if not T > 0:
        raise ValueError(f"temperature must be positive, got {T}")
    return expit(-np.asarray(E, dtype=float) / (BOLTZMANN_MEV_PER_K * T))[()]


def mode_entropy(x):
    """Binary entropy of one fermionic mode at reduced energy ``x``.

    Even in ``x``; evaluated at ``|x|`` where both terms are small and
    positive.
    """
    a = np.abs(x)
    return np.logaddexp(0.0, -a) + a * expit(-a)


def mode_grand_term(x):
    """``ln(1 + exp(-x))`` of one fermionic mode."""
    return np.logaddexp(0.0, -x)


def decay_scale(temperatures, fields, p):
    """
    Slowest decay length of a thermodynamic integrand, meV.

    Parameters
    ----------
    temperatures : iterable of float
        Temperatures entering the integrand, K.
    fields : iterable of float
        Field potentials entering the integrand, meV.
    p : MaterialParams

    Returns
    -------
    float
        ``max(k_B * T_max, lambda_so + |u|_max)``
    """
    t_max = max(temperatures)
    u_max = max(abs(u) for u in fields)
    return max(BOLTZMANN_MEV_PER_K * t_max, p.lambda_so + u_max)


def _band_pair(k, a, lso):
    """Helper function for the scalar band pair at |u| = a."""
    return math.hypot(k, a - lso), math.hypot(k, a + lso)


def _integrate_density(mode_term, pt, p, settings, weight_energy):
    """
    Helper function integrating ``k * sum_n w_n * mode_term(x_n)``.

    ``w_n`` is ``E_n`` when ``weight_energy`` is true, otherwise 1.
    """
    kt = pt.thermal_energy
    a = abs(pt.u)
    lso = p.lambda_so
    prefactor = p.band_factor / math.pi

    def integrand(k):
        e1, e2 = _band_pair(k, a, lso)
        if weight_energy:
            total = e1 * mode_term(e1 / kt) + e2 * mode_term(e2 / kt)
        else:
            total = mode_term(e1 / kt) + mode_term(e2 / kt)
        return prefactor * k * total

    scale = decay_scale([pt.temperature], [pt.u], p)
    return integrate_decaying(integrand, scale, settings)


def internal_energy_density(pt, p, settings=DEFAULT_SETTINGS):
    """
    Renormalised internal energy density at a thermodynamic point.

    The zero-temperature valence energy is subtracted, so ``U -> 0`` as
    ``T -> 0``.

    Parameters
    ----------
    pt : ThermoPoint
    p : MaterialParams
    settings : QuadratureSettings, optional

    Returns
    -------
    DensityValue
        Natural units, meV^3.
    """
    result = _integrate_density(
        lambda x: expit(-x), pt, p, settings, weight_energy=True
    )
    return DensityValue.from_result(result)


def entropy_density(pt, p, settings=DEFAULT_SETTINGS):
    """
    Entropy density at a thermodynamic point, in meV^3/K.

    The valence bands carry the same entropy as the conduction bands, so the
    band factor applies unchanged. The value is non-negative and vanishes in
    the gapped phase as ``T -> 0``.
    """
    result = _integrate_density(
        mode_entropy, pt, p, settings, weight_energy=False
    )
    k_b = BOLTZMANN_MEV_PER_K
    return DensityValue(
        k_b * result.value, k_b * result.error_estimate, result.converged
    )


def grand_term_density(pt, p, settings=DEFAULT_SETTINGS):
    """
    Grand-potential term ``T S - U`` at a thermodynamic point.

    Computed directly from ``ln(1 + exp(-beta E))``; it equals
    ``T * entropy_density - internal_energy_density`` to quadrature accuracy.
    """
    result = _integrate_density(
        mode_grand_term, pt, p, settings, weight_energy=False
    )
    kt = pt.thermal_energy
    return DensityValue(
        kt * result.value, kt * result.error_estimate, result.converged
    )


def thermo_state(pt, p, settings=DEFAULT_SETTINGS):
    """Internal energy, entropy and grand-potential term at ``pt``."""
    return ThermoState(
        point=pt,
        internal_energy=internal_energy_density(pt, p, settings),
        entropy=entropy_density(pt, p, settings),
        grand_term=grand_term_density(pt, p, settings),
    )
