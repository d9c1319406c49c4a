#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# material.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
from dataclasses import dataclass
from enum import Enum
import logging
import math
from typing import NamedTuple

import numpy as np
from scipy.linalg import eigvalsh


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Working Substance Module

This module describes the low-energy band structure of a buckled honeycomb
monolayer (stanene class) in a perpendicular electric field.
The field enters only through the field potential ``u`` (meV), i.e. the
product of the field and half the sublattice separation.

Natural units are used throughout (hbar = v_f = 1), so momenta are stored in
meV.

Key Features:

-   Closed-form positive band pair ``E1 = sqrt(k^2 + (|u| - lambda_so)^2)`` and
    ``E2 = sqrt(k^2 + (|u| + lambda_so)^2)``
-   Band gap at the Dirac point and topological phase classification
-   The 4x4 valley Hamiltonian, used to cross-check the closed form by
    numerical diagonalization

Main Functions:

-   :func:`band_energies`: Positive band pair at one momentum.
-   :func:`band_structure`: Vectorised band pair over an array of momenta.
-   :func:`band_gap`: Gap ``2 |lambda_so - |u||`` at k = 0.
-   :func:`classify_phase`: Topological insulator, band insulator or critical.
-   :func:`hamiltonian_matrix`: 4x4 Hermitian valley Hamiltonian.

Usage:

.. code-block:: python

    from src.material import MaterialParams, band_energies, classify_phase
    p = MaterialParams(lambda_so=30.0)
    band_energies(0.0, 40.0, p)     # BandPair(e1=10.0, e2=70.0)
    classify_phase(20.0, p)         # Phase.TOPOLOGICAL_INSULATOR

"""
__all__ = [
    "BandPair",
    "FieldPotential",
    "MaterialParams",
    "Phase",
    "band_energies",
    "band_gap",
    "band_structure",
    "classify_phase",
    "critical_field",
    "hamiltonian_matrix",
    "hamiltonian_eigenvalues",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

STANENE_LAMBDA_SO = 30.0
'''float : Typical spin-orbit coupling of stanene, meV.'''

FieldPotential = float
'''type : Electric potential energy of the buckled sublattices, meV. Any
finite real; the two signs give the same spectrum.'''


###############################################################################
# CLASSES
###############################################################################
@dataclass(frozen=True)
class MaterialParams:
    """Material parameters of the working substance.

    Attributes
    ----------
    lambda_so : float
        Spin-orbit coupling strength, meV. Strictly positive; it is also the
        critical field potential of the topological phase transition.
    include_valence : bool, optional
        Whether the renormalised negative-energy bands are included.
        When true (default) every thermodynamic density is doubled
        (W = 2 W+); when false only the positive-energy manifold is used.
    """
    lambda_so: float = STANENE_LAMBDA_SO
    include_valence: bool = True

    def __post_init__(self):
        if not math.isfinite(self.lambda_so) or self.lambda_so <= 0:
            raise ValueError(
                f"lambda_so must be a finite positive energy, got "
                f"{self.lambda_so}"
            )

    @property
    def band_factor(self):
        """Multiplicity applied to positive-band integrals (2 or 1)."""
        return 2.0 if self.include_valence else 1.0

    @classmethod
    def stanene(cls):
        """Return the typical stanene parameters (lambda_so = 30 meV)."""
        return cls(lambda_so=STANENE_LAMBDA_SO)


class BandPair(NamedTuple):
    """The two positive bands at one momentum, with ``0 <= e1 <= e2``."""
    e1: float
    e2: float


class Phase(Enum):
    """Phase of the working substance at a given field potential."""
    TOPOLOGICAL_INSULATOR = "topological_insulator"
    BAND_INSULATOR = "band_insulator"
    CRITICAL = "critical"


###############################################################################
# FUNCTIONS
###############################################################################
def _check_finite(name, x):
    """Helper function to reject NaN and infinite scalars."""
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x}")


def critical_field(p):
    """Return the critical field potential (meV) where the gap closes."""
    return p.lambda_so


def band_energies(k, u, p):
    """
    Positive band pair at momentum ``k`` and field potential ``u``.

    Parameters
    ----------
    k : float
        Momentum magnitude in natural units (meV), ``k >= 0``.
    u : float
        Field potential, meV. May be negative; the spectrum is even in u.
    p : MaterialParams

    Returns
    -------
    BandPair
        ``(sqrt(k^2 + (|u| - lambda_so)^2), sqrt(k^2 + (|u| + lambda_so)^2))``

    Raises
    ------
    ValueError
        Non-finite input or negative momentum.

    Examples
    --------
    >>> band_energies(40.0, 0.0, MaterialParams(30.0))
    BandPair(e1=50.0, e2=50.0)
    """
    _check_finite("k", k)
    _check_finite("u", u)
    if k < 0:
        raise ValueError(f"momentum k must be non-negative, got {k}")

    a = abs(u)
    e1 = math.hypot(k, a - p.lambda_so)
    e2 = math.hypot(k, a + p.lambda_so)
    return BandPair(e1, e2)


def band_structure(k, u, p):
    """
    Vectorised band pair over an array of momenta.

    Same closed form as :func:`band_energies`; this is what the
    thermodynamic integrands and the oracle evaluate.

    Parameters
    ----------
    k : float or numpy.ndarray
        Momenta (meV), non-negative.
    u : float
        Field potential, meV.
    p : MaterialParams

    Returns
    -------
    tuple of numpy.ndarray
        ``(e1, e2)`` with the shape of ``k``.
    """
    a = abs(u)
    k = np.asarray(k, dtype=float)
    return np.hypot(k, a - p.lambda_so), np.hypot(k, a + p.lambda_so)


def band_gap(u: FieldPotential, p):
    """Band gap at the Dirac point, ``2 |lambda_so - |u||`` (meV)."""
    return 2.0 * abs(p.lambda_so - abs(u))


def classify_phase(u: FieldPotential, p):
    """
    Classify the phase of the working substance at field potential ``u``.

    The comparison is exact: only ``|u| == lambda_so`` is critical. Sweep
    grids are expected to place a node exactly on the critical field.

    Returns
    -------
    Phase
    """
    a = abs(u)
    if a < p.lambda_so:
        return Phase.TOPOLOGICAL_INSULATOR
    if a > p.lambda_so:
        return Phase.BAND_INSULATOR
    return Phase.CRITICAL


def hamiltonian_matrix(kx, ky, eta, u, p):
    """
    Low-energy 4x4 valley Hamiltonian.

    Parameters
    ----------
    kx, ky : float
        Momentum components, meV.
    eta : int
        Valley index, +1 (K) or -1 (K').
    u : float
        Field potential, meV.
    p : MaterialParams

    Returns
    -------
    numpy.ndarray
        Complex Hermitian matrix with diagonal
        ``(eta*l + u, -eta*l + u, -eta*l - u, eta*l - u)`` and off-diagonal
        blocks ``kx + i*eta*ky`` (upper) and ``kx - i*eta*ky`` (lower).

    Raises
    ------
    ValueError
        ``eta`` is not +1 or -1.
    """
    if eta not in (1, -1):
        raise ValueError(f"valley index eta must be +1 or -1, got {eta}")

    lso = p.lambda_so
    up = kx + 1j * eta * ky
    dn = kx - 1j * eta * ky
    return np.array([
        [eta * lso + u, 0, up, 0],
        [0, -eta * lso + u, 0, up],
        [dn, 0, -eta * lso - u, 0],
        [0, dn, 0, eta * lso - u],
    ], dtype=complex)


def hamiltonian_eigenvalues(kx, ky, eta, u, p):
    """Ascending eigenvalues of :func:`hamiltonian_matrix` (meV)."""
    return eigvalsh(hamiltonian_matrix(kx, ky, eta, u, p))
