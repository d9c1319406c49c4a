#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# quadrature.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
from dataclasses import dataclass
import logging
import math

from scipy.integrate import quad


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Semi-infinite Quadrature Module

This module integrates smooth, exponentially decaying integrands on
``[0, inf)``. It is the engine behind every thermodynamic density and heat
integral in the package.

**Logic**

1.  The first window ``[0, K]`` starts at
    ``K = max(initial_cutoff, 60 * decay_scale)`` and is integrated with
    :func:`scipy.integrate.quad` (adaptive 21-node Gauss-Kronrod panels),
    with break points at ``decay_scale * 2**j``, j = -2..5.
2.  The window then grows by octaves: ``[K, 2K]`` is integrated and added,
    and ``K`` doubles, until the last octave contributes less than
    ``max(abs_tol, rel_tol * |value|)`` or ``max_doublings`` is reached.
3.  The result carries the summed panel error estimates plus the last-octave
    bound, the cutoff used and the number of integrand evaluations.
    Non-convergence is flagged on the result, never raised.

"""
__all__ = [
    "DEFAULT_SETTINGS",
    "QuadratureResult",
    "QuadratureSettings",
    "integrate_decaying",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

CUTOFF_SCALES = 60.0
'''float : First window length in units of the decay scale.'''

BREAKPOINT_EXPONENTS = range(-2, 6)
'''range : Break points of the first window at decay_scale * 2**j.'''


###############################################################################
# CLASSES
###############################################################################
@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and budgets of :func:`integrate_decaying`.

    Attributes
    ----------
    rel_tol : float
        Relative tolerance, > 0.
    abs_tol : float
        Absolute tolerance in integrand units, >= 0.
    initial_cutoff : float
        Lower bound for the first window, meV.
    max_doublings : int
        Maximum number of octave extensions, >= 1.
    max_panels : int
        Subinterval budget of each adaptive Gauss-Kronrod call, >= 1.
    """
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    initial_cutoff: float = 0.0
    max_doublings: int = 20
    max_panels: int = 200

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if not self.abs_tol >= 0:
            raise ValueError(
                f"abs_tol must be non-negative, got {self.abs_tol}"
            )
        if not (math.isfinite(self.initial_cutoff)
                and self.initial_cutoff >= 0):
            raise ValueError(
                f"initial_cutoff must be finite and non-negative, got "
                f"{self.initial_cutoff}"
            )
        if self.max_doublings < 1:
            raise ValueError(
                f"max_doublings must be at least 1, got {self.max_doublings}"
            )
        if self.max_panels < 1:
            raise ValueError(
                f"max_panels must be at least 1, got {self.max_panels}"
            )


DEFAULT_SETTINGS = QuadratureSettings()
'''QuadratureSettings : Package-wide default tolerances.'''


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of one semi-infinite integration.

    Attributes
    ----------
    value : float
    error_estimate : float
        Non-negative bound: panel error estimates plus the last octave.
    cutoff_used : float
        Final upper limit K, meV.
    evaluations : int
        Number of integrand evaluations.
    converged : bool
        False when the octave criterion was not met within
        ``max_doublings`` or a panel integration failed.
    """
    value: float
    error_estimate: float
    cutoff_used: float
    evaluations: int
    converged: bool = True


###############################################################################
# FUNCTIONS
###############################################################################
def _integrate_panel(f, a, b, settings, points=None):
    """Helper function to run one adaptive Gauss-Kronrod integration.

    Returns
    -------
    tuple
        ``(value, abserr, neval, ok)``
    """
    out = quad(
        f, a, b,
        epsabs=settings.abs_tol,
        epsrel=settings.rel_tol,
        limit=settings.max_panels,
        points=points or None,
        full_output=1,
    )
    value, abserr, info = out[0], out[1], out[2]
    ok = math.isfinite(value) and math.isfinite(abserr)
    # A fourth element is QUADPACK's warning message. Roundoff warnings keep
    # the reported error estimate; exhausting the panel budget does not.
    if len(out) > 3:
        logger.debug("quad on [%g, %g]: %s", a, b, out[3])
        if info.get("last", 0) >= settings.max_panels:
            ok = False
    return value, abserr, info["neval"], ok


def integrate_decaying(f, decay_scale, settings=DEFAULT_SETTINGS):
    """
    Integrate an exponentially decaying function over ``[0, inf)``.

    Parameters
    ----------
    f : callable
        Scalar integrand ``f(k) -> float``, finite on the window. It must be
        safe to call concurrently.
    decay_scale : float
        Slowest decay length of the integrand, meV, > 0. Callers pass
        ``max(k_B * T_max, lambda_so + |u|_max)``.
    settings : QuadratureSettings, optional

    Returns
    -------
    QuadratureResult

    Raises
    ------
    ValueError
        ``decay_scale`` is not a finite positive number.

    Examples
    --------
    >>> r = integrate_decaying(lambda k: k * math.exp(-k), 1.0)
    >>> round(r.value, 9)
    1.0
    """
    if not (math.isfinite(decay_scale) and decay_scale > 0):
        raise ValueError(
            f"decay_scale must be a finite positive number, got {decay_scale}"
        )

    cutoff = max(settings.initial_cutoff, CUTOFF_SCALES * decay_scale)
    points = [
        decay_scale * 2.0 ** j for j in BREAKPOINT_EXPONENTS
        if decay_scale * 2.0 ** j < cutoff
    ]
    value, error, evaluations, ok = _integrate_panel(
        f, 0.0, cutoff, settings, points=points
    )

    converged = False
    last_octave = 0.0
    for _ in range(settings.max_doublings):
        octave, octave_err, neval, octave_ok = _integrate_panel(
            f, cutoff, 2.0 * cutoff, settings
        )
        value += octave
        error += octave_err
        evaluations += neval
        ok = ok and octave_ok
        cutoff *= 2.0
        last_octave = abs(octave)
        if last_octave <= max(settings.abs_tol, settings.rel_tol * abs(value)):
            converged = True
            break

    if not converged:
        logger.warning(
            "Tail did not decay within %d doublings (cutoff %g meV, last "
            "octave %g)", settings.max_doublings, cutoff, last_octave
        )
    elif not ok:
        logger.warning(
            "Adaptive panel integration failed below cutoff %g meV", cutoff
        )

    logger.debug(
        "integrate_decaying: value=%.12g err=%.3g cutoff=%g evals=%d",
        value, error + last_octave, cutoff, evaluations
    )
    return QuadratureResult(
        value=value,
        error_estimate=error + last_octave,
        cutoff_used=cutoff,
        evaluations=evaluations,
        converged=converged and ok,
    )
