#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# emit_results.py
#
###############################################################################
# DEPENDENCIES
###############################################################################
import json
import logging
import math
import sys

import numpy as np
import pandas as pd


###############################################################################
# DOCUMENTATION
###############################################################################
__doc__ = """
Serialise results for plotting pipelines.

Curves and maps are written as CSV through :meth:`pandas.DataFrame.to_csv`,
single-cycle reports as JSON. Every float carries 12 significant digits,
lines end in ``\\n`` and the decimal point is ``.``, so writing the same
result twice gives byte-identical files. Absent values (NaN) are empty CSV
fields and JSON ``null``.

Output goes to stdout when no path is given.
"""
__all__ = [
    "emit_csv",
    "emit_json",
    "emit_text",
    "format_number",
    "round_float",
]


###############################################################################
# GLOBALS
###############################################################################
logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"
'''str : printf format of every serialised float.'''


###############################################################################
# FUNCTIONS
###############################################################################
def round_float(x):
    """Round to 12 significant digits; NaN and inf become None."""
    if not math.isfinite(x):
        return None
    return float(FLOAT_FORMAT % x)


def format_number(x):
    """
    Format a scalar with 12 significant digits and a decimal point.

    Examples
    --------
    >>> format_number(0.0)
    '0.0'
    >>> format_number(1.0 / 3.0)
    '0.333333333333'
    """
    text = FLOAT_FORMAT % x
    if not any(c in text for c in ".enEN"):
        text += ".0"
    return text


def _jsonable(obj):
    """Helper function rounding floats in a nested structure."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_float(float(obj))
    return obj


def _write(text, path):
    """Helper function writing ``text`` to ``path`` or stdout."""
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("Wrote %s", path)


def emit_csv(result, path=None):
    """
    Write a Curve, WorkMap or DataFrame as CSV.

    Parameters
    ----------
    result : Curve, WorkMap or pandas.DataFrame
        Anything with ``to_frame()`` or a frame itself.
    path : str, optional
        Output file; stdout when None.

    Raises
    ------
    OSError
        The file cannot be written.
    """
    frame = result if isinstance(result, pd.DataFrame) else result.to_frame()
    text = frame.to_csv(
        index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
    )
    _write(text, path)


def emit_json(obj, path=None):
    """Write a nested dict as indented JSON with rounded floats."""
    text = json.dumps(_jsonable(obj), indent=2) + "\n"
    _write(text, path)


def emit_text(text, path=None):
    """Write one line of plain text."""
    _write(f"{text}\n", path)
