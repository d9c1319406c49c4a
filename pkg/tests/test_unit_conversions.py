import math

import numpy as np
import pytest
from scipy.constants import e as ELEMENTARY_CHARGE
from scipy.constants import hbar

from src.unit_conversions import SIConversion
from src.unit_conversions import to_si


V_F = 5.0e5


def test_zero_maps_to_zero():
    assert to_si(0.0, SIConversion(V_F)) == 0.0


def test_scale_matches_hand_conversion():
    mev = ELEMENTARY_CHARGE * 1e-3
    expected = mev ** 3 / (hbar * V_F) ** 2
    assert SIConversion(V_F).scale == pytest.approx(expected, rel=1e-9)


def test_doubling_fermi_velocity_quarters_density():
    slow, fast = SIConversion(V_F), SIConversion(2.0 * V_F)
    assert to_si(1.0, fast) == pytest.approx(to_si(1.0, slow) / 4.0, rel=1e-12)


def test_array_conversion_keeps_shape_nan_and_argmax():
    x = np.array([[0.5, 3.0, math.nan], [-1.0, 2.0, 0.0]])
    y = to_si(x, SIConversion(V_F))
    assert y.shape == x.shape
    assert math.isnan(y[0, 2])
    assert np.nanargmax(y) == np.nanargmax(x)


@pytest.mark.parametrize("v_f", [0.0, -1.0, math.nan, math.inf])
def test_invalid_fermi_velocity(v_f):
    with pytest.raises(ValueError, match="v_f"):
        SIConversion(v_f)
