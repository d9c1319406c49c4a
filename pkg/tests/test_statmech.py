import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from src.material import MaterialParams
from src.statmech import BOLTZMANN_MEV_PER_K
from src.statmech import CONSTANTS
from src.statmech import ThermoPoint
from src.statmech import entropy_density
from src.statmech import fermi_occupation
from src.statmech import grand_term_density
from src.statmech import internal_energy_density
from src.statmech import mode_entropy
from src.statmech import mode_grand_term
from src.statmech import thermo_state
from tests import oracle


STANENE = MaterialParams(lambda_so=30.0)
TEMPERATURES = [20.0, 60.0, 120.0, 200.0, 300.0]
FIELDS = [0.0, 15.0, 30.0, 45.0, 60.0]


def test_boltzmann_constant():
    assert BOLTZMANN_MEV_PER_K == 0.08617333262
    assert CONSTANTS.k_b == BOLTZMANN_MEV_PER_K


def test_fermi_occupation_examples():
    assert fermi_occupation(0.0, 300.0) == 0.5
    assert fermi_occupation(10.0, 30.0) == pytest.approx(0.02047, abs=5e-6)
    assert fermi_occupation(-10.0, 30.0) == pytest.approx(0.97953, abs=5e-6)


def test_fermi_occupation_vectorised():
    f = fermi_occupation(np.array([-1e4, 0.0, 1e4]), 10.0)
    assert f.tolist() == [1.0, 0.5, 0.0]


@pytest.mark.parametrize("T", [0.0, -5.0])
def test_fermi_occupation_rejects_non_positive_temperature(T):
    with pytest.raises(ValueError, match="temperature"):
        fermi_occupation(1.0, T)


@given(E=st.floats(-500.0, 500.0), T=st.floats(1.0, 1000.0))
def test_particle_hole_symmetry(E, T):
    total = fermi_occupation(E, T) + fermi_occupation(-E, T)
    assert abs(total - 1.0) <= 1e-12


@given(
    E=st.floats(-10.0, 50.0),
    dE=st.floats(1e-3, 10.0),
    T=st.floats(10.0, 1000.0),
)
def test_occupation_strictly_decreasing_in_energy(E, dE, T):
    assert fermi_occupation(E + dE, T) < fermi_occupation(E, T)


@given(
    E=st.floats(0.5, 50.0),
    T=st.floats(10.0, 500.0),
    dT=st.floats(1.0, 500.0),
)
def test_occupation_approaches_half_with_temperature(E, T, dT):
    low = abs(fermi_occupation(E, T) - 0.5)
    high = abs(fermi_occupation(E, T + dT) - 0.5)
    assert high < low


def test_mode_entropy_maximum_is_ln2():
    assert mode_entropy(0.0) == pytest.approx(math.log(2.0), rel=1e-15)
    assert mode_grand_term(0.0) == pytest.approx(math.log(2.0), rel=1e-15)


@given(x=st.floats(-30.0, 30.0))
def test_mode_entropy_is_binary_entropy(x):
    f = 1.0 / (math.exp(x) + 1.0)
    g = 1.0 / (math.exp(-x) + 1.0)
    expected = f * math.log1p(math.exp(x)) + g * math.log1p(math.exp(-x))
    assert mode_entropy(x) == pytest.approx(expected, rel=1e-9, abs=1e-15)


@pytest.mark.parametrize("x", [0.5, 3.0, 24.0, 36.0])
def test_mode_entropy_is_even(x):
    assert mode_entropy(-x) == mode_entropy(x)
    assert mode_entropy(-x) > 0.0


def test_thermo_point_validation():
    with pytest.raises(ValueError, match="temperature"):
        ThermoPoint(0.0, 10.0)
    with pytest.raises(ValueError, match="u"):
        ThermoPoint(10.0, math.nan)


def test_third_law_limit_in_gapped_phase():
    pt = ThermoPoint(1.0, 40.0)
    u = internal_energy_density(pt, STANENE)
    s = entropy_density(pt, STANENE)
    g = grand_term_density(pt, STANENE)
    assert 0.0 <= u.value < 1e-8
    assert 0.0 <= s.value < 1e-8
    assert 0.0 <= g.value < 1e-8


def test_internal_energy_increases_with_temperature():
    values = [
        internal_energy_density(ThermoPoint(T, 40.0), STANENE).value
        for T in TEMPERATURES
    ]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_entropy_non_negative_and_increasing_on_grid():
    for u in FIELDS:
        values = [
            entropy_density(ThermoPoint(T, u), STANENE).value
            for T in TEMPERATURES
        ]
        assert all(v >= 0.0 for v in values)
        assert all(b > a for a, b in zip(values, values[1:]))


def test_grand_term_identity_on_grid():
    for T in TEMPERATURES:
        for u in FIELDS:
            st_ = thermo_state(ThermoPoint(T, u), STANENE)
            U, S, G = st_.internal_energy, st_.entropy, st_.grand_term
            combined = T * S.error_estimate + U.error_estimate + G.error_estimate
            tol = max(10.0 * combined, 1e-10 * abs(U.value))
            assert abs(G.value - (T * S.value - U.value)) <= tol


def test_grand_term_identity_relative():
    st_ = thermo_state(ThermoPoint(120.0, 35.0), STANENE)
    expected = 120.0 * st_.entropy.value - st_.internal_energy.value
    assert st_.grand_term.value == pytest.approx(expected, rel=1e-6)


def test_densities_even_in_field():
    for T in (30.0, 150.0):
        for u in (10.0, 30.0, 55.0):
            plus, minus = ThermoPoint(T, u), ThermoPoint(T, -u)
            assert (internal_energy_density(plus, STANENE)
                    == internal_energy_density(minus, STANENE))
            assert entropy_density(plus, STANENE) == entropy_density(minus, STANENE)


def test_positive_bands_only_halves_densities():
    pt = ThermoPoint(150.0, 20.0)
    full = internal_energy_density(pt, STANENE).value
    half = internal_energy_density(pt, MaterialParams(30.0, False)).value
    assert full == pytest.approx(2.0 * half, rel=1e-9)


def test_densities_match_oracle_examples():
    U = internal_energy_density(ThermoPoint(300.0, 40.0), STANENE)
    S = entropy_density(ThermoPoint(300.0, 40.0), STANENE)
    G = grand_term_density(ThermoPoint(300.0, 0.0), STANENE)
    assert U.value == pytest.approx(oracle.internal_energy(300.0, 40.0, STANENE).value, rel=1e-6)
    assert S.value == pytest.approx(oracle.entropy(300.0, 40.0, STANENE).value, rel=1e-6)
    assert G.value == pytest.approx(oracle.grand_term(300.0, 0.0, STANENE).value, rel=1e-6)


@given(T=st.floats(60.0, 400.0), u=st.floats(0.0, 60.0))
@settings(max_examples=10, deadline=None)
def test_densities_match_oracle_random(T, u):
    pt = ThermoPoint(T, u)
    for ours, theirs in (
        (internal_energy_density, oracle.internal_energy),
        (entropy_density, oracle.entropy),
        (grand_term_density, oracle.grand_term),
    ):
        ref = theirs(T, u, STANENE)
        assert abs(ours(pt, STANENE).value - ref.value) <= 1e-6 * ref.magnitude


def test_densities_match_golden_file():
    golden = oracle.load_golden()
    U = internal_energy_density(ThermoPoint(300.0, 40.0), STANENE).value
    S = entropy_density(ThermoPoint(300.0, 40.0), STANENE).value
    G = grand_term_density(ThermoPoint(300.0, 0.0), STANENE).value
    assert U == pytest.approx(golden["internal_energy_T300_u40"], rel=1e-6)
    assert S == pytest.approx(golden["entropy_T300_u40"], rel=1e-6)
    assert G == pytest.approx(golden["grand_term_T300_u0"], rel=1e-6)
