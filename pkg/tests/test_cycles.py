import math

import pytest
from hypothesis import assume
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from src.cycles import CycleConsistencyError
from src.cycles import CycleKind
from src.cycles import Numerics
from src.cycles import OperationMode
from src.cycles import OttoSpec
from src.cycles import StirlingSpec
from src.cycles import classify_mode
from src.cycles import engine_efficiency
from src.cycles import otto_heats
from src.cycles import otto_report
from src.cycles import stirling_heats
from src.cycles import stirling_report
from src.cycles import stirling_work_grand
from src.material import MaterialParams
from tests import oracle


STANENE = MaterialParams(lambda_so=30.0)


# Mode classification

@pytest.mark.parametrize("work, q_in, q_cold, mode", [
    (1.0, 2.0, -1.0, OperationMode.ENGINE),
    (-1.0, 0.5, 0.5, OperationMode.REFRIGERATOR),
    (-1.0, 0.5, -1.5, OperationMode.DISSIPATOR),
    (0.0, 0.0, 0.0, OperationMode.DISSIPATOR),
    (0.0, -1.0, 1.0, OperationMode.REFRIGERATOR),
])
def test_classify_mode(work, q_in, q_cold, mode):
    assert classify_mode(work, q_in, q_cold) is mode


def test_efficiency_only_for_ordered_engines():
    spec = OttoSpec(40.0, 30.0, 33.0, 30.0)
    assert engine_efficiency(1.0, 4.0, OperationMode.ENGINE, spec) == 0.25
    assert engine_efficiency(1.0, 4.0, OperationMode.DISSIPATOR, spec) is None
    assert engine_efficiency(1.0, -4.0, OperationMode.ENGINE, spec) is None
    reversed_baths = OttoSpec(30.0, 40.0, 33.0, 30.0)
    assert engine_efficiency(1.0, 4.0, OperationMode.ENGINE, reversed_baths) is None


@pytest.mark.parametrize("kwargs", [
    {"t_hot": 0.0, "t_cold": 30.0, "u_hot": 1.0, "u_cold": 2.0},
    {"t_hot": 40.0, "t_cold": -3.0, "u_hot": 1.0, "u_cold": 2.0},
    {"t_hot": 40.0, "t_cold": 30.0, "u_hot": math.nan, "u_cold": 2.0},
])
def test_cycle_spec_validation(kwargs):
    with pytest.raises(ValueError):
        OttoSpec(**kwargs)
    with pytest.raises(ValueError):
        StirlingSpec(**kwargs)


def test_numerics_combine():
    parts = [Numerics(1e-9, True), Numerics(2e-9, False)]
    combined = Numerics.combine(*parts, cross_check=5e-10)
    assert combined.error_estimate == pytest.approx(3e-9)
    assert not combined.converged
    assert combined.cross_check == 5e-10


# Otto

def test_otto_equal_fields_give_zero_work():
    heats = otto_heats(OttoSpec(40.0, 30.0, 30.0, 30.0), STANENE)
    assert heats.q_in.value == -heats.q_out.value
    report = otto_report(OttoSpec(300.0, 150.0, 55.0, 55.0), STANENE)
    assert abs(report.work) <= 1e-12
    assert report.efficiency is None


def test_otto_single_bath_produces_no_work():
    report = otto_report(OttoSpec(40.0, 40.0, 35.0, 30.0), STANENE)
    assert report.q_in + report.q_out < 0.0
    assert report.mode in (OperationMode.REFRIGERATOR, OperationMode.DISSIPATOR)
    assert report.efficiency is None


@given(u_hot=st.floats(0.0, 150.0), u_cold=st.floats(0.0, 150.0),
       T=st.floats(20.0, 400.0))
@settings(max_examples=100, deadline=None)
def test_otto_kelvin_planck(u_hot, u_cold, T):
    report = otto_report(OttoSpec(T, T, u_hot, u_cold), STANENE)
    assert report.work <= report.numerics.error_estimate + 1e-12
    assert report.efficiency is None


def test_otto_engine_near_critical_field():
    spec = OttoSpec(40.0, 30.0, 33.0, 30.0)
    report = otto_report(spec, STANENE)
    assert report.q_in > 0.0
    assert report.work > 0.0
    assert report.work == report.q_in + report.q_out
    assert report.mode is OperationMode.ENGINE
    assert 0.0 < report.efficiency <= 0.25
    assert report.strokes == {"AB": report.q_in, "CD": report.q_out}
    assert report.kind is CycleKind.OTTO
    assert report.numerics.converged


def test_otto_engine_at_high_temperature():
    report = otto_report(OttoSpec(300.0, 150.0, 90.0, 60.0), STANENE)
    assert report.mode is OperationMode.ENGINE
    assert 0.0 < report.efficiency <= 0.5


def test_otto_positive_bands_only_halves_work():
    spec = OttoSpec(300.0, 150.0, 90.0, 60.0)
    full = otto_report(spec, STANENE)
    half = otto_report(spec, MaterialParams(30.0, include_valence=False))
    assert full.work == pytest.approx(2.0 * half.work, rel=1e-8)
    assert full.efficiency == pytest.approx(half.efficiency, rel=1e-8)


@pytest.mark.slow
@given(
    t_hot=st.floats(20.0, 400.0),
    t_cold=st.floats(20.0, 400.0),
    u_hot=st.floats(0.0, 150.0),
    u_cold=st.floats(0.0, 150.0),
)
@settings(max_examples=1000, deadline=None)
def test_otto_carnot_bound(t_hot, t_cold, u_hot, u_cold):
    spec = OttoSpec(t_hot, t_cold, u_hot, u_cold)
    report = otto_report(spec, STANENE)
    if report.efficiency is None:
        return
    # Far in the gapped, cold corner the heats sit below the absolute
    # tolerance and carry no relative accuracy.
    assume(report.numerics.error_estimate <= 1e-7 * report.q_in)
    assert report.efficiency <= spec.carnot_efficiency + 1e-6


@given(
    t_cold=st.floats(60.0, 150.0),
    gap=st.floats(50.0, 250.0),
    u_hot=st.floats(0.0, 60.0),
    u_cold=st.floats(0.0, 60.0),
)
@settings(max_examples=10, deadline=None)
def test_otto_heats_match_oracle(t_cold, gap, u_hot, u_cold):
    t_hot = min(t_cold + gap, 400.0)
    heats = otto_heats(OttoSpec(t_hot, t_cold, u_hot, u_cold), STANENE)
    ref_in, ref_out = oracle.otto_heats(t_hot, t_cold, u_hot, u_cold, STANENE)
    assert abs(heats.q_in.value - ref_in.value) <= 1e-6 * ref_in.magnitude
    assert abs(heats.q_out.value - ref_out.value) <= 1e-6 * ref_out.magnitude


# Stirling

def test_stirling_degenerate_rectangle():
    report = stirling_report(StirlingSpec(40.0, 30.0, 35.0, 35.0), STANENE)
    assert report.work == 0.0
    assert report.strokes["BA"] == 0.0
    assert report.strokes["DC"] == 0.0
    assert report.strokes["CB"] == -report.strokes["AD"]
    assert report.mode is not OperationMode.ENGINE
    assert report.efficiency is None


def test_stirling_single_bath_sums_to_zero():
    report = stirling_report(StirlingSpec(80.0, 80.0, 45.0, 20.0), STANENE)
    assert abs(sum(report.strokes.values())) <= 10 * report.numerics.error_estimate
    assert report.efficiency is None


def test_stirling_ledger_near_critical_field():
    spec = StirlingSpec(40.0, 30.0, 40.0, 30.0)
    report = stirling_report(spec, STANENE)
    s = report.strokes
    assert s["BA"] > 0.0
    assert report.work == s["BA"] + s["CB"] + s["DC"] + s["AD"]
    assert report.q_in == s["BA"] + s["AD"]
    assert report.q_out == s["CB"] + s["DC"]
    assert report.mode is OperationMode.ENGINE
    assert 0.0 < report.efficiency <= 0.25
    assert set(report.corners) == {"A", "B", "C", "D"}
    assert report.corners["B"].point.u == 30.0
    assert report.corners["D"].point.temperature == 30.0


def test_stirling_heats_from_corner_states():
    spec = StirlingSpec(40.0, 30.0, 40.0, 30.0)
    heats = stirling_heats(spec, STANENE)
    c = heats.corners
    assert heats.q_BA.value == 40.0 * (c["B"].entropy.value - c["A"].entropy.value)
    assert heats.q_AD.value == (c["A"].internal_energy.value
                                - c["D"].internal_energy.value)


def test_stirling_field_swap_antisymmetry():
    a = stirling_report(StirlingSpec(120.0, 80.0, 40.0, 25.0), STANENE)
    b = stirling_report(StirlingSpec(120.0, 80.0, 25.0, 40.0), STANENE)
    tol = 10 * (a.numerics.error_estimate + b.numerics.error_estimate) + 1e-12
    assert abs(a.work + b.work) <= tol


@given(
    t_cold=st.floats(60.0, 150.0),
    gap=st.floats(50.0, 250.0),
    u_hot=st.floats(0.0, 60.0),
    u_cold=st.floats(0.0, 60.0),
)
@settings(max_examples=50, deadline=None)
def test_stirling_work_paths_agree(t_cold, gap, u_hot, u_cold):
    assume(abs(u_hot - u_cold) > 0.5)
    t_hot = min(t_cold + gap, 400.0)
    report = stirling_report(StirlingSpec(t_hot, t_cold, u_hot, u_cold), STANENE)
    scale = sum(abs(v) for v in report.strokes.values())
    assert report.numerics.cross_check <= 1e-6 * scale


@given(
    t_cold=st.floats(60.0, 150.0),
    gap=st.floats(50.0, 250.0),
    u_hot=st.floats(0.0, 60.0),
    u_cold=st.floats(0.0, 60.0),
)
@settings(max_examples=10, deadline=None)
def test_stirling_work_matches_oracle(t_cold, gap, u_hot, u_cold):
    t_hot = min(t_cold + gap, 400.0)
    spec = StirlingSpec(t_hot, t_cold, u_hot, u_cold)
    ours = stirling_work_grand(spec, STANENE)
    ref = oracle.stirling_work(t_hot, t_cold, u_hot, u_cold, STANENE)
    assert abs(ours.value - ref.value) <= 1e-6 * ref.magnitude


@pytest.mark.slow
@given(
    t_hot=st.floats(20.0, 400.0),
    t_cold=st.floats(20.0, 400.0),
    u_hot=st.floats(0.0, 150.0),
    u_cold=st.floats(0.0, 150.0),
)
@settings(max_examples=150, deadline=None)
def test_stirling_carnot_bound(t_hot, t_cold, u_hot, u_cold):
    spec = StirlingSpec(t_hot, t_cold, u_hot, u_cold)
    report = stirling_report(spec, STANENE)
    if report.efficiency is None:
        return
    assume(report.numerics.error_estimate <= 1e-7 * report.q_in)
    assert report.efficiency <= 1.0 - t_cold / t_hot + 1e-6


def test_consistency_error_is_a_runtime_error():
    assert issubclass(CycleConsistencyError, RuntimeError)


def test_reports_to_dict():
    otto = otto_report(OttoSpec(40.0, 30.0, 33.0, 30.0), STANENE).to_dict()
    assert otto["cycle"] == "otto"
    assert otto["mode"] == "engine"
    assert otto["spec"] == {
        "t_hot": 40.0, "t_cold": 30.0, "u_hot": 33.0, "u_cold": 30.0
    }
    assert "corners" not in otto
    stirling = stirling_report(
        StirlingSpec(40.0, 30.0, 40.0, 30.0), STANENE
    ).to_dict()
    assert set(stirling["strokes"]) == {"BA", "CB", "DC", "AD"}
    assert set(stirling["corners"]["A"]) == {
        "temperature", "u", "internal_energy", "entropy", "grand_term"
    }


def test_reports_match_golden_file():
    golden = oracle.load_golden()
    otto = otto_report(OttoSpec(40.0, 30.0, 33.0, 30.0), STANENE)
    assert otto.q_in == pytest.approx(golden["otto_40_30_33_30"]["q_in"], rel=1e-6)
    high = otto_report(OttoSpec(300.0, 150.0, 90.0, 60.0), STANENE)
    assert high.work == pytest.approx(golden["otto_300_150_90_60"]["work"], rel=1e-6)
    stirling = stirling_report(StirlingSpec(40.0, 30.0, 40.0, 30.0), STANENE)
    ref = golden["stirling_40_30_40_30"]
    for label in ("BA", "CB", "DC", "AD"):
        assert stirling.strokes[label] == pytest.approx(ref["q_" + label], rel=1e-6)
    assert stirling.work == pytest.approx(ref["work"], rel=1e-6)
