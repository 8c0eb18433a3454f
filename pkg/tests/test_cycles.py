"""Drive cycles: CSV loading, parametric building, resampling."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bevsim.config import SegmentSpec
from bevsim.cycles import build_parametric, load_cycle_csv, resample, write_cycle_csv
from bevsim.errors import (
    FormatError,
    MonotonicityError,
    NegativeSpeedError,
    SchemaError,
)


def write_csv(tmp_path, body, header="time_s,speed_kmh"):
    path = tmp_path / "trace.csv"
    path.write_text(header + "\n" + body, encoding="utf-8")
    return path


def test_speeds_converted_to_mps(tmp_path):
    cycle = load_cycle_csv(write_csv(tmp_path, "0,0\n1,36\n"))
    assert cycle.times_s == (0.0, 1.0)
    assert cycle.speeds_mps == (0.0, 10.0)


def test_non_monotone_time_rejected(tmp_path):
    with pytest.raises(MonotonicityError):
        load_cycle_csv(write_csv(tmp_path, "0,0\n2,10\n1,20\n"))


def test_time_must_start_at_zero(tmp_path):
    with pytest.raises(MonotonicityError):
        load_cycle_csv(write_csv(tmp_path, "5,0\n6,10\n"))


def test_negative_speed_rejected(tmp_path):
    with pytest.raises(NegativeSpeedError):
        load_cycle_csv(write_csv(tmp_path, "0,0\n1,-3\n"))


def test_wrong_header_rejected(tmp_path):
    with pytest.raises(FormatError, match="header"):
        load_cycle_csv(write_csv(tmp_path, "0,0\n1,10\n", header="t,v"))


def test_non_numeric_row_rejected(tmp_path):
    with pytest.raises(FormatError, match="line 3"):
        load_cycle_csv(write_csv(tmp_path, "0,0\nx,10\n"))


def test_bundled_cycle_roundtrip(tmp_path):
    from bevsim import resources

    cycle = load_cycle_csv(resources.cycle_path("urban_stop_start"))
    assert cycle.duration_s == 600.0
    out = tmp_path / "copy.csv"
    write_cycle_csv(cycle, out)
    again = load_cycle_csv(out)
    assert again.distance_m == pytest.approx(cycle.distance_m, rel=1e-9)


def test_wltp_class_trace_distance_when_installed():
    """Only meaningful when the public 1800 s class-3b trace is dropped in."""
    from bevsim import resources

    path = resources.cycle_path("wltp_class3b")
    if not path.is_file():
        pytest.skip("public trace not bundled")
    cycle = load_cycle_csv(path)
    assert cycle.duration_s == 1800.0
    assert cycle.distance_m == pytest.approx(23270.0, abs=50.0)


# -- parametric routes --------------------------------------------------------

def seg(kind, duration, target=None):
    return SegmentSpec(kind=kind, duration_s=duration, target_speed_mps=target)


def test_parametric_triangle_trapezoid_distance():
    cycle = build_parametric(
        [seg("accel", 10.0, 15.0), seg("cruise", 20.0), seg("decel", 15.0, 0.0)], 0.1
    )
    # 75 + 300 + 112.5, trapezoids evaluated by hand
    assert cycle.distance_m == pytest.approx(487.5, abs=1e-9)
    assert cycle.duration_s == 45.0


def test_parametric_idle_only():
    cycle = build_parametric([seg("idle", 60.0)], 0.1)
    assert cycle.distance_m == 0.0
    assert all(v == 0.0 for v in cycle.speeds_mps)


def test_parametric_empty_rejected():
    with pytest.raises(SchemaError):
        build_parametric([], 0.1)


def test_parametric_idle_requires_standstill():
    with pytest.raises(SchemaError, match="idle"):
        build_parametric([seg("accel", 5.0, 10.0), seg("idle", 5.0)], 0.1)


def test_parametric_decel_cannot_speed_up():
    with pytest.raises(SchemaError, match="decel"):
        build_parametric([seg("accel", 5.0, 10.0), seg("decel", 5.0, 20.0)], 0.1)


segment_lists = st.lists(
    st.one_of(
        st.builds(
            lambda d, t: {"kind": "accel", "duration_s": d, "target": t},
            st.floats(0.5, 30.0),
            st.floats(0.0, 40.0),
        ),
        st.builds(lambda d: {"kind": "cruise", "duration_s": d}, st.floats(0.5, 60.0)),
        st.builds(
            lambda d, t: {"kind": "decel", "duration_s": d, "target": t},
            st.floats(0.5, 30.0),
            st.floats(0.0, 40.0),
        ),
    ),
    min_size=1,
    max_size=8,
)


@given(segment_lists)
@settings(max_examples=60, deadline=None)
def test_parametric_invariants_hold_for_any_valid_plan(raw_segments):
    """Random feasible segment plans always produce a valid cycle."""
    segments = []
    current = 0.0
    for item in raw_segments:
        if item["kind"] == "accel":
            target = max(item["target"], current)
            segments.append(seg("accel", item["duration_s"], target))
            current = target
        elif item["kind"] == "decel":
            target = min(item["target"], current)
            segments.append(seg("decel", item["duration_s"], target))
            current = target
        else:
            segments.append(seg("cruise", item["duration_s"]))
    cycle = build_parametric(segments, 0.5)
    assert cycle.times_s[0] == 0.0
    assert all(t1 > t0 for t0, t1 in zip(cycle.times_s, cycle.times_s[1:]))
    assert all(v >= 0.0 for v in cycle.speeds_mps)
    assert cycle.duration_s == pytest.approx(sum(s.duration_s for s in segments))


# -- resampling ---------------------------------------------------------------

def test_resample_linear_midpoint(tmp_path):
    cycle = load_cycle_csv(write_csv(tmp_path, "0,0\n1,36\n"))
    fine = resample(cycle, 0.5)
    assert fine.times_s == (0.0, 0.5, 1.0)
    assert fine.speeds_mps == (0.0, 5.0, 10.0)


def test_resample_identity_at_native_dt():
    cycle = build_parametric([seg("accel", 10.0, 15.0), seg("cruise", 10.0)], 0.5)
    again = resample(cycle, 0.5)
    assert again.times_s == cycle.times_s
    assert again.speeds_mps == cycle.speeds_mps


def test_resample_idempotent():
    cycle = build_parametric([seg("accel", 7.0, 12.0), seg("decel", 7.0, 2.0)], 1.0)
    once = resample(cycle, 0.1)
    twice = resample(once, 0.1)
    assert once.times_s == twice.times_s
    assert once.speeds_mps == twice.speeds_mps


def test_resample_preserves_distance_of_1hz_trace():
    from bevsim import resources

    cycle = load_cycle_csv(resources.cycle_path("mixed_full_range"))
    fine = resample(cycle, 0.1)
    assert abs(fine.distance_m - cycle.distance_m) / cycle.distance_m < 1e-3


@given(st.sampled_from([0.5, 0.25, 0.2, 0.1, 0.05]), st.integers(2, 30))
@settings(max_examples=40, deadline=None)
def test_resample_distance_exact_on_refinement(dt, n):
    """Refining onto a grid containing the source knots preserves distance."""
    times = tuple(float(i) for i in range(n))
    speeds = tuple(float((i * 7) % 13) for i in range(n))
    from bevsim.cycles import DriveCycle

    cycle = DriveCycle(name="rand", times_s=times, speeds_mps=speeds)
    fine = resample(cycle, dt)
    assert fine.distance_m == pytest.approx(cycle.distance_m, rel=1e-9, abs=1e-9)
