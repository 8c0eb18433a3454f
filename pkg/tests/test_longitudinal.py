"""Road-load decomposition and prescribed-speed kinematics."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bevsim.longitudinal import (
    RoadLoadBreakdown,
    accel_from_trace,
    advance_distance,
    aero_force,
    grade_force,
    road_load,
    rolling_force,
    wheel_demand,
)


def test_accel_arithmetic():
    assert accel_from_trace(10.0, 10.1, 0.1) == pytest.approx(1.0)
    assert accel_from_trace(10.0, 10.0, 0.1) == 0.0
    assert accel_from_trace(10.0, 9.5, 0.1) == pytest.approx(-5.0)


def test_distance_trapezoid():
    assert advance_distance(0.0, 10.0, 12.0, 0.1) == pytest.approx(1.1)
    assert advance_distance(7.0, 0.0, 0.0, 0.1) == 7.0


def test_uniform_motion_distance():
    x = 0.0
    for _ in range(18000):
        x = advance_distance(x, 10.0, 10.0, 0.1)
    assert x == pytest.approx(18000.0, rel=1e-12)


def test_aero_force_value():
    # 0.5 * 1.2 * 0.28 * 2.3 * 27.78^2, evaluated by hand
    assert aero_force(1.2, 0.28, 2.3, 27.78) == pytest.approx(298.19585376, rel=1e-9)


def test_rolling_force_value():
    # 1800 * 9.81 * 0.007 * 1.1 at 10 m/s, flat road
    assert rolling_force(1800.0, 0.007, 0.0, 10.0) == pytest.approx(135.9666, rel=1e-9)


def test_rolling_force_zero_at_standstill():
    assert rolling_force(1800.0, 0.007, 0.0, 0.0) == 0.0


def test_grade_force_zero_on_flat():
    assert grade_force(1800.0, 0.0) == 0.0


def test_tailwind_exceeding_speed_flips_aero_sign():
    # headwind positive; a -15 m/s wind behind a 10 m/s vehicle pushes it
    breakdown = road_load(10.0, 0.0, 1800.0, 0.0, 1.2, 0.28, 2.3, 0.007, -15.0)
    assert breakdown.f_aero_n < 0.0


def test_sum_identity():
    breakdown = road_load(20.0, 0.7, 1900.0, 0.02, 1.2, 0.25, 2.4, 0.007, 1.0)
    total = (
        breakdown.f_inertia_n
        + breakdown.f_aero_n
        + breakdown.f_roll_n
        + breakdown.f_grade_n
    )
    assert breakdown.f_wheel_req_n == total


@given(
    v=st.floats(0.0, 60.0),
    a=st.floats(-6.0, 6.0),
    m=st.floats(500.0, 4000.0),
    grade=st.floats(-math.pi / 4, math.pi / 4),
    wind=st.floats(-20.0, 20.0),
)
@settings(max_examples=80, deadline=None)
def test_forces_finite_and_signed(v, a, m, grade, wind):
    breakdown = road_load(v, a, m, grade, 1.2, 0.3, 2.4, 0.008, wind)
    for value in (
        breakdown.f_aero_n,
        breakdown.f_roll_n,
        breakdown.f_grade_n,
        breakdown.f_inertia_n,
        breakdown.f_wheel_req_n,
    ):
        assert math.isfinite(value)
    if v + wind >= 0.0:
        assert breakdown.f_aero_n >= 0.0
    assert breakdown.f_roll_n >= 0.0
    assert breakdown.f_wheel_req_n == pytest.approx(
        breakdown.f_inertia_n + breakdown.f_aero_n + breakdown.f_roll_n + breakdown.f_grade_n
    )


def make_breakdown(force):
    return RoadLoadBreakdown(f_aero_n=0.0, f_roll_n=0.0, f_grade_n=0.0, f_inertia_n=force)


def test_wheel_demand_throttle_ratio():
    demand = wheel_demand(make_breakdown(2000.0), 10.0, 8000.0, 8000.0)
    assert demand.throttle_frac == pytest.approx(0.25)
    assert demand.brake_frac == 0.0
    assert not demand.brake_demand_flag


def test_wheel_demand_zero_force():
    demand = wheel_demand(make_breakdown(0.0), 10.0, 8000.0, 8000.0)
    assert demand.throttle_frac == 0.0
    assert demand.brake_frac == 0.0
    assert not demand.brake_demand_flag
    assert demand.p_wheel_w == 0.0


def test_wheel_demand_braking():
    demand = wheel_demand(make_breakdown(-3000.0), 15.0, 8000.0, 8000.0)
    assert demand.p_wheel_w == pytest.approx(-45000.0)
    assert demand.brake_demand_flag
    assert demand.brake_frac == pytest.approx(3000.0 / 8000.0)


def test_demand_fractions_clipped_to_one():
    demand = wheel_demand(make_breakdown(20000.0), 5.0, 8000.0, 8000.0)
    assert demand.throttle_frac == 1.0
