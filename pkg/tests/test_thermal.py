"""First-order thermal trends against analytic relaxation."""

import math

import pytest

from bevsim.config import ThermalParams
from bevsim.errors import NumericalError
from bevsim.thermal import (
    ThermalState,
    battery_thermal_step,
    check_sanity,
    coolant_step,
    motor_thermal_step,
    thermal_trend_step,
)

PARAMS = ThermalParams(
    tau_batt_s=600.0,
    tau_motor_s=900.0,
    tau_coolant_s=100.0,
    beta_batt_k_per_j=2e-5,
    beta_motor_k_per_j=1e-5,
)


def test_battery_equilibrium_without_current():
    assert battery_thermal_step(20.0, 20.0, 0.0, 0.5, PARAMS) == 20.0


def test_battery_loss_scaling():
    # 100 A -> 300 W loss -> beta * 300 * dt added on top of relaxation
    t_next = battery_thermal_step(20.0, 20.0, 100.0, 0.5, PARAMS)
    assert t_next == pytest.approx(20.0 + 2e-5 * 300.0 * 0.5)


def test_battery_relaxation_value():
    assert battery_thermal_step(30.0, 20.0, 0.0, 0.5, PARAMS) == pytest.approx(
        29.991666666666667
    )


def test_motor_loss_from_shaft_power():
    # 200 Nm * 400 rad/s at eta 0.92 -> 6400 W
    t_next = motor_thermal_step(20.0, 20.0, 200.0, 400.0, 0.92, 0.5, PARAMS)
    assert t_next == pytest.approx(20.0 + 1e-5 * 6400.0 * 0.5)


def test_motor_zero_load_pure_relaxation():
    assert motor_thermal_step(20.0, 20.0, 0.0, 400.0, 0.92, 0.5, PARAMS) == 20.0
    assert motor_thermal_step(20.0, 20.0, 200.0, 0.0, 0.92, 0.5, PARAMS) == 20.0


def test_coolant_tracks_mean():
    assert coolant_step(30.0, 40.0, 60.0, 1.0, 100.0) == pytest.approx(30.2)


def test_coolant_fixed_point():
    assert coolant_step(50.0, 40.0, 60.0, 1.0, 100.0) == 50.0


def test_coolant_frozen_for_huge_tau():
    assert coolant_step(30.0, 40.0, 60.0, 1.0, 1e12) == pytest.approx(30.0, abs=1e-9)


def relaxation_error(dt_over_tau: float) -> float:
    """Worst deviation of the Euler trend from exp(-t/tau), as a fraction
    of the initial offset (closed-form oracle)."""
    tau = 600.0
    dt = tau * dt_over_tau
    t_amb = 20.0
    t = 80.0
    clock = 0.0
    worst = 0.0
    while clock < 3.0 * tau:
        t = battery_thermal_step(t, t_amb, 0.0, dt, PARAMS)
        clock += dt
        analytic = t_amb + (80.0 - t_amb) * math.exp(-clock / tau)
        worst = max(worst, abs(t - analytic) / (80.0 - t_amb))
    return worst


def test_discrete_matches_analytic_relaxation():
    """Euler error is ~(dt/tau)/(2e) of the span: 1% needs dt <= tau/20,
    and at the tau/10 stability margin it stays under 2%. Realistic
    effective steps (0.5 s against tau >= 300 s) are far tighter."""
    assert relaxation_error(1.0 / 20.0) < 0.01
    assert relaxation_error(1.0 / 10.0) < 0.02
    assert relaxation_error(0.5 / 300.0) < 1e-3


def test_monotone_convergence_no_overshoot():
    t = 80.0
    previous = t
    for _ in range(10000):
        t = battery_thermal_step(t, 20.0, 0.0, 0.5, PARAMS)
        assert t <= previous + 1e-12
        assert t >= 20.0 - 1e-9
        previous = t
    assert t == pytest.approx(20.0, abs=0.1)


def test_sanity_band_violation_aborts():
    with pytest.raises(NumericalError, match="sanity"):
        check_sanity(ThermalState(t_batt_c=500.0, t_motor_c=20.0, t_coolant_c=20.0))
    with pytest.raises(NumericalError, match="coolant"):
        check_sanity(ThermalState(t_batt_c=20.0, t_motor_c=20.0, t_coolant_c=-100.0))


def test_trend_step_coolant_sees_updated_temps():
    state = ThermalState(t_batt_c=40.0, t_motor_c=60.0, t_coolant_c=30.0)
    out = thermal_trend_step(state, 20.0, 0.0, 0.0, 0.0, 0.9, 1.0, PARAMS)
    t_batt_new = battery_thermal_step(40.0, 20.0, 0.0, 1.0, PARAMS)
    t_motor_new = motor_thermal_step(60.0, 20.0, 0.0, 0.0, 0.9, 1.0, PARAMS)
    assert out.t_coolant_c == pytest.approx(
        coolant_step(30.0, t_batt_new, t_motor_new, 1.0, PARAMS.tau_coolant_s)
    )
