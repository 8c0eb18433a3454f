"""First-order thermal trend models for battery, motor, and coolant.

Each temperature relaxes toward its attractor (ambient, or the mean of
battery and motor for the coolant) with an added loss-driven term. The
loss coefficients couple electrical or mechanical losses into the trend;
they are calibration inputs, not identified heat-generation laws.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NumericalError

# Battery loss trend scaling, W per A of pack current magnitude.
BATTERY_LOSS_W_PER_A = 3.0

TEMP_SANITY_MIN_C = -60.0
TEMP_SANITY_MAX_C = 200.0


@dataclass(frozen=True)
class ThermalState:
    t_batt_c: float
    t_motor_c: float
    t_coolant_c: float


def battery_thermal_step(
    t_batt_c: float, t_amb_c: float, i_batt_mean_a: float, dt_s: float, params
) -> float:
    q_loss = BATTERY_LOSS_W_PER_A * abs(i_batt_mean_a)
    return (
        t_batt_c
        + (t_amb_c - t_batt_c) / params.tau_batt_s * dt_s
        + params.beta_batt_k_per_j * q_loss * dt_s
    )


def motor_thermal_step(
    t_motor_c: float,
    t_amb_c: float,
    torque_mean_nm: float,
    omega_mean_radps: float,
    eta_mean: float,
    dt_s: float,
    params,
) -> float:
    q_loss = abs(torque_mean_nm * omega_mean_radps) * (1.0 - eta_mean)
    return (
        t_motor_c
        + (t_amb_c - t_motor_c) / params.tau_motor_s * dt_s
        + params.beta_motor_k_per_j * q_loss * dt_s
    )


def coolant_step(
    t_coolant_c: float, t_batt_c: float, t_motor_c: float, dt_s: float, tau_s: float
) -> float:
    t_target = 0.5 * (t_batt_c + t_motor_c)
    return t_coolant_c + (t_target - t_coolant_c) / tau_s * dt_s


def check_sanity(state: ThermalState) -> ThermalState:
    for name, value in (
        ("battery", state.t_batt_c),
        ("motor", state.t_motor_c),
        ("coolant", state.t_coolant_c),
    ):
        if not TEMP_SANITY_MIN_C <= value <= TEMP_SANITY_MAX_C:
            raise NumericalError(
                f"{name} temperature {value:.1f} C outside the "
                f"[{TEMP_SANITY_MIN_C}, {TEMP_SANITY_MAX_C}] C sanity band"
            )
    return state


def thermal_trend_step(
    state: ThermalState,
    t_amb_c: float,
    i_batt_mean_a: float,
    torque_mean_nm: float,
    omega_mean_radps: float,
    eta_mean: float,
    dt_s: float,
    params,
) -> ThermalState:
    """Advance all three trends; coolant sees the updated temperatures."""
    t_batt = battery_thermal_step(state.t_batt_c, t_amb_c, i_batt_mean_a, dt_s, params)
    t_motor = motor_thermal_step(
        state.t_motor_c, t_amb_c, torque_mean_nm, omega_mean_radps, eta_mean, dt_s, params
    )
    t_coolant = coolant_step(state.t_coolant_c, t_batt, t_motor, dt_s, params.tau_coolant_s)
    return check_sanity(ThermalState(t_batt_c=t_batt, t_motor_c=t_motor, t_coolant_c=t_coolant))
