"""Shared simulation state: the signal bus every module reads and writes.

Values carry the last write of their owning module; slow modules hold
their outputs between effective steps. The column tuple fixes the
timeseries layout used by the CSV export and the energy budget.
"""

from __future__ import annotations

TIMESERIES_COLUMNS = (
    "time_s",
    "speed_mps",
    "accel_mps2",
    "distance_m",
    "wheel_force_n",
    "wheel_power_w",
    "motor_speed_radps",
    "motor_torque_nm",
    "motor_eff",
    "p_drive_dc_w",
    "p_regen_w",
    "p_friction_w",
    "p_aux_w",
    "p_hvac_w",
    "p_batt_net_w",
    "i_batt_a",
    "v_batt_v",
    "soc",
    "t_batt_c",
    "t_motor_c",
    "t_coolant_c",
    "t_cabin_c",
    "charger_state",
    "power_shortfall_w",
)


class SimState:
    """Mutable per-run signal bus; one instance per engine."""

    __slots__ = (
        "time_s",
        "speed_mps",
        "accel_mps2",
        "distance_m",
        "wheel_force_n",
        "wheel_power_w",
        "throttle_frac",
        "brake_frac",
        "brake_demand_flag",
        "motor_speed_radps",
        "motor_torque_nm",
        "motor_eff",
        "p_drive_dc_w",
        "p_regen_w",
        "p_friction_w",
        "p_aux_w",
        "p_hvac_w",
        "p_charge_req_w",
        "p_batt_net_w",
        "i_batt_a",
        "v_batt_v",
        "soc",
        "t_batt_c",
        "t_motor_c",
        "t_coolant_c",
        "t_cabin_c",
        "t_amb_c",
        "charger_state",
        "power_shortfall_w",
    )

    def __init__(self, *, initial_soc, v_batt_v, t_batt_c, t_motor_c, t_coolant_c,
                 t_cabin_c, t_amb_c):
        self.time_s = 0.0
        self.speed_mps = 0.0
        self.accel_mps2 = 0.0
        self.distance_m = 0.0
        self.wheel_force_n = 0.0
        self.wheel_power_w = 0.0
        self.throttle_frac = 0.0
        self.brake_frac = 0.0
        self.brake_demand_flag = False
        self.motor_speed_radps = 0.0
        self.motor_torque_nm = 0.0
        self.motor_eff = 0.0
        self.p_drive_dc_w = 0.0
        self.p_regen_w = 0.0
        self.p_friction_w = 0.0
        self.p_aux_w = 0.0
        self.p_hvac_w = 0.0
        self.p_charge_req_w = 0.0
        self.p_batt_net_w = 0.0
        self.i_batt_a = 0.0
        self.v_batt_v = v_batt_v
        self.soc = initial_soc
        self.t_batt_c = t_batt_c
        self.t_motor_c = t_motor_c
        self.t_coolant_c = t_coolant_c
        self.t_cabin_c = t_cabin_c
        self.t_amb_c = t_amb_c
        self.charger_state = "idle"
        self.power_shortfall_w = 0.0

    def row(self) -> tuple:
        """Snapshot in TIMESERIES_COLUMNS order."""
        return (
            self.time_s,
            self.speed_mps,
            self.accel_mps2,
            self.distance_m,
            self.wheel_force_n,
            self.wheel_power_w,
            self.motor_speed_radps,
            self.motor_torque_nm,
            self.motor_eff,
            self.p_drive_dc_w,
            self.p_regen_w,
            self.p_friction_w,
            self.p_aux_w,
            self.p_hvac_w,
            self.p_batt_net_w,
            self.i_batt_a,
            self.v_batt_v,
            self.soc,
            self.t_batt_c,
            self.t_motor_c,
            self.t_coolant_c,
            self.t_cabin_c,
            self.charger_state,
            self.power_shortfall_w,
        )
