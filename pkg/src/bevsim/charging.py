"""AC charging controller with a constant-power / constant-voltage taper.

While the plug-in window is active the controller requests a constant
battery-side power; once terminal voltage reaches the target it switches
to a resistance-estimated constant-voltage taper and finishes when the
tapered current falls below the termination threshold. Battery temperature
outside the optional guard band blocks charging without ending it.
"""

from __future__ import annotations

from dataclasses import dataclass

MODE_IDLE = "idle"
MODE_CC = "cc"
MODE_CV = "cv"
MODE_DONE = "done"
MODE_BLOCKED = "blocked"


@dataclass(frozen=True)
class ChargerState:
    mode: str = MODE_IDLE
    reached_cv: bool = False
    window_active: bool = False


def charge_step(
    state: ChargerState,
    v_batt_v: float,
    i_batt_a: float,
    t_batt_c: float,
    time_s: float,
    params,
    enabled: bool,
    window_start_s: float,
    window_end_s: float,
) -> tuple[float, ChargerState]:
    """(p_charge_req_w, new state); the request is <= 0 by sign convention."""
    in_window = enabled and window_start_s <= time_s < window_end_s
    if state.mode == MODE_DONE:
        # Done is absorbing for the rest of the run.
        return 0.0, ChargerState(MODE_DONE, True, in_window)
    if not in_window:
        return 0.0, ChargerState(MODE_IDLE, state.reached_cv, False)
    if (params.temp_min_c is not None and t_batt_c < params.temp_min_c) or (
        params.temp_max_c is not None and t_batt_c > params.temp_max_c
    ):
        return 0.0, ChargerState(MODE_BLOCKED, state.reached_cv, True)
    reached_cv = state.reached_cv or v_batt_v >= params.target_voltage_v
    if reached_cv:
        v_ocv_est = v_batt_v + i_batt_a * params.charge_resistance_ohm
        i_cv = max(
            (params.target_voltage_v - v_ocv_est) / params.charge_resistance_ohm, 0.0
        )
        if i_cv < params.termination_current_a:
            return 0.0, ChargerState(MODE_DONE, True, True)
        return -i_cv * params.target_voltage_v, ChargerState(MODE_CV, True, True)
    p_req = params.charge_efficiency * params.ac_power_limit_w
    if params.max_charge_current_a is not None:
        p_req = min(p_req, params.max_charge_current_a * v_batt_v)
    return -p_req, ChargerState(MODE_CC, False, True)


class ChargerController:
    """Engine-facing adapter holding charger state across steps."""

    def __init__(self, params, enabled: bool, window_start_s: float, window_end_s: float):
        self.params = params
        self.enabled = enabled and params is not None
        self.window_start_s = window_start_s
        self.window_end_s = window_end_s
        self.state = ChargerState()

    def step(self, v_batt_v: float, i_batt_a: float, t_batt_c: float, time_s: float) -> float:
        if not self.enabled:
            return 0.0
        p_req, self.state = charge_step(
            self.state,
            v_batt_v,
            i_batt_a,
            t_batt_c,
            time_s,
            self.params,
            self.enabled,
            self.window_start_s,
            self.window_end_s,
        )
        return p_req
