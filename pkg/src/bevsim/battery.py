"""Battery models: net power resolution, Rint, and the 2RC equivalent circuit.

Sign convention: positive current discharges the pack; charging power
requests are negative. Current is derived from net power using the nominal
voltage (Rint) or the previous step's terminal voltage (ECM), a documented
first-order approximation that avoids an implicit algebraic loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericalError

SECONDS_PER_HOUR = 3600.0

# Default open-circuit-voltage shape, scaled by the nominal pack voltage.
# User-overridable through battery.ocv_table.
DEFAULT_OCV_SHAPE = (
    (0.0, 0.85),
    (0.1, 0.93),
    (0.5, 1.00),
    (0.9, 1.06),
    (1.0, 1.10),
)


@dataclass(frozen=True)
class BatteryState:
    soc: float
    v_batt_v: float
    i_batt_a: float = 0.0
    v_rc1_v: float = 0.0
    v_rc2_v: float = 0.0


@dataclass(frozen=True)
class OcvCurve:
    """Piecewise-linear open-circuit voltage over SoC."""

    points: tuple[tuple[float, float], ...]

    @classmethod
    def default_for(cls, v_nom_v: float) -> "OcvCurve":
        return cls(tuple((s, f * v_nom_v) for s, f in DEFAULT_OCV_SHAPE))

    def voltage(self, soc: float) -> float:
        points = self.points
        if soc <= points[0][0]:
            return points[0][1]
        if soc >= points[-1][0]:
            return points[-1][1]
        for (s0, v0), (s1, v1) in zip(points, points[1:]):
            if s0 <= soc <= s1:
                return v0 + (v1 - v0) * (soc - s0) / (s1 - s0)
        return points[-1][1]


def net_power(
    p_drive_dc_w: float,
    p_hvac_w: float,
    p_aux_w: float,
    p_regen_w: float,
    p_charge_req_w: float = 0.0,
) -> float:
    """Battery-side net power: loads minus recovery plus charging (<= 0)."""
    return p_drive_dc_w + p_hvac_w + p_aux_w - p_regen_w + p_charge_req_w


def _clamp_current(i_a: float, params) -> float:
    i_max_dis = params.c_rate_discharge_max * params.capacity_ah
    i_max_chg = params.c_rate_charge_max * params.capacity_ah
    return min(max(i_a, -i_max_chg), i_max_dis)


def _integrate_soc(soc: float, i_a: float, dt_s: float, params) -> float:
    soc_next = soc - i_a * dt_s / (params.capacity_ah * SECONDS_PER_HOUR)
    return min(max(soc_next, params.soc_min), params.soc_max)


def rint_step(
    state: BatteryState, p_net_w: float, dt_s: float, params
) -> tuple[BatteryState, float]:
    """One internal-resistance step; returns (new state, unmet power)."""
    i_ideal = p_net_w / params.v_nom_v
    i = _clamp_current(i_ideal, params)
    v = params.v_nom_v - i * params.r_int_ohm
    if v <= 0.0:
        raise NumericalError(f"battery terminal voltage {v:.3f} V is non-physical")
    soc = _integrate_soc(state.soc, i, dt_s, params)
    shortfall = p_net_w - i * params.v_nom_v
    return BatteryState(soc=soc, v_batt_v=v, i_batt_a=i), shortfall


def ecm2rc_step(
    state: BatteryState, p_net_w: float, dt_s: float, params, ocv: OcvCurve
) -> tuple[BatteryState, float]:
    """One 2RC equivalent-circuit step; returns (new state, unmet power).

    Each RC branch follows the exact discrete update for piecewise-constant
    current: v' = alpha*v + (1-alpha)*i*R with alpha = exp(-dt/(R*C)).
    """
    i_ideal = p_net_w / state.v_batt_v
    i = _clamp_current(i_ideal, params)
    alpha1 = math.exp(-dt_s / (params.r1_ohm * params.c1_f))
    alpha2 = math.exp(-dt_s / (params.r2_ohm * params.c2_f))
    v_rc1 = alpha1 * state.v_rc1_v + (1.0 - alpha1) * i * params.r1_ohm
    v_rc2 = alpha2 * state.v_rc2_v + (1.0 - alpha2) * i * params.r2_ohm
    soc = _integrate_soc(state.soc, i, dt_s, params)
    v_term = ocv.voltage(soc) - i * params.r0_ohm - v_rc1 - v_rc2
    if v_term <= 0.0:
        raise NumericalError(f"battery terminal voltage {v_term:.3f} V is non-physical")
    shortfall = p_net_w - i * state.v_batt_v
    new_state = BatteryState(
        soc=soc, v_batt_v=v_term, i_batt_a=i, v_rc1_v=v_rc1, v_rc2_v=v_rc2
    )
    return new_state, shortfall


class RintBattery:
    """Engine-facing adapter holding Rint state across steps."""

    def __init__(self, params, initial_soc: float):
        self.params = params
        self.state = BatteryState(soc=initial_soc, v_batt_v=params.v_nom_v)

    def step(
        self, p_net_w: float, dt_s: float, t_batt_c: float = 25.0
    ) -> tuple[BatteryState, float]:
        self.state, shortfall = rint_step(self.state, p_net_w, dt_s, self.params)
        return self.state, shortfall

    def shutdown(self) -> None:
        pass


class Ecm2RcBattery:
    """Engine-facing adapter holding 2RC state across steps."""

    def __init__(self, params, initial_soc: float):
        self.params = params
        if params.ocv_table is not None:
            self.ocv = OcvCurve(tuple(tuple(p) for p in params.ocv_table))
        else:
            self.ocv = OcvCurve.default_for(params.v_nom_v)
        self.state = BatteryState(soc=initial_soc, v_batt_v=self.ocv.voltage(initial_soc))

    def step(
        self, p_net_w: float, dt_s: float, t_batt_c: float = 25.0
    ) -> tuple[BatteryState, float]:
        self.state, shortfall = ecm2rc_step(
            self.state, p_net_w, dt_s, self.params, self.ocv
        )
        return self.state, shortfall

    def shutdown(self) -> None:
        pass
