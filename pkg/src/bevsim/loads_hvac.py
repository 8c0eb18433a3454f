"""Auxiliary electrical parasitics and the lumped-cabin HVAC model.

The cabin is one thermal mass. Passive heat combines envelope conduction
(speed-dependent conductance), solar gain, ventilation, and occupants. A
proportional controller with passive-load feedforward drives the cabin
toward the setpoint, clipped by the rated thermal power; electrical demand
follows from the heating or cooling coefficient of performance.
"""

from __future__ import annotations

from dataclasses import dataclass

AIR_CP_J_PER_KG_K = 1005.0


@dataclass(frozen=True)
class CabinHeatTerms:
    q_envelope_w: float
    q_solar_w: float
    q_vent_w: float
    q_occupants_w: float

    @property
    def q_passive_w(self) -> float:
        return self.q_envelope_w + self.q_solar_w + self.q_vent_w + self.q_occupants_w


@dataclass(frozen=True)
class CabinState:
    t_cabin_c: float
    q_hvac_w: float = 0.0
    p_hvac_w: float = 0.0


def aux_power(params) -> float:
    """Sum of the configured constant electrical parasitics."""
    return params.headlights_w + params.adas_w + params.infotainment_w + params.steering_w


def cabin_passive_heat(
    t_cabin_c: float,
    t_amb_c: float,
    v_mps: float,
    g_solar_w_per_m2: float,
    n_occupants: int,
    params,
) -> CabinHeatTerms:
    ua_total = params.ua_body_w_per_k + params.k_v_w_per_k_per_mps * v_mps
    dt = t_amb_c - t_cabin_c
    return CabinHeatTerms(
        q_envelope_w=ua_total * dt,
        q_solar_w=g_solar_w_per_m2 * params.glass_area_m2 * params.solar_transmittance,
        q_vent_w=params.air_massflow_kg_per_s * AIR_CP_J_PER_KG_K * dt,
        q_occupants_w=n_occupants * params.occupant_heat_w,
    )


def hvac_step(
    cabin: CabinState,
    q_passive_w: float,
    dt_s: float,
    params,
    enabled: bool = True,
) -> CabinState:
    """Advance the cabin one effective step and report HVAC electrical power."""
    if enabled:
        q_desired = (
            params.controller_gain_w_per_k * (params.setpoint_c - cabin.t_cabin_c)
            - q_passive_w
        )
        rated = params.rated_thermal_power_w
        q_hvac = min(max(q_desired, -rated), rated)
    else:
        q_hvac = 0.0
    q_net = q_passive_w + q_hvac
    t_cabin = cabin.t_cabin_c + q_net * dt_s / params.cabin_capacitance_j_per_k
    if q_hvac < 0.0:
        p_hvac = -q_hvac / params.cop_cooling
    elif q_hvac > 0.0:
        p_hvac = q_hvac / params.cop_heating
    else:
        p_hvac = 0.0
    return CabinState(t_cabin_c=t_cabin, q_hvac_w=q_hvac, p_hvac_w=p_hvac)


class LumpedCabinHvac:
    """Engine-facing adapter holding cabin state across steps."""

    def __init__(self, params, initial_cabin_temp_c: float, enabled: bool):
        self.params = params
        self.enabled = enabled
        self.state = CabinState(t_cabin_c=initial_cabin_temp_c)

    def step(
        self,
        t_amb_c: float,
        v_mps: float,
        g_solar_w_per_m2: float,
        n_occupants: int,
        dt_s: float,
    ) -> CabinState:
        terms = cabin_passive_heat(
            self.state.t_cabin_c, t_amb_c, v_mps, g_solar_w_per_m2, n_occupants, self.params
        )
        self.state = hvac_step(self.state, terms.q_passive_w, dt_s, self.params, self.enabled)
        return self.state

    def shutdown(self) -> None:
        pass
