"""Simulation engine: orchestration, master clock, multi-rate scheduling.

The engine owns no physics. It instantiates the configured subsystem
models, advances the master clock at a fixed dt, runs slow modules on
their rate divisors fed by mean-value accumulators, and collects one
timeseries row per master step. Module order per step is fixed:
longitudinal, driveline, regen, loads and HVAC, charging, battery,
thermal trends. Same-step consumers of battery outputs see the previous
effective step's values (one-step lag), which avoids algebraic loops.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from . import registry
from .battery import net_power
from .charging import ChargerController
from .config import (
    GRAVITY_MPS2,
    TestcaseConfig,
    VehicleConfig,
    cross_validate,
    effective_mass,
)
from .cycles import DriveCycle, resample
from .driveline import MotorEnvelope, clamp_torque, electrical_demand, reducer_map
from .errors import (
    InvariantError,
    NumericalError,
    PluginTimeoutError,
    ProtocolError,
    SchemaError,
)
from .loads_hvac import aux_power
from .longitudinal import road_load, wheel_demand
from .regen import RegenParams, regen_power
from .state import TIMESERIES_COLUMNS, SimState
from .thermal import ThermalState, thermal_trend_step


class Accumulator:
    """Running sums of signals sampled once per master step.

    flush() returns the arithmetic mean of everything pushed since the
    previous flush and resets the window. A window of identical samples
    flushes to exactly that sample, so constant signals pass through a
    slow module without rounding distortion.
    """

    __slots__ = ("sums", "count", "first", "uniform")

    def __init__(self, width: int):
        self.sums = [0.0] * width
        self.count = 0
        self.first = None
        self.uniform = True

    def push(self, values: tuple) -> None:
        sums = self.sums
        for i, v in enumerate(values):
            sums[i] += v
        if self.count == 0:
            self.first = values
        elif self.uniform and values != self.first:
            self.uniform = False
        self.count += 1

    def flush(self) -> list[float]:
        if self.uniform and self.first is not None:
            means = list(self.first)
        else:
            means = [s / self.count for s in self.sums]
        self.sums = [0.0] * len(self.sums)
        self.count = 0
        self.first = None
        self.uniform = True
        return means


@dataclass
class RunResult:
    columns: tuple[str, ...]
    rows: list[tuple]
    steps: int
    dt_s: float
    distance_m: float
    final_soc: float
    cycle_name: str
    cycle_duration_s: float
    cycle_distance_m: float
    m_eff_kg: float
    vehicle: VehicleConfig
    testcase: TestcaseConfig
    wall_time_s: float


class Engine:
    """One single-threaded simulation instance."""

    def __init__(self, vehicle: VehicleConfig, testcase: TestcaseConfig, cycle: DriveCycle):
        cross_validate(vehicle, testcase)
        self.vehicle = vehicle
        self.testcase = testcase
        dt = testcase.sim.dt_s
        self.dt = dt

        resampled = resample(cycle, dt)
        n_steps = len(resampled) - 1
        if abs(resampled.times_s[-1] - n_steps * dt) > 1e-6:
            raise SchemaError(
                "sim.dt_s",
                f"cycle duration {cycle.duration_s} s is not a multiple of dt {dt} s",
            )
        self.cycle = resampled
        self.speeds = list(resampled.speeds_mps)
        self.n_steps = n_steps

        self.m_eff = effective_mass(vehicle, testcase)
        self.drive_force_limit = (
            vehicle.drive_force_limit_n
            if vehicle.drive_force_limit_n is not None
            else self.m_eff * GRAVITY_MPS2
        )
        self.brake_force_limit = (
            vehicle.brake_force_limit_n
            if vehicle.brake_force_limit_n is not None
            else self.m_eff * GRAVITY_MPS2
        )

        self.envelope = MotorEnvelope.from_motor_params(vehicle.motor)
        self.motor_efficiency = registry.resolve("motor", vehicle.motor.model)(vehicle.motor)

        regen_eta = (
            vehicle.motor.regen_efficiency
            if vehicle.motor.regen_efficiency is not None
            else vehicle.motor.base_efficiency * vehicle.inverter_efficiency
        )
        self.regen_params = RegenParams(
            beta=vehicle.regen_blend_factor,
            eta_regen=regen_eta,
            p_regen_max_w=vehicle.max_regen_power_w,
            soc_upper_limit=vehicle.battery.soc_max,
        )

        self.divisors = dict(vehicle.rate_divisors)
        initial_soc = testcase.sim.initial_soc
        battery_cls = registry.resolve("battery", vehicle.battery.model)
        if vehicle.battery.model == "external":
            dt_eff = self.divisors["battery"] * dt
            self.battery = battery_cls(vehicle.battery, initial_soc, dt_eff)
        else:
            self.battery = battery_cls(vehicle.battery, initial_soc)

        temps = testcase.sim.initial_temps
        hvac_cls = registry.resolve("hvac", vehicle.hvac.model)
        if vehicle.hvac.model == "external":
            dt_eff = self.divisors["loads_hvac"] * dt
            self.hvac = hvac_cls(
                vehicle.hvac, temps.cabin_c, testcase.sim.hvac_enabled, dt_eff
            )
        else:
            self.hvac = hvac_cls(vehicle.hvac, temps.cabin_c, testcase.sim.hvac_enabled)

        self.charger = ChargerController(
            vehicle.charger,
            testcase.charging.enabled,
            testcase.charging.window_start_s,
            testcase.charging.window_end_s,
        )
        self.p_aux = aux_power(vehicle.aux)
        self.thermal_state = ThermalState(
            t_batt_c=temps.battery_c, t_motor_c=temps.motor_c, t_coolant_c=temps.coolant_c
        )

        self.state = SimState(
            initial_soc=initial_soc,
            v_batt_v=self.battery.state.v_batt_v,
            t_batt_c=temps.battery_c,
            t_motor_c=temps.motor_c,
            t_coolant_c=temps.coolant_c,
            t_cabin_c=temps.cabin_c,
            t_amb_c=testcase.ambient_temp_c,
        )

        # Mean-value accumulators feeding the slow modules.
        self.batt_acc = Accumulator(5)   # p_drive_dc, p_hvac, p_aux, p_regen, p_charge
        self.hvac_acc = Accumulator(2)   # t_amb, speed
        self.thermal_acc = Accumulator(4)  # |i_batt|, torque, omega, eta

        self.k = 0
        self.rows: list[tuple] = []

    # -- stepping ----------------------------------------------------------

    def step(self) -> tuple:
        """Advance one master step and return the appended timeseries row."""
        if self.k >= self.n_steps:
            raise NumericalError("simulation already past the cycle end")
        k = self.k
        try:
            row = self._advance(k)
        except (NumericalError, InvariantError, ProtocolError, PluginTimeoutError) as exc:
            raise type(exc)(f"step {k}: {exc}") from exc
        self.rows.append(row)
        self.k += 1
        return row

    def _advance(self, k: int) -> tuple:
        s = self.state
        dt = self.dt
        vehicle = self.vehicle
        testcase = self.testcase
        divisors = self.divisors
        t_begin = k * dt

        v0 = self.speeds[k]
        v1 = self.speeds[k + 1]
        accel = (v1 - v0) / dt
        s.distance_m += 0.5 * (v0 + v1) * dt
        s.speed_mps = v1
        s.accel_mps2 = accel
        s.time_s = t_begin + dt

        # Longitudinal: road load and wheel demand at the step target speed.
        if k % divisors["longitudinal"] == 0:
            breakdown = road_load(
                v1,
                accel,
                self.m_eff,
                testcase.grade_rad,
                testcase.air_density_kg_per_m3,
                vehicle.cd,
                vehicle.frontal_area_m2,
                vehicle.crr,
                testcase.wind_speed_mps,
            )
            demand = wheel_demand(
                breakdown, v1, self.drive_force_limit, self.brake_force_limit
            )
            s.wheel_force_n = breakdown.f_wheel_req_n
            s.wheel_power_w = demand.p_wheel_w
            s.throttle_frac = demand.throttle_frac
            s.brake_frac = demand.brake_frac
            s.brake_demand_flag = demand.brake_demand_flag

        # Driveline: reducer, torque envelope, efficiency, DC demand.
        if k % divisors["driveline"] == 0:
            omega_wheel, omega_motor = reducer_map(
                v1, vehicle.wheel_radius_m, vehicle.reducer_ratio_total
            )
            t_wheel = s.wheel_force_n * vehicle.wheel_radius_m
            if t_wheel >= 0.0:
                t_request = t_wheel / (
                    vehicle.reducer_ratio_total * vehicle.transmission_efficiency
                )
            else:
                t_request = (
                    t_wheel * vehicle.transmission_efficiency / vehicle.reducer_ratio_total
                )
            t_motor = clamp_torque(self.envelope, t_request, omega_motor)
            eta_motor = self.motor_efficiency(t_motor, omega_motor)
            _, p_drive_dc = electrical_demand(
                t_motor, omega_motor, eta_motor, vehicle.inverter_efficiency
            )
            s.motor_speed_radps = omega_motor
            s.motor_torque_nm = t_motor
            s.motor_eff = eta_motor
            s.p_drive_dc_w = p_drive_dc

        # Regen: converts braking opportunity using the held battery SoC.
        if k % divisors["regen"] == 0:
            s.p_regen_w, s.p_friction_w = regen_power(
                s.wheel_power_w, v1, s.brake_demand_flag, s.soc, self.regen_params
            )

        # Auxiliary loads and HVAC.
        self.hvac_acc.push((s.t_amb_c, v1))
        if k % divisors["loads_hvac"] == 0:
            t_amb_mean, v_mean = self.hvac_acc.flush()
            s.p_aux_w = self.p_aux
            cabin = self.hvac.step(
                t_amb_mean,
                v_mean,
                testcase.solar_irradiance_w_per_m2,
                testcase.occupant_count,
                divisors["loads_hvac"] * dt,
            )
            s.t_cabin_c = cabin.t_cabin_c
            s.p_hvac_w = cabin.p_hvac_w

        # Charging controller, driven by held battery outputs.
        if k % divisors["charging"] == 0:
            s.p_charge_req_w = self.charger.step(
                s.v_batt_v, s.i_batt_a, s.t_batt_c, t_begin
            )
            s.charger_state = self.charger.state.mode

        # Battery: net power from mean-accumulated demand components.
        self.batt_acc.push(
            (s.p_drive_dc_w, s.p_hvac_w, s.p_aux_w, s.p_regen_w, s.p_charge_req_w)
        )
        if k % divisors["battery"] == 0:
            p_drive, p_hvac, p_aux, p_regen, p_charge = self.batt_acc.flush()
            p_net = net_power(p_drive, p_hvac, p_aux, p_regen, p_charge)
            batt_state, shortfall = self.battery.step(
                p_net, divisors["battery"] * dt, s.t_batt_c
            )
            s.p_batt_net_w = p_net
            s.soc = batt_state.soc
            s.v_batt_v = batt_state.v_batt_v
            s.i_batt_a = batt_state.i_batt_a
            s.power_shortfall_w = shortfall

        # Thermal trends from mean-accumulated loads.
        self.thermal_acc.push(
            (abs(s.i_batt_a), s.motor_torque_nm, s.motor_speed_radps, s.motor_eff)
        )
        if k % divisors["thermal"] == 0:
            i_mean, torque_mean, omega_mean, eta_mean = self.thermal_acc.flush()
            self.thermal_state = thermal_trend_step(
                self.thermal_state,
                s.t_amb_c,
                i_mean,
                torque_mean,
                omega_mean,
                eta_mean,
                divisors["thermal"] * dt,
                vehicle.thermal,
            )
            s.t_batt_c = self.thermal_state.t_batt_c
            s.t_motor_c = self.thermal_state.t_motor_c
            s.t_coolant_c = self.thermal_state.t_coolant_c

        row = s.row()
        # charger_state is the single non-numeric column.
        check = 0.0
        for value in row:
            if type(value) is float:
                check += value
        if not math.isfinite(check):
            raise NumericalError("non-finite value in the state snapshot")
        return row

    def run(self, progress=None) -> RunResult:
        """Run to the cycle end and collect the flat timeseries."""
        started = time.perf_counter()
        next_milestone = 0.1
        try:
            while self.k < self.n_steps:
                self.step()
                if progress is not None and self.k >= next_milestone * self.n_steps:
                    while self.k >= next_milestone * self.n_steps:
                        next_milestone += 0.1
                    progress(self.k / self.n_steps)
        finally:
            self.close()
        wall = time.perf_counter() - started
        return RunResult(
            columns=TIMESERIES_COLUMNS,
            rows=self.rows,
            steps=self.n_steps,
            dt_s=self.dt,
            distance_m=self.state.distance_m,
            final_soc=self.state.soc,
            cycle_name=self.cycle.name,
            cycle_duration_s=self.cycle.duration_s,
            cycle_distance_m=self.cycle.distance_m,
            m_eff_kg=self.m_eff,
            vehicle=self.vehicle,
            testcase=self.testcase,
            wall_time_s=wall,
        )

    def close(self) -> None:
        self.battery.shutdown()
        self.hvac.shutdown()


def build_engine(vehicle: VehicleConfig, testcase: TestcaseConfig, cycle: DriveCycle) -> Engine:
    return Engine(vehicle, testcase, cycle)
