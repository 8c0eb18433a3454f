"""Shared fixtures: minimal configs, YAML writers, quick engine runs."""

from __future__ import annotations

import copy
from pathlib import Path

import pytest
import yaml

from bevsim.config import load_testcase, load_vehicle
from bevsim.cycles import DriveCycle
from bevsim.engine import build_engine
from bevsim.workflow import load_route_cycle

BASE_VEHICLE = {
    "name": "test_vehicle",
    "mass_kg": 1800.0,
    "cd": 0.28,
    "frontal_area_m2": 2.3,
    "crr": 0.007,
    "wheel_radius_m": 0.34,
    "reducer_ratio_primary": 3.0,
    "reducer_ratio_secondary": 3.5,
    "transmission_efficiency": 0.985,
    "inverter_efficiency": 0.985,
    "regen_blend_factor": 0.8,
    "max_regen_power_w": 60000.0,
    "motor": {
        "model": "analytical",
        "peak_torque_nm": 350.0,
        "peak_power_w": 150000.0,
        "max_speed_radps": 1500.0,
        "base_efficiency": 0.93,
        "min_efficiency": 0.80,
        "max_efficiency": 0.96,
    },
    "battery": {
        "model": "rint",
        "v_nom_v": 360.0,
        "capacity_ah": 150.0,
        "r_int_ohm": 0.05,
        "soc_min": 0.05,
        "soc_max": 0.98,
        "c_rate_charge_max": 2.0,
        "c_rate_discharge_max": 3.0,
    },
    "charger": {
        "ac_power_limit_w": 7400.0,
        "charge_efficiency": 0.92,
        "target_voltage_v": 396.0,
        "charge_resistance_ohm": 0.1,
        "termination_current_a": 4.0,
    },
    "aux": {
        "headlights_w": 120.0,
        "adas_w": 80.0,
        "infotainment_w": 60.0,
        "steering_w": 40.0,
    },
    "hvac": {
        "model": "lumped_cabin",
        "ua_body_w_per_k": 25.0,
        "k_v_w_per_k_per_mps": 0.4,
        "glass_area_m2": 1.8,
        "solar_transmittance": 0.6,
        "air_massflow_kg_per_s": 0.02,
        "occupant_heat_w": 80.0,
        "cabin_capacitance_j_per_k": 80000.0,
        "rated_thermal_power_w": 6000.0,
        "cop_cooling": 2.5,
        "cop_heating": 2.2,
        "setpoint_c": 22.0,
    },
    "thermal": {
        "tau_batt_s": 2000.0,
        "tau_motor_s": 900.0,
        "tau_coolant_s": 300.0,
    },
}

BASE_TESTCASE = {
    "name": "test_case",
    "route": {
        "mode": "parametric",
        "segments": [
            {"kind": "idle", "duration_s": 5.0},
            {"kind": "accel", "duration_s": 10.0, "target_speed_mps": 15.0},
            {"kind": "cruise", "duration_s": 20.0},
            {"kind": "decel", "duration_s": 15.0, "target_speed_mps": 0.0},
            {"kind": "idle", "duration_s": 10.0},
        ],
    },
    "ambient_temp_c": 23.0,
    "sim": {"dt_s": 0.1, "initial_soc": 0.9},
}


def vehicle_dict(mutate=None) -> dict:
    data = copy.deepcopy(BASE_VEHICLE)
    if mutate:
        mutate(data)
    return data


def tc_dict(mutate=None) -> dict:
    data = copy.deepcopy(BASE_TESTCASE)
    if mutate:
        mutate(data)
    return data


def write_yaml(path: Path, data: dict) -> Path:
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


@pytest.fixture
def make_vehicle(tmp_path):
    """Write a (possibly mutated) vehicle YAML and load it."""

    def factory(mutate=None, raw: dict | None = None):
        data = raw if raw is not None else vehicle_dict(mutate)
        return load_vehicle(write_yaml(tmp_path / "vehicle.yaml", data))

    return factory


@pytest.fixture
def make_testcase(tmp_path):
    def factory(mutate=None, raw: dict | None = None):
        data = raw if raw is not None else tc_dict(mutate)
        return load_testcase(write_yaml(tmp_path / "testcase.yaml", data))

    return factory


def constant_cycle(speed_mps: float, duration_s: float, name="constant") -> DriveCycle:
    return DriveCycle(
        name=name, times_s=(0.0, duration_s), speeds_mps=(speed_mps, speed_mps)
    )


def run_configs(vehicle, testcase, cycle=None):
    """Build and run an engine; returns the RunResult."""
    if cycle is None:
        cycle = load_route_cycle(testcase)
    return build_engine(vehicle, testcase, cycle).run()


def column_index(result):
    return {name: i for i, name in enumerate(result.columns)}
