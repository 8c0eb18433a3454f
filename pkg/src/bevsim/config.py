"""Vehicle and testcase configuration: loading, validation, unit normalization.

User-facing YAML may use conventional units through suffix-bearing field
names (``peak_power_kw``, ``max_speed_rpm``, ``capacity_kwh``,
``wind_speed_kmh``). This module converts them at the boundary; everything
downstream sees SI, degrees Celsius, and SoC as a fraction. Unknown keys
are a hard error so that typos cannot silently change a study.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from . import registry, units
from .errors import ParseError, SchemaError

GRAVITY_MPS2 = 9.81

DEFAULT_DT_S = 0.1
DEFAULT_SOC_MIN = 0.05
DEFAULT_SOC_MAX = 0.98
DEFAULT_INITIAL_SOC = 0.9
DEFAULT_HVAC_GAIN_W_PER_K = 400.0
DEFAULT_BETA_BATT_K_PER_J = 2e-5
DEFAULT_BETA_MOTOR_K_PER_J = 1e-5

# Module names the engine schedules, with their default rate divisors.
# Fast domains run every master step; battery electrical, charging, HVAC,
# and thermal trends run on a slower clock.
DEFAULT_RATE_DIVISORS = {
    "longitudinal": 1,
    "driveline": 1,
    "regen": 1,
    "loads_hvac": 5,
    "charging": 5,
    "battery": 5,
    "thermal": 5,
}

SEGMENT_KINDS = ("accel", "cruise", "decel", "idle")

_REQUIRED = object()


class _Fields:
    """Reader over one YAML mapping that tracks consumed keys.

    Every accessor raises SchemaError with the full dotted field path, and
    finish() rejects any key that was never consumed.
    """

    def __init__(self, data: dict, path: str):
        if not isinstance(data, dict):
            raise SchemaError(path, "expected a mapping")
        self.data = data
        self.path = path
        self.used: set[str] = set()

    def _child(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def _fetch(self, key: str):
        self.used.add(key)
        return self.data.get(key)

    def number(
        self,
        key: str,
        *,
        default=_REQUIRED,
        minimum: float | None = None,
        maximum: float | None = None,
        exclusive_min: float | None = None,
        exclusive_max: float | None = None,
        variants: dict[str, Any] | None = None,
    ) -> float:
        """Read a float; ``variants`` maps alternative-unit keys to a factor
        or converter callable applied to the raw value."""
        raw = self._fetch(key)
        chosen = key
        if variants:
            for alt, conv in variants.items():
                alt_raw = self._fetch(alt)
                if alt_raw is None:
                    continue
                if raw is not None:
                    raise SchemaError(
                        self._child(alt), f"specify only one of {key!r} / {alt!r}"
                    )
                raw = conv(alt_raw) if callable(conv) else alt_raw * conv
                chosen = alt
        if raw is None:
            if default is _REQUIRED:
                raise SchemaError(self._child(key), "required field missing")
            return default
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise SchemaError(self._child(chosen), "expected a number")
        value = float(raw)
        if not math.isfinite(value):
            raise SchemaError(self._child(chosen), "must be finite")
        at = self._child(chosen)
        if minimum is not None and value < minimum:
            raise SchemaError(at, f"must be >= {minimum}, got {value}")
        if maximum is not None and value > maximum:
            raise SchemaError(at, f"must be <= {maximum}, got {value}")
        if exclusive_min is not None and value <= exclusive_min:
            raise SchemaError(at, f"must be > {exclusive_min}, got {value}")
        if exclusive_max is not None and value >= exclusive_max:
            raise SchemaError(at, f"must be < {exclusive_max}, got {value}")
        return value

    def integer(self, key: str, *, default=_REQUIRED, minimum: int | None = None) -> int:
        raw = self._fetch(key)
        if raw is None:
            if default is _REQUIRED:
                raise SchemaError(self._child(key), "required field missing")
            return default
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise SchemaError(self._child(key), "expected an integer")
        if minimum is not None and raw < minimum:
            raise SchemaError(self._child(key), f"must be >= {minimum}, got {raw}")
        return raw

    def boolean(self, key: str, *, default=_REQUIRED) -> bool:
        raw = self._fetch(key)
        if raw is None:
            if default is _REQUIRED:
                raise SchemaError(self._child(key), "required field missing")
            return default
        if not isinstance(raw, bool):
            raise SchemaError(self._child(key), "expected true/false")
        return raw

    def string(
        self, key: str, *, default=_REQUIRED, choices: tuple[str, ...] | None = None
    ) -> Optional[str]:
        raw = self._fetch(key)
        if raw is None:
            if default is _REQUIRED:
                raise SchemaError(self._child(key), "required field missing")
            return default
        if not isinstance(raw, str):
            raise SchemaError(self._child(key), "expected a string")
        if choices is not None and raw not in choices:
            raise SchemaError(
                self._child(key), f"must be one of {', '.join(choices)}; got {raw!r}"
            )
        return raw

    def section(self, key: str, *, required: bool = True) -> Optional["_Fields"]:
        raw = self._fetch(key)
        if raw is None:
            if required:
                raise SchemaError(self._child(key), "required section missing")
            return None
        return _Fields(raw, self._child(key))

    def raw(self, key: str):
        return self._fetch(key)

    def finish(self) -> None:
        unknown = sorted(set(self.data) - self.used)
        if unknown:
            raise SchemaError(self._child(unknown[0]), "unknown field")


# ---------------------------------------------------------------------------
# Vehicle configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MotorParams:
    model: str
    peak_torque_nm: float
    peak_power_w: float
    max_speed_radps: float
    base_speed_radps: float
    base_efficiency: float
    min_efficiency: float
    max_efficiency: float
    regen_efficiency: Optional[float] = None
    max_regen_torque_nm: Optional[float] = None
    max_regen_power_w: Optional[float] = None
    map_path: Optional[str] = None


@dataclass(frozen=True)
class BatteryParams:
    model: str
    v_nom_v: float
    capacity_ah: float
    soc_min: float
    soc_max: float
    c_rate_charge_max: float
    c_rate_discharge_max: float
    r_int_ohm: Optional[float] = None
    r0_ohm: Optional[float] = None
    r1_ohm: Optional[float] = None
    c1_f: Optional[float] = None
    r2_ohm: Optional[float] = None
    c2_f: Optional[float] = None
    ocv_table: Optional[tuple[tuple[float, float], ...]] = None
    external_module_path: Optional[str] = None


@dataclass(frozen=True)
class ChargerParams:
    ac_power_limit_w: float
    charge_efficiency: float
    target_voltage_v: float
    charge_resistance_ohm: float
    termination_current_a: float
    max_charge_current_a: Optional[float] = None
    temp_min_c: Optional[float] = None
    temp_max_c: Optional[float] = None


@dataclass(frozen=True)
class AuxParams:
    headlights_w: float = 0.0
    adas_w: float = 0.0
    infotainment_w: float = 0.0
    steering_w: float = 0.0


@dataclass(frozen=True)
class HvacParams:
    model: str
    ua_body_w_per_k: Optional[float] = None
    k_v_w_per_k_per_mps: Optional[float] = None
    glass_area_m2: Optional[float] = None
    solar_transmittance: Optional[float] = None
    air_massflow_kg_per_s: Optional[float] = None
    occupant_heat_w: Optional[float] = None
    cabin_capacitance_j_per_k: Optional[float] = None
    rated_thermal_power_w: Optional[float] = None
    cop_cooling: Optional[float] = None
    cop_heating: Optional[float] = None
    setpoint_c: Optional[float] = None
    controller_gain_w_per_k: float = DEFAULT_HVAC_GAIN_W_PER_K
    external_module_path: Optional[str] = None


@dataclass(frozen=True)
class ThermalParams:
    tau_batt_s: float
    tau_motor_s: float
    tau_coolant_s: float
    beta_batt_k_per_j: float = DEFAULT_BETA_BATT_K_PER_J
    beta_motor_k_per_j: float = DEFAULT_BETA_MOTOR_K_PER_J


@dataclass(frozen=True)
class VehicleConfig:
    mass_kg: float
    cd: float
    frontal_area_m2: float
    crr: float
    wheel_radius_m: float
    reducer_ratio_primary: float
    reducer_ratio_secondary: float
    transmission_efficiency: float
    inverter_efficiency: float
    regen_blend_factor: float
    max_regen_power_w: float
    motor: MotorParams
    battery: BatteryParams
    aux: AuxParams
    hvac: HvacParams
    thermal: ThermalParams
    rate_divisors: tuple[tuple[str, int], ...]
    charger: Optional[ChargerParams] = None
    drive_force_limit_n: Optional[float] = None
    brake_force_limit_n: Optional[float] = None
    name: Optional[str] = None

    @property
    def reducer_ratio_total(self) -> float:
        return self.reducer_ratio_primary * self.reducer_ratio_secondary

    def divisor(self, module: str) -> int:
        return dict(self.rate_divisors)[module]


# ---------------------------------------------------------------------------
# Testcase configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegmentSpec:
    kind: str
    duration_s: float
    target_speed_mps: Optional[float] = None


@dataclass(frozen=True)
class RouteConfig:
    mode: str
    cycle_path: Optional[str] = None
    segments: Optional[tuple[SegmentSpec, ...]] = None


@dataclass(frozen=True)
class PayloadConfig:
    passenger_count: int = 1
    passenger_mass_kg: float = 75.0
    cargo_mass_kg: float = 0.0


@dataclass(frozen=True)
class ChargingConfig:
    enabled: bool = False
    window_start_s: float = 0.0
    window_end_s: float = 0.0


@dataclass(frozen=True)
class InitialTemps:
    battery_c: float
    motor_c: float
    coolant_c: float
    cabin_c: float


@dataclass(frozen=True)
class SimSettings:
    dt_s: float
    initial_soc: float
    initial_temps: InitialTemps
    hvac_enabled: bool


@dataclass(frozen=True)
class TestcaseConfig:
    route: RouteConfig
    ambient_temp_c: float
    solar_irradiance_w_per_m2: float
    air_density_kg_per_m3: float
    grade_rad: float
    wind_speed_mps: float
    payload: PayloadConfig
    charging: ChargingConfig
    sim: SimSettings
    name: Optional[str] = None

    @property
    def occupant_count(self) -> int:
        # Occupants heating the cabin are the configured passengers.
        return self.payload.passenger_count


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def _read_yaml_mapping(path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise ParseError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle)
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be a mapping")
    return data


def _abspath(base_dir: Path, value: Optional[str]) -> Optional[str]:
    if value is None:
        return None
    if os.path.isabs(value):
        return value
    return str((base_dir / value).resolve())


def _parse_motor(sec: _Fields, base_dir: Path) -> MotorParams:
    model = sec.string("model", default="analytical")
    registry.ensure_known("motor", model)
    peak_torque = sec.number("peak_torque_nm", exclusive_min=0.0)
    peak_power = sec.number(
        "peak_power_w", exclusive_min=0.0, variants={"peak_power_kw": units.W_PER_KW}
    )
    max_speed = sec.number(
        "max_speed_radps",
        exclusive_min=0.0,
        variants={"max_speed_rpm": units.RADPS_PER_RPM},
    )
    base_speed = sec.number(
        "base_speed_radps",
        default=None,
        exclusive_min=0.0,
        variants={"base_speed_rpm": units.RADPS_PER_RPM},
    )
    if base_speed is None:
        # Corner speed of the constant-torque region, capped at max speed.
        base_speed = min(peak_power / peak_torque, max_speed)
    elif base_speed > max_speed:
        raise SchemaError(
            f"{sec.path}.base_speed_radps", "must not exceed max_speed_radps"
        )
    base_eff = sec.number("base_efficiency", exclusive_min=0.0, maximum=1.0)
    min_eff = sec.number("min_efficiency", exclusive_min=0.0, maximum=1.0)
    max_eff = sec.number("max_efficiency", exclusive_min=0.0, maximum=1.0)
    if not (min_eff <= base_eff <= max_eff):
        raise SchemaError(
            f"{sec.path}.base_efficiency",
            "requires min_efficiency <= base_efficiency <= max_efficiency",
        )
    regen_eff = sec.number("regen_efficiency", default=None, exclusive_min=0.0, maximum=1.0)
    regen_torque = sec.number("max_regen_torque_nm", default=None, exclusive_min=0.0)
    regen_power = sec.number(
        "max_regen_power_w",
        default=None,
        exclusive_min=0.0,
        variants={"max_regen_power_kw": units.W_PER_KW},
    )
    map_path = _abspath(base_dir, sec.string("map_path", default=None))
    if model == "efficiency_map" and map_path is None:
        raise SchemaError(f"{sec.path}.map_path", "required for the efficiency_map model")
    sec.finish()
    return MotorParams(
        model=model,
        peak_torque_nm=peak_torque,
        peak_power_w=peak_power,
        max_speed_radps=max_speed,
        base_speed_radps=base_speed,
        base_efficiency=base_eff,
        min_efficiency=min_eff,
        max_efficiency=max_eff,
        regen_efficiency=regen_eff,
        max_regen_torque_nm=regen_torque,
        max_regen_power_w=regen_power,
        map_path=map_path,
    )


def _parse_ocv_table(sec: _Fields) -> Optional[tuple[tuple[float, float], ...]]:
    raw = sec.raw("ocv_table")
    if raw is None:
        return None
    at = f"{sec.path}.ocv_table"
    if not isinstance(raw, list) or len(raw) < 2:
        raise SchemaError(at, "expected a list of at least two [soc, volts] pairs")
    points = []
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in entry)
        ):
            raise SchemaError(f"{at}[{i}]", "expected a [soc, volts] pair")
        soc, volts = float(entry[0]), float(entry[1])
        if not 0.0 <= soc <= 1.0:
            raise SchemaError(f"{at}[{i}]", "soc knot must lie in [0, 1]")
        if volts <= 0.0:
            raise SchemaError(f"{at}[{i}]", "voltage must be positive")
        points.append((soc, volts))
    for (s0, v0), (s1, v1) in zip(points, points[1:]):
        if s1 <= s0:
            raise SchemaError(at, "soc knots must be strictly increasing")
        if v1 < v0:
            raise SchemaError(at, "voltage must be non-decreasing in soc")
    return tuple(points)


def _parse_battery(sec: _Fields, base_dir: Path) -> BatteryParams:
    model = sec.string("model", default="rint")
    registry.ensure_known("battery", model)
    v_nom = sec.number("v_nom_v", exclusive_min=0.0)
    capacity = sec.number(
        "capacity_ah",
        exclusive_min=0.0,
        variants={"capacity_kwh": lambda kwh: units.kwh_to_ah(kwh, v_nom)},
    )
    soc_min = sec.number("soc_min", default=DEFAULT_SOC_MIN, exclusive_min=0.0, maximum=1.0)
    soc_max = sec.number("soc_max", default=DEFAULT_SOC_MAX, exclusive_min=0.0, maximum=1.0)
    if not soc_min < soc_max:
        raise SchemaError(f"{sec.path}.soc_min", "requires soc_min < soc_max")
    c_chg = sec.number("c_rate_charge_max", exclusive_min=0.0)
    c_dis = sec.number("c_rate_discharge_max", exclusive_min=0.0)
    r_int = sec.number("r_int_ohm", default=None, minimum=0.0)
    r0 = sec.number("r0_ohm", default=None, minimum=0.0)
    r1 = sec.number("r1_ohm", default=None, exclusive_min=0.0)
    c1 = sec.number("c1_f", default=None, exclusive_min=0.0)
    r2 = sec.number("r2_ohm", default=None, exclusive_min=0.0)
    c2 = sec.number("c2_f", default=None, exclusive_min=0.0)
    ocv_table = _parse_ocv_table(sec)
    external = _abspath(base_dir, sec.string("external_module_path", default=None))
    if model == "rint" and r_int is None:
        raise SchemaError(f"{sec.path}.r_int_ohm", "required for the rint model")
    if model == "ecm_2rc":
        for name, value in (
            ("r0_ohm", r0), ("r1_ohm", r1), ("c1_f", c1), ("r2_ohm", r2), ("c2_f", c2)
        ):
            if value is None:
                raise SchemaError(f"{sec.path}.{name}", "required for the ecm_2rc model")
    if model == "external" and external is None:
        raise SchemaError(
            f"{sec.path}.external_module_path", "required for the external model"
        )
    sec.finish()
    return BatteryParams(
        model=model,
        v_nom_v=v_nom,
        capacity_ah=capacity,
        soc_min=soc_min,
        soc_max=soc_max,
        c_rate_charge_max=c_chg,
        c_rate_discharge_max=c_dis,
        r_int_ohm=r_int,
        r0_ohm=r0,
        r1_ohm=r1,
        c1_f=c1,
        r2_ohm=r2,
        c2_f=c2,
        ocv_table=ocv_table,
        external_module_path=external,
    )


def _parse_charger(sec: _Fields) -> ChargerParams:
    power = sec.number(
        "ac_power_limit_w",
        exclusive_min=0.0,
        variants={"ac_power_limit_kw": units.W_PER_KW},
    )
    eff = sec.number("charge_efficiency", exclusive_min=0.0, maximum=1.0)
    target_v = sec.number("target_voltage_v", exclusive_min=0.0)
    r_chg = sec.number("charge_resistance_ohm", exclusive_min=0.0)
    i_term = sec.number("termination_current_a", exclusive_min=0.0)
    i_max = sec.number("max_charge_current_a", default=None, exclusive_min=0.0)
    t_min = sec.number("temp_min_c", default=None)
    t_max = sec.number("temp_max_c", default=None)
    if t_min is not None and t_max is not None and t_min >= t_max:
        raise SchemaError(f"{sec.path}.temp_min_c", "requires temp_min_c < temp_max_c")
    sec.finish()
    return ChargerParams(
        ac_power_limit_w=power,
        charge_efficiency=eff,
        target_voltage_v=target_v,
        charge_resistance_ohm=r_chg,
        termination_current_a=i_term,
        max_charge_current_a=i_max,
        temp_min_c=t_min,
        temp_max_c=t_max,
    )


def _parse_aux(sec: Optional[_Fields]) -> AuxParams:
    if sec is None:
        return AuxParams()
    values = {
        key: sec.number(key, default=0.0, minimum=0.0)
        for key in ("headlights_w", "adas_w", "infotainment_w", "steering_w")
    }
    sec.finish()
    return AuxParams(**values)


def _parse_hvac(sec: _Fields, base_dir: Path) -> HvacParams:
    model = sec.string("model", default="lumped_cabin")
    registry.ensure_known("hvac", model)
    required = model == "lumped_cabin"
    default = _REQUIRED if required else None

    def num(key, **kwargs):
        return sec.number(key, default=default, **kwargs)

    ua = num("ua_body_w_per_k", exclusive_min=0.0)
    k_v = num("k_v_w_per_k_per_mps", minimum=0.0)
    glass = num("glass_area_m2", exclusive_min=0.0)
    tau_solar = num("solar_transmittance", minimum=0.0, maximum=1.0)
    massflow = num("air_massflow_kg_per_s", minimum=0.0)
    occ_heat = num("occupant_heat_w", minimum=0.0)
    capacitance = num("cabin_capacitance_j_per_k", exclusive_min=0.0)
    rated = sec.number(
        "rated_thermal_power_w",
        default=default,
        exclusive_min=0.0,
        variants={"rated_thermal_power_kw": units.W_PER_KW},
    )
    cop_cool = num("cop_cooling", exclusive_min=0.0)
    cop_heat = num("cop_heating", exclusive_min=0.0)
    setpoint = num("setpoint_c")
    gain = sec.number(
        "controller_gain_w_per_k", default=DEFAULT_HVAC_GAIN_W_PER_K, exclusive_min=0.0
    )
    external = _abspath(base_dir, sec.string("external_module_path", default=None))
    if model == "external" and external is None:
        raise SchemaError(
            f"{sec.path}.external_module_path", "required for the external model"
        )
    sec.finish()
    return HvacParams(
        model=model,
        ua_body_w_per_k=ua,
        k_v_w_per_k_per_mps=k_v,
        glass_area_m2=glass,
        solar_transmittance=tau_solar,
        air_massflow_kg_per_s=massflow,
        occupant_heat_w=occ_heat,
        cabin_capacitance_j_per_k=capacitance,
        rated_thermal_power_w=rated,
        cop_cooling=cop_cool,
        cop_heating=cop_heat,
        setpoint_c=setpoint,
        controller_gain_w_per_k=gain,
        external_module_path=external,
    )


def _parse_thermal(sec: _Fields) -> ThermalParams:
    tau_batt = sec.number("tau_batt_s", exclusive_min=0.0)
    tau_motor = sec.number("tau_motor_s", exclusive_min=0.0)
    tau_coolant = sec.number("tau_coolant_s", exclusive_min=0.0)
    beta_batt = sec.number(
        "beta_batt_k_per_j", default=DEFAULT_BETA_BATT_K_PER_J, minimum=0.0
    )
    beta_motor = sec.number(
        "beta_motor_k_per_j", default=DEFAULT_BETA_MOTOR_K_PER_J, minimum=0.0
    )
    sec.finish()
    return ThermalParams(
        tau_batt_s=tau_batt,
        tau_motor_s=tau_motor,
        tau_coolant_s=tau_coolant,
        beta_batt_k_per_j=beta_batt,
        beta_motor_k_per_j=beta_motor,
    )


def _parse_rate_divisors(sec: Optional[_Fields]) -> tuple[tuple[str, int], ...]:
    divisors = dict(DEFAULT_RATE_DIVISORS)
    if sec is not None:
        for key in list(sec.data):
            if key not in divisors:
                raise SchemaError(
                    f"{sec.path}.{key}",
                    f"unknown module; known: {', '.join(sorted(divisors))}",
                )
            divisors[key] = sec.integer(key, minimum=1)
        sec.finish()
    return tuple(sorted(divisors.items()))


def load_vehicle(path) -> VehicleConfig:
    """Load, validate, and unit-normalize a vehicle YAML file."""
    path = Path(path)
    data = _read_yaml_mapping(path)
    base_dir = path.resolve().parent
    root = _Fields(data, "")

    name = root.string("name", default=None)
    mass = root.number("mass_kg", exclusive_min=0.0)
    cd = root.number("cd", exclusive_min=0.0)
    area = root.number("frontal_area_m2", exclusive_min=0.0)
    crr = root.number("crr", exclusive_min=0.0)
    wheel_radius = root.number("wheel_radius_m", exclusive_min=0.0)
    ratio_primary = root.number("reducer_ratio_primary", exclusive_min=0.0)
    ratio_secondary = root.number("reducer_ratio_secondary", exclusive_min=0.0)
    trans_eff = root.number("transmission_efficiency", exclusive_min=0.0, maximum=1.0)
    inv_eff = root.number("inverter_efficiency", exclusive_min=0.0, maximum=1.0)
    blend = root.number("regen_blend_factor", minimum=0.0, maximum=1.0)
    regen_power = root.number(
        "max_regen_power_w",
        exclusive_min=0.0,
        variants={"max_regen_power_kw": units.W_PER_KW},
    )
    drive_limit = root.number("drive_force_limit_n", default=None, exclusive_min=0.0)
    brake_limit = root.number("brake_force_limit_n", default=None, exclusive_min=0.0)

    motor = _parse_motor(root.section("motor"), base_dir)
    battery = _parse_battery(root.section("battery"), base_dir)
    charger_sec = root.section("charger", required=False)
    charger = _parse_charger(charger_sec) if charger_sec is not None else None
    aux = _parse_aux(root.section("aux", required=False))
    hvac = _parse_hvac(root.section("hvac"), base_dir)
    thermal = _parse_thermal(root.section("thermal"))
    divisors = _parse_rate_divisors(root.section("rate_divisors", required=False))
    root.finish()

    return VehicleConfig(
        name=name,
        mass_kg=mass,
        cd=cd,
        frontal_area_m2=area,
        crr=crr,
        wheel_radius_m=wheel_radius,
        reducer_ratio_primary=ratio_primary,
        reducer_ratio_secondary=ratio_secondary,
        transmission_efficiency=trans_eff,
        inverter_efficiency=inv_eff,
        regen_blend_factor=blend,
        max_regen_power_w=regen_power,
        drive_force_limit_n=drive_limit,
        brake_force_limit_n=brake_limit,
        motor=motor,
        battery=battery,
        charger=charger,
        aux=aux,
        hvac=hvac,
        thermal=thermal,
        rate_divisors=divisors,
    )


def _parse_segments(raw, path: str) -> tuple[SegmentSpec, ...]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(path, "expected a non-empty list of segments")
    segments = []
    for i, entry in enumerate(raw):
        sec = _Fields(entry, f"{path}[{i}]")
        kind = sec.string("kind", choices=SEGMENT_KINDS)
        duration = sec.number("duration_s", exclusive_min=0.0)
        target = sec.number(
            "target_speed_mps",
            default=None,
            minimum=0.0,
            variants={"target_speed_kmh": units.MPS_PER_KMH},
        )
        if kind in ("accel", "decel") and target is None:
            raise SchemaError(f"{path}[{i}].target_speed_mps", f"required for {kind}")
        if kind in ("cruise", "idle") and target is not None:
            raise SchemaError(
                f"{path}[{i}].target_speed_mps", f"not allowed for {kind}"
            )
        sec.finish()
        segments.append(SegmentSpec(kind=kind, duration_s=duration, target_speed_mps=target))
    return tuple(segments)


def _parse_route(sec: _Fields, base_dir: Path) -> RouteConfig:
    mode = sec.string("mode", choices=("cycle_csv", "parametric"))
    cycle_path = sec.string("cycle_path", default=None)
    segments_raw = sec.raw("segments")
    if mode == "cycle_csv":
        if cycle_path is None:
            raise SchemaError(f"{sec.path}.cycle_path", "required for the cycle_csv mode")
        if segments_raw is not None:
            raise SchemaError(f"{sec.path}.segments", "not allowed for the cycle_csv mode")
        sec.finish()
        return RouteConfig(mode=mode, cycle_path=_abspath(base_dir, cycle_path))
    if cycle_path is not None:
        raise SchemaError(f"{sec.path}.cycle_path", "not allowed for the parametric mode")
    if segments_raw is None:
        raise SchemaError(f"{sec.path}.segments", "required for the parametric mode")
    segments = _parse_segments(segments_raw, f"{sec.path}.segments")
    sec.finish()
    return RouteConfig(mode=mode, segments=segments)


def _parse_payload(sec: Optional[_Fields]) -> PayloadConfig:
    if sec is None:
        return PayloadConfig()
    count = sec.integer("passenger_count", default=1, minimum=0)
    mass = sec.number("passenger_mass_kg", default=75.0, minimum=0.0)
    cargo = sec.number("cargo_mass_kg", default=0.0, minimum=0.0)
    sec.finish()
    return PayloadConfig(passenger_count=count, passenger_mass_kg=mass, cargo_mass_kg=cargo)


def _parse_charging(sec: Optional[_Fields]) -> ChargingConfig:
    if sec is None:
        return ChargingConfig()
    enabled = sec.boolean("enabled", default=False)
    start = sec.number("window_start_s", default=0.0, minimum=0.0)
    end = sec.number("window_end_s", default=0.0, minimum=0.0)
    if enabled and not start < end:
        raise SchemaError(
            f"{sec.path}.window_start_s", "requires window_start_s < window_end_s"
        )
    sec.finish()
    return ChargingConfig(enabled=enabled, window_start_s=start, window_end_s=end)


def _parse_sim(sec: Optional[_Fields], ambient_c: float) -> SimSettings:
    if sec is None:
        temps = InitialTemps(ambient_c, ambient_c, ambient_c, ambient_c)
        return SimSettings(
            dt_s=DEFAULT_DT_S,
            initial_soc=DEFAULT_INITIAL_SOC,
            initial_temps=temps,
            hvac_enabled=True,
        )
    dt = sec.number("dt_s", default=DEFAULT_DT_S, exclusive_min=0.0)
    initial_soc = sec.number(
        "initial_soc", default=DEFAULT_INITIAL_SOC, exclusive_min=0.0, maximum=1.0
    )
    hvac_enabled = sec.boolean("hvac_enabled", default=True)
    temps_sec = sec.section("initial_temps_c", required=False)
    if temps_sec is None:
        temps = InitialTemps(ambient_c, ambient_c, ambient_c, ambient_c)
    else:
        temps = InitialTemps(
            battery_c=temps_sec.number("battery", default=ambient_c),
            motor_c=temps_sec.number("motor", default=ambient_c),
            coolant_c=temps_sec.number("coolant", default=ambient_c),
            cabin_c=temps_sec.number("cabin", default=ambient_c),
        )
        temps_sec.finish()
    sec.finish()
    return SimSettings(
        dt_s=dt, initial_soc=initial_soc, initial_temps=temps, hvac_enabled=hvac_enabled
    )


def load_testcase(path) -> TestcaseConfig:
    """Load, validate, and unit-normalize a testcase YAML file."""
    path = Path(path)
    data = _read_yaml_mapping(path)
    base_dir = path.resolve().parent
    root = _Fields(data, "")

    name = root.string("name", default=None)
    route = _parse_route(root.section("route"), base_dir)
    ambient = root.number("ambient_temp_c", default=23.0)
    solar = root.number("solar_irradiance_w_per_m2", default=0.0, minimum=0.0)
    density = root.number("air_density_kg_per_m3", default=1.2, exclusive_min=0.0)
    grade = root.number(
        "grade_rad", default=0.0, minimum=-math.pi / 4, maximum=math.pi / 4
    )
    wind = root.number(
        "wind_speed_mps", default=0.0, variants={"wind_speed_kmh": units.MPS_PER_KMH}
    )
    payload = _parse_payload(root.section("payload", required=False))
    charging = _parse_charging(root.section("charging", required=False))
    sim = _parse_sim(root.section("sim", required=False), ambient)
    root.finish()

    return TestcaseConfig(
        name=name,
        route=route,
        ambient_temp_c=ambient,
        solar_irradiance_w_per_m2=solar,
        air_density_kg_per_m3=density,
        grade_rad=grade,
        wind_speed_mps=wind,
        payload=payload,
        charging=charging,
        sim=sim,
    )


# ---------------------------------------------------------------------------
# Cross-config resolution
# ---------------------------------------------------------------------------

def effective_mass(vehicle: VehicleConfig, testcase: TestcaseConfig) -> float:
    """Kerb mass plus passengers and cargo, kg."""
    payload = testcase.payload
    return (
        vehicle.mass_kg
        + payload.passenger_count * payload.passenger_mass_kg
        + payload.cargo_mass_kg
    )


def cross_validate(vehicle: VehicleConfig, testcase: TestcaseConfig) -> None:
    """Checks that need both configs, applied when a run is assembled."""
    soc = testcase.sim.initial_soc
    if not vehicle.battery.soc_min <= soc <= vehicle.battery.soc_max:
        raise SchemaError(
            "sim.initial_soc",
            f"must lie in [soc_min, soc_max] = "
            f"[{vehicle.battery.soc_min}, {vehicle.battery.soc_max}], got {soc}",
        )
    if testcase.charging.enabled and vehicle.charger is None:
        raise SchemaError("charging.enabled", "vehicle defines no charger section")
    dt_eff = vehicle.divisor("thermal") * testcase.sim.dt_s
    thermal = vehicle.thermal
    for name, tau in (
        ("tau_batt_s", thermal.tau_batt_s),
        ("tau_motor_s", thermal.tau_motor_s),
        ("tau_coolant_s", thermal.tau_coolant_s),
    ):
        if dt_eff >= tau:
            raise SchemaError(
                f"thermal.{name}",
                f"effective thermal step {dt_eff} s must stay below the time "
                f"constant {tau} s (explicit integration stability)",
            )


# ---------------------------------------------------------------------------
# Resolved-config emission (round-trips through the loader)
# ---------------------------------------------------------------------------

def _prune(mapping: dict) -> dict:
    return {k: v for k, v in mapping.items() if v is not None}


def vehicle_to_mapping(vehicle: VehicleConfig) -> dict:
    """Plain mapping in internal units; loading it again is value-identical."""
    out = _prune({
        "name": vehicle.name,
        "mass_kg": vehicle.mass_kg,
        "cd": vehicle.cd,
        "frontal_area_m2": vehicle.frontal_area_m2,
        "crr": vehicle.crr,
        "wheel_radius_m": vehicle.wheel_radius_m,
        "reducer_ratio_primary": vehicle.reducer_ratio_primary,
        "reducer_ratio_secondary": vehicle.reducer_ratio_secondary,
        "transmission_efficiency": vehicle.transmission_efficiency,
        "inverter_efficiency": vehicle.inverter_efficiency,
        "regen_blend_factor": vehicle.regen_blend_factor,
        "max_regen_power_w": vehicle.max_regen_power_w,
        "drive_force_limit_n": vehicle.drive_force_limit_n,
        "brake_force_limit_n": vehicle.brake_force_limit_n,
    })
    motor = vehicle.motor
    out["motor"] = _prune({
        "model": motor.model,
        "peak_torque_nm": motor.peak_torque_nm,
        "peak_power_w": motor.peak_power_w,
        "max_speed_radps": motor.max_speed_radps,
        "base_speed_radps": motor.base_speed_radps,
        "base_efficiency": motor.base_efficiency,
        "min_efficiency": motor.min_efficiency,
        "max_efficiency": motor.max_efficiency,
        "regen_efficiency": motor.regen_efficiency,
        "max_regen_torque_nm": motor.max_regen_torque_nm,
        "max_regen_power_w": motor.max_regen_power_w,
        "map_path": motor.map_path,
    })
    battery = vehicle.battery
    out["battery"] = _prune({
        "model": battery.model,
        "v_nom_v": battery.v_nom_v,
        "capacity_ah": battery.capacity_ah,
        "soc_min": battery.soc_min,
        "soc_max": battery.soc_max,
        "c_rate_charge_max": battery.c_rate_charge_max,
        "c_rate_discharge_max": battery.c_rate_discharge_max,
        "r_int_ohm": battery.r_int_ohm,
        "r0_ohm": battery.r0_ohm,
        "r1_ohm": battery.r1_ohm,
        "c1_f": battery.c1_f,
        "r2_ohm": battery.r2_ohm,
        "c2_f": battery.c2_f,
        "ocv_table": [list(p) for p in battery.ocv_table] if battery.ocv_table else None,
        "external_module_path": battery.external_module_path,
    })
    if vehicle.charger is not None:
        charger = vehicle.charger
        out["charger"] = _prune({
            "ac_power_limit_w": charger.ac_power_limit_w,
            "charge_efficiency": charger.charge_efficiency,
            "target_voltage_v": charger.target_voltage_v,
            "charge_resistance_ohm": charger.charge_resistance_ohm,
            "termination_current_a": charger.termination_current_a,
            "max_charge_current_a": charger.max_charge_current_a,
            "temp_min_c": charger.temp_min_c,
            "temp_max_c": charger.temp_max_c,
        })
    out["aux"] = {
        "headlights_w": vehicle.aux.headlights_w,
        "adas_w": vehicle.aux.adas_w,
        "infotainment_w": vehicle.aux.infotainment_w,
        "steering_w": vehicle.aux.steering_w,
    }
    hvac = vehicle.hvac
    out["hvac"] = _prune({
        "model": hvac.model,
        "ua_body_w_per_k": hvac.ua_body_w_per_k,
        "k_v_w_per_k_per_mps": hvac.k_v_w_per_k_per_mps,
        "glass_area_m2": hvac.glass_area_m2,
        "solar_transmittance": hvac.solar_transmittance,
        "air_massflow_kg_per_s": hvac.air_massflow_kg_per_s,
        "occupant_heat_w": hvac.occupant_heat_w,
        "cabin_capacitance_j_per_k": hvac.cabin_capacitance_j_per_k,
        "rated_thermal_power_w": hvac.rated_thermal_power_w,
        "cop_cooling": hvac.cop_cooling,
        "cop_heating": hvac.cop_heating,
        "setpoint_c": hvac.setpoint_c,
        "controller_gain_w_per_k": hvac.controller_gain_w_per_k,
        "external_module_path": hvac.external_module_path,
    })
    out["thermal"] = {
        "tau_batt_s": vehicle.thermal.tau_batt_s,
        "tau_motor_s": vehicle.thermal.tau_motor_s,
        "tau_coolant_s": vehicle.thermal.tau_coolant_s,
        "beta_batt_k_per_j": vehicle.thermal.beta_batt_k_per_j,
        "beta_motor_k_per_j": vehicle.thermal.beta_motor_k_per_j,
    }
    out["rate_divisors"] = dict(vehicle.rate_divisors)
    return out


def testcase_to_mapping(testcase: TestcaseConfig) -> dict:
    route = _prune({
        "mode": testcase.route.mode,
        "cycle_path": testcase.route.cycle_path,
    })
    if testcase.route.segments is not None:
        route["segments"] = [
            _prune({
                "kind": seg.kind,
                "duration_s": seg.duration_s,
                "target_speed_mps": seg.target_speed_mps,
            })
            for seg in testcase.route.segments
        ]
    temps = testcase.sim.initial_temps
    return _prune({
        "name": testcase.name,
        "route": route,
        "ambient_temp_c": testcase.ambient_temp_c,
        "solar_irradiance_w_per_m2": testcase.solar_irradiance_w_per_m2,
        "air_density_kg_per_m3": testcase.air_density_kg_per_m3,
        "grade_rad": testcase.grade_rad,
        "wind_speed_mps": testcase.wind_speed_mps,
        "payload": {
            "passenger_count": testcase.payload.passenger_count,
            "passenger_mass_kg": testcase.payload.passenger_mass_kg,
            "cargo_mass_kg": testcase.payload.cargo_mass_kg,
        },
        "charging": {
            "enabled": testcase.charging.enabled,
            "window_start_s": testcase.charging.window_start_s,
            "window_end_s": testcase.charging.window_end_s,
        },
        "sim": {
            "dt_s": testcase.sim.dt_s,
            "initial_soc": testcase.sim.initial_soc,
            "initial_temps_c": {
                "battery": temps.battery_c,
                "motor": temps.motor_c,
                "coolant": temps.coolant_c,
                "cabin": temps.cabin_c,
            },
            "hvac_enabled": testcase.sim.hvac_enabled,
        },
    })


def resolved_vehicle_yaml(vehicle: VehicleConfig) -> str:
    return yaml.safe_dump(vehicle_to_mapping(vehicle), sort_keys=True, default_flow_style=False)


def resolved_testcase_yaml(testcase: TestcaseConfig) -> str:
    return yaml.safe_dump(testcase_to_mapping(testcase), sort_keys=True, default_flow_style=False)
