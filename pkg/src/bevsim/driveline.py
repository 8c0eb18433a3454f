"""Reducer kinematics, motor torque envelope, efficiency models, inverter.

The motor envelope is constant-torque below the base speed and
power-limited above it, with separate regenerative ceilings that fall back
to the motoring limits when not configured. Efficiency comes either from a
compact scalar expression or from nearest-neighbour lookup in a CSV map.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import MapFormatError

EFF_TORQUE_COEFF = 0.06
EFF_SPEED_COEFF = 0.03


@dataclass(frozen=True)
class MotorEnvelope:
    t_pk_nm: float
    p_pk_w: float
    omega_base_radps: float
    omega_max_radps: float
    t_regen_max_nm: float
    p_regen_max_w: float

    @classmethod
    def from_motor_params(cls, motor) -> "MotorEnvelope":
        # Missing regen ceilings fall back to the motoring limits.
        return cls(
            t_pk_nm=motor.peak_torque_nm,
            p_pk_w=motor.peak_power_w,
            omega_base_radps=motor.base_speed_radps,
            omega_max_radps=motor.max_speed_radps,
            t_regen_max_nm=(
                motor.max_regen_torque_nm
                if motor.max_regen_torque_nm is not None
                else motor.peak_torque_nm
            ),
            p_regen_max_w=(
                motor.max_regen_power_w
                if motor.max_regen_power_w is not None
                else motor.peak_power_w
            ),
        )


def reducer_map(v: float, wheel_radius_m: float, ratio_total: float) -> tuple[float, float]:
    """(omega_wheel, omega_motor) for a fixed total reduction ratio."""
    omega_wheel = v / wheel_radius_m
    return omega_wheel, ratio_total * omega_wheel


def torque_limit(env: MotorEnvelope, omega: float, direction: str = "motoring") -> float:
    """Admissible torque magnitude at shaft speed omega."""
    if direction == "regen":
        t_cap, p_cap = env.t_regen_max_nm, env.p_regen_max_w
    else:
        t_cap, p_cap = env.t_pk_nm, env.p_pk_w
    if omega <= env.omega_base_radps or omega <= 0.0:
        return t_cap
    return min(t_cap, p_cap / omega)


def clamp_torque(env: MotorEnvelope, torque_request: float, omega: float) -> float:
    """Clamp a signed torque request into the envelope at omega."""
    if torque_request >= 0.0:
        return min(torque_request, torque_limit(env, omega, "motoring"))
    return max(torque_request, -torque_limit(env, omega, "regen"))


def motor_efficiency_scalar(
    torque: float,
    omega: float,
    t_pk_nm: float,
    omega_max_radps: float,
    base_efficiency: float,
    min_efficiency: float,
    max_efficiency: float,
) -> float:
    """Compact scalar efficiency: penalizes part load and high speed."""
    lam_t = min(abs(torque) / t_pk_nm, 1.0)
    lam_w = min(omega / omega_max_radps, 1.0)
    eta = base_efficiency - EFF_TORQUE_COEFF * (1.0 - lam_t) - EFF_SPEED_COEFF * lam_w
    return min(max(eta, min_efficiency), max_efficiency)


@dataclass(frozen=True)
class EfficiencyMap:
    speeds_radps: tuple[float, ...]
    torques_nm: tuple[float, ...]
    efficiencies: tuple[float, ...]
    omega_scale: float
    torque_scale: float

    def lookup(self, torque: float, omega: float) -> float:
        """Efficiency of the nearest grid point in the normalized plane."""
        best = 0
        best_d = float("inf")
        wq = omega / self.omega_scale
        tq = torque / self.torque_scale
        for i in range(len(self.speeds_radps)):
            dw = wq - self.speeds_radps[i] / self.omega_scale
            dt = tq - self.torques_nm[i] / self.torque_scale
            d = dw * dw + dt * dt
            if d < best_d:
                best_d = d
                best = i
        return self.efficiencies[best]


def load_efficiency_map(path, omega_scale: float, torque_scale: float) -> EfficiencyMap:
    """CSV with header ``speed_radps,torque_nm,efficiency``, one point per row.

    Distances are measured after normalizing speed by omega_scale and torque
    by torque_scale so the two axes are commensurate.
    """
    path = Path(path)
    if not path.is_file():
        raise MapFormatError(f"efficiency map not found: {path}")
    speeds: list[float] = []
    torques: list[float] = []
    effs: list[float] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MapFormatError(f"{path}: empty file") from None
        if tuple(h.strip() for h in header) != ("speed_radps", "torque_nm", "efficiency"):
            raise MapFormatError(
                f"{path}: header must be 'speed_radps,torque_nm,efficiency'"
            )
        for row_index, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise MapFormatError(f"{path}: line {row_index}: expected 3 columns")
            try:
                w, t, eta = (float(x) for x in row)
            except ValueError:
                raise MapFormatError(f"{path}: line {row_index}: non-numeric value") from None
            if not 0.0 < eta <= 1.0:
                raise MapFormatError(
                    f"{path}: line {row_index}: efficiency must lie in (0, 1]"
                )
            speeds.append(w)
            torques.append(t)
            effs.append(eta)
    if not speeds:
        raise MapFormatError(f"{path}: map has no points")
    return EfficiencyMap(
        speeds_radps=tuple(speeds),
        torques_nm=tuple(torques),
        efficiencies=tuple(effs),
        omega_scale=omega_scale,
        torque_scale=torque_scale,
    )


def scalar_efficiency_model(motor):
    """Factory for the analytical motor efficiency callable."""
    def efficiency(torque: float, omega: float) -> float:
        return motor_efficiency_scalar(
            torque,
            omega,
            motor.peak_torque_nm,
            motor.max_speed_radps,
            motor.base_efficiency,
            motor.min_efficiency,
            motor.max_efficiency,
        )
    return efficiency


def map_efficiency_model(motor):
    """Factory for the CSV-map motor efficiency callable."""
    table = load_efficiency_map(motor.map_path, motor.max_speed_radps, motor.peak_torque_nm)
    return table.lookup


def electrical_demand(
    torque: float, omega: float, eta_motor: float, eta_inverter: float
) -> tuple[float, float]:
    """(p_mech_w, p_drive_dc_w) for a motor operating point.

    Negative mechanical power draws nothing from the DC bus here; energy
    returned during braking is accounted by the blended-regen path only.
    """
    p_mech = torque * omega
    if p_mech > 0.0:
        return p_mech, p_mech / (eta_motor * eta_inverter)
    return p_mech, 0.0
