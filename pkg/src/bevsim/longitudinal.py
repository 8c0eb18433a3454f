"""Prescribed-speed longitudinal dynamics.

The speed trace is imposed; these functions derive acceleration, distance,
the road-load force decomposition, and the required wheel force and power.
Gravity is fixed at 9.81 m/s².
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import GRAVITY_MPS2


@dataclass(frozen=True)
class RoadLoadBreakdown:
    f_aero_n: float
    f_roll_n: float
    f_grade_n: float
    f_inertia_n: float

    @property
    def f_wheel_req_n(self) -> float:
        return self.f_inertia_n + self.f_aero_n + self.f_roll_n + self.f_grade_n


@dataclass(frozen=True)
class WheelDemand:
    p_wheel_w: float
    throttle_frac: float
    brake_frac: float
    brake_demand_flag: bool


def accel_from_trace(v_k: float, v_k1: float, dt_s: float) -> float:
    """Backward-difference acceleration implied by consecutive trace samples."""
    return (v_k1 - v_k) / dt_s


def advance_distance(x_k: float, v_k: float, v_k1: float, dt_s: float) -> float:
    """Trapezoidal kinematic distance update."""
    return x_k + 0.5 * (v_k + v_k1) * dt_s


def aero_force(rho: float, cd: float, area: float, v_rel: float) -> float:
    # Drag opposes relative airflow; sign follows v_rel for tailwinds that
    # exceed vehicle speed.
    return 0.5 * rho * cd * area * v_rel * abs(v_rel)


def rolling_force(m_eff: float, crr: float, grade_rad: float, v: float) -> float:
    """Rolling resistance with a low-order speed correction.

    Zero at standstill: a stationary vehicle has no rolling drag.
    """
    if v == 0.0:
        return 0.0
    return m_eff * GRAVITY_MPS2 * crr * math.cos(grade_rad) * (1.0 + 0.01 * v)


def grade_force(m_eff: float, grade_rad: float) -> float:
    return m_eff * GRAVITY_MPS2 * math.sin(grade_rad)


def road_load(
    v: float,
    accel: float,
    m_eff: float,
    grade_rad: float,
    rho: float,
    cd: float,
    area: float,
    crr: float,
    headwind_mps: float = 0.0,
) -> RoadLoadBreakdown:
    """Full force decomposition at one instant of the imposed motion."""
    v_rel = v + headwind_mps
    return RoadLoadBreakdown(
        f_aero_n=aero_force(rho, cd, area, v_rel),
        f_roll_n=rolling_force(m_eff, crr, grade_rad, v),
        f_grade_n=grade_force(m_eff, grade_rad),
        f_inertia_n=m_eff * accel,
    )


def wheel_demand(
    breakdown: RoadLoadBreakdown,
    v: float,
    drive_force_limit_n: float,
    brake_force_limit_n: float,
) -> WheelDemand:
    """Wheel power plus normalized throttle/brake demands against the limits."""
    force = breakdown.f_wheel_req_n
    throttle = 0.0
    brake = 0.0
    if force > 0.0:
        throttle = min(force / drive_force_limit_n, 1.0)
    elif force < 0.0:
        brake = min(-force / brake_force_limit_n, 1.0)
    return WheelDemand(
        p_wheel_w=force * v,
        throttle_frac=throttle,
        brake_frac=brake,
        brake_demand_flag=force < 0.0,
    )
