"""Blended regenerative braking.

A blend factor scales the kinetic braking opportunity taken from the
wheel-side power signal; the result is capped by the hardware regen
ceiling and converted to electrical power by the regen path efficiency.
"""

from __future__ import annotations

from dataclasses import dataclass

SPEED_CUTOFF_MPS = 0.5


@dataclass(frozen=True)
class RegenParams:
    beta: float
    eta_regen: float
    p_regen_max_w: float
    soc_upper_limit: float
    speed_cutoff_mps: float = SPEED_CUTOFF_MPS


def regen_power(
    p_wheel_w: float,
    v: float,
    brake_demand: bool,
    soc: float,
    params: RegenParams,
) -> tuple[float, float]:
    """(p_regen_w, p_friction_w) for one step.

    p_regen_w is the electrical power returned to the battery; p_friction_w
    is the wheel-side braking power left to the friction brakes, kept for
    audit. Regen is suppressed below the speed cutoff, without brake
    demand, and when SoC sits at or above the upper limit.
    """
    p_kinetic = max(-p_wheel_w, 0.0)
    if (
        not brake_demand
        or v < params.speed_cutoff_mps
        or soc >= params.soc_upper_limit
        or p_kinetic == 0.0
    ):
        return 0.0, p_kinetic
    p_hw = min(params.beta * p_kinetic, params.p_regen_max_w)
    return params.eta_regen * p_hw, p_kinetic - p_hw
