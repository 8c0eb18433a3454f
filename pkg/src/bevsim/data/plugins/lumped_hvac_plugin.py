#!/usr/bin/env python3
"""Reference external HVAC model.

Mirrors the builtin lumped-cabin model over the subprocess slot protocol:
passive heat terms, proportional controller with feedforward, rated-power
clipping, and COP-based electrical demand.
"""

import json
import sys

AIR_CP = 1005.0


def emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def main():
    params = {}
    t_cabin = 0.0
    enabled = True
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        msg = json.loads(line)
        kind = msg.get("type")
        if kind == "init":
            params = msg["params"]
            t_cabin = params["initial_cabin_temp_c"]
            enabled = params.get("enabled", True)
            emit({"type": "ready", "protocol": 1})
        elif kind == "step":
            inputs = msg["inputs"]
            t_amb = inputs["t_amb_c"]
            v = inputs["speed_mps"]
            dt = inputs["dt_s"]
            ua_total = params["ua_body_w_per_k"] + params["k_v_w_per_k_per_mps"] * v
            delta = t_amb - t_cabin
            q_env = ua_total * delta
            q_solar = (
                inputs["g_solar"] * params["glass_area_m2"] * params["solar_transmittance"]
            )
            q_vent = params["air_massflow_kg_per_s"] * AIR_CP * delta
            q_occ = inputs["n_occ"] * params["occupant_heat_w"]
            q_passive = q_env + q_solar + q_vent + q_occ
            if enabled:
                q_desired = (
                    params["controller_gain_w_per_k"] * (params["setpoint_c"] - t_cabin)
                    - q_passive
                )
                rated = params["rated_thermal_power_w"]
                q_hvac = min(max(q_desired, -rated), rated)
            else:
                q_hvac = 0.0
            q_net = q_passive + q_hvac
            t_cabin = t_cabin + q_net * dt / params["cabin_capacitance_j_per_k"]
            if q_hvac < 0.0:
                p_hvac = -q_hvac / params["cop_cooling"]
            elif q_hvac > 0.0:
                p_hvac = q_hvac / params["cop_heating"]
            else:
                p_hvac = 0.0
            emit({
                "type": "result",
                "outputs": {"q_hvac_w": q_hvac, "p_hvac_w": p_hvac, "t_cabin_c": t_cabin},
            })
        elif kind == "shutdown":
            break


if __name__ == "__main__":
    main()
