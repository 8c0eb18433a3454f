#!/usr/bin/env python3
"""Reference external battery model.

Reimplements the builtin internal-resistance pack behind the subprocess
slot protocol, arithmetic step for step, so host-side fidelity checks can
compare the two paths exactly.
"""

import json
import sys


def emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def main():
    params = {}
    soc = 0.0
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        msg = json.loads(line)
        kind = msg.get("type")
        if kind == "init":
            params = msg["params"]
            soc = params["initial_soc"]
            emit({"type": "ready", "protocol": 1})
        elif kind == "step":
            inputs = msg["inputs"]
            p_net = inputs["p_net_w"]
            dt = inputs["dt_s"]
            v_nom = params["v_nom_v"]
            capacity = params["capacity_ah"]
            i = p_net / v_nom
            i_max_dis = params["c_rate_discharge_max"] * capacity
            i_max_chg = params["c_rate_charge_max"] * capacity
            i = min(max(i, -i_max_chg), i_max_dis)
            v = v_nom - i * params["r_int_ohm"]
            soc_next = soc - i * dt / (capacity * 3600.0)
            soc = min(max(soc_next, params["soc_min"]), params["soc_max"])
            emit({
                "type": "result",
                "outputs": {"soc": soc, "v_batt_v": v, "i_batt_a": i},
            })
        elif kind == "shutdown":
            break


if __name__ == "__main__":
    main()
