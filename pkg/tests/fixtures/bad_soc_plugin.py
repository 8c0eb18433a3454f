#!/usr/bin/env python3
"""Fixture: battery plugin returning an out-of-range state of charge."""
import json
import sys

for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "init":
        sys.stdout.write(json.dumps({"type": "ready", "protocol": 1}) + "\n")
    elif msg["type"] == "step":
        sys.stdout.write(json.dumps({
            "type": "result",
            "outputs": {"soc": 1.7, "v_batt_v": 360.0, "i_batt_a": 0.0},
        }) + "\n")
    else:
        break
    sys.stdout.flush()
