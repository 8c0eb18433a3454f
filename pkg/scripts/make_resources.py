#!/usr/bin/env python3
"""Regenerate the bundled drive-cycle CSVs and the hatch motor map.

The cycles are synthetic but shaped like certification traces: an urban
stop-start cycle, a highway cruise, and an 1800 s full-range mixed cycle
balanced to roughly 23.2 km. Run from the repo root:

    python scripts/make_resources.py
"""

import csv
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from bevsim.config import SegmentSpec  # noqa: E402
from bevsim.cycles import build_parametric, write_cycle_csv  # noqa: E402
from bevsim.driveline import motor_efficiency_scalar  # noqa: E402

DATA = ROOT / "src" / "bevsim" / "data"
KMH = 1 / 3.6


def seg(kind, duration, target=None):
    return SegmentSpec(kind=kind, duration_s=float(duration), target_speed_mps=target)


def stop_block(t_accel, v_kmh, t_cruise, t_decel, t_idle):
    v = v_kmh * KMH
    return [
        seg("accel", t_accel, v),
        seg("cruise", t_cruise),
        seg("decel", t_decel, 0.0),
        seg("idle", t_idle),
    ]


def urban_cycle():
    segments = [seg("idle", 5)]
    segments += stop_block(12, 30, 25, 8, 8)
    segments += stop_block(15, 40, 55, 10, 7)
    segments += stop_block(18, 50, 80, 12, 10)
    segments += stop_block(15, 40, 65, 10, 6)
    segments += stop_block(14, 35, 45, 9, 8)
    segments += stop_block(16, 45, 70, 11, 6)
    total = sum(s.duration_s for s in segments)
    segments.append(seg("idle", 600 - total))
    return build_parametric(segments, 1.0, name="urban_stop_start")


def highway_cycle():
    segments = [
        seg("idle", 5),
        seg("accel", 40, 100 * KMH),
        seg("cruise", 290),
        seg("accel", 10, 110 * KMH),
        seg("cruise", 250),
        seg("decel", 15, 90 * KMH),
        seg("cruise", 240),
        seg("decel", 45, 0.0),
        seg("idle", 5),
    ]
    return build_parametric(segments, 1.0, name="highway_cruise")


def mixed_cycle(target_km=23.2):
    low = [seg("idle", 8)]
    low += stop_block(12, 30, 22, 8, 7)
    low += stop_block(15, 45, 50, 11, 8)
    low += stop_block(14, 35, 30, 9, 9)
    low += stop_block(18, 50, 75, 12, 10)
    low += stop_block(15, 40, 45, 10, 12)

    mid = stop_block(20, 65, 110, 14, 9)
    mid += stop_block(22, 70, 130, 15, 8)

    high = [
        seg("accel", 25, 80 * KMH),
        seg("cruise", 120),
        seg("accel", 12, 97 * KMH),
        seg("cruise", 150),
        seg("decel", 10, 70 * KMH),
        seg("cruise", 60),
        seg("decel", 20, 0.0),
        seg("idle", 8),
    ]

    xhigh_head = [
        seg("accel", 30, 110 * KMH),
        seg("cruise", 60),
        seg("accel", 15, 131 * KMH),
    ]
    xhigh_tail_decel = 35
    fixed = low + mid + high + xhigh_head
    fixed_time = sum(s.duration_s for s in fixed) + xhigh_tail_decel

    # Balance the top-speed cruise so the total distance lands on target,
    # then pad with idle to exactly 1800 s.
    probe = build_parametric(
        fixed + [seg("decel", xhigh_tail_decel, 0.0), seg("idle", 5)], 1.0
    )
    v_top = 131 * KMH
    cruise = round((target_km * 1000.0 - probe.distance_m) / v_top)
    idle_pad = 1800 - fixed_time - cruise
    assert idle_pad >= 5, f"cycle over-full: idle pad {idle_pad}"
    segments = (
        low
        + mid
        + high
        + xhigh_head
        + [seg("cruise", cruise), seg("decel", xhigh_tail_decel, 0.0), seg("idle", idle_pad)]
    )
    return build_parametric(segments, 1.0, name="mixed_full_range")


def motor_map(path):
    """Nearest-neighbour efficiency grid for the hatch motor."""
    t_pk = 250.0
    w_max = 14000 * 2 * 3.141592653589793 / 60
    rows = []
    speeds = [w_max * f for f in (0.0, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 1.0)]
    torques = [t_pk * f for f in (-1.0, -0.7, -0.4, -0.15, 0.0, 0.15, 0.4, 0.7, 1.0)]
    for w in speeds:
        for t in torques:
            eta = motor_efficiency_scalar(t, w, t_pk, w_max, 0.92, 0.78, 0.95)
            rows.append((w, t, eta))
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["speed_radps", "torque_nm", "efficiency"])
        for w, t, eta in rows:
            writer.writerow([f"{w:.4f}", f"{t:.4f}", f"{eta:.4f}"])


def main():
    for build in (urban_cycle, highway_cycle, mixed_cycle):
        cycle = build()
        out = DATA / "cycles" / f"{cycle.name}.csv"
        write_cycle_csv(cycle, out)
        print(
            f"{cycle.name}: {cycle.duration_s:.0f} s, {cycle.distance_m / 1000:.3f} km, "
            f"v_max {max(cycle.speeds_mps) * 3.6:.1f} km/h -> {out}"
        )
    map_path = DATA / "maps" / "hatch_motor_map.csv"
    motor_map(map_path)
    print(f"motor map -> {map_path}")


if __name__ == "__main__":
    main()
