#!/usr/bin/env python3
"""Calibrate the regen blend factor against a target consumption figure.

Procedure: fix every physical parameter, run the cycle at beta = 1.0, then
adjust beta until net energy matches the target consumption within the
requested tolerance. Net energy is monotone non-increasing in beta, so a
bisection converges quickly.

Example:

    python scripts/calibrate_beta.py --vehicle v.yaml --testcase t.yaml \
        --target-kwh-per-100km 13.5 --tolerance-pct 1.0
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from bevsim.config import load_testcase, load_vehicle  # noqa: E402
from bevsim.engine import build_engine  # noqa: E402
from bevsim.post import integrate_budget  # noqa: E402
from bevsim.workflow import load_route_cycle  # noqa: E402


def consumption_at(vehicle, testcase, cycle, beta: float) -> float:
    trial = replace(vehicle, regen_blend_factor=beta)
    result = build_engine(trial, testcase, cycle).run()
    return integrate_budget(result).consumption_kwh_per_100km


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vehicle", required=True, type=Path)
    parser.add_argument("--testcase", required=True, type=Path)
    parser.add_argument("--target-kwh-per-100km", required=True, type=float)
    parser.add_argument("--tolerance-pct", type=float, default=1.0)
    parser.add_argument("--max-iterations", type=int, default=30)
    args = parser.parse_args()

    vehicle = load_vehicle(args.vehicle)
    testcase = load_testcase(args.testcase)
    cycle = load_route_cycle(testcase)
    target = args.target_kwh_per_100km

    hi_consumption = consumption_at(vehicle, testcase, cycle, 0.0)
    lo_consumption = consumption_at(vehicle, testcase, cycle, 1.0)
    print(f"beta=0.00 -> {hi_consumption:.3f} kWh/100km")
    print(f"beta=1.00 -> {lo_consumption:.3f} kWh/100km")
    if not lo_consumption <= target <= hi_consumption:
        print(
            f"target {target} kWh/100km is outside the reachable band "
            f"[{lo_consumption:.3f}, {hi_consumption:.3f}]; adjust the physical "
            f"parameters first"
        )
        return 1

    lo, hi = 0.0, 1.0  # consumption decreases as beta rises
    beta = 1.0
    value = lo_consumption
    for _ in range(args.max_iterations):
        beta = 0.5 * (lo + hi)
        value = consumption_at(vehicle, testcase, cycle, beta)
        print(f"beta={beta:.4f} -> {value:.3f} kWh/100km")
        if abs(value - target) / target * 100.0 <= args.tolerance_pct:
            break
        if value > target:
            lo = beta
        else:
            hi = beta
    print(f"calibrated regen_blend_factor: {beta:.4f} "
          f"({value:.3f} kWh/100km vs target {target})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
