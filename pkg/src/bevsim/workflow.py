"""High-level run orchestration shared by the CLI and programmatic users."""

from __future__ import annotations

from pathlib import Path

from .config import TestcaseConfig, load_testcase, load_vehicle
from .cycles import DriveCycle, build_parametric, load_cycle_csv
from .engine import RunResult, build_engine
from .post import EnergyBudget, integrate_budget, write_case_package


def load_route_cycle(testcase: TestcaseConfig) -> DriveCycle:
    """Materialize the speed trace the testcase prescribes."""
    route = testcase.route
    if route.mode == "cycle_csv":
        return load_cycle_csv(route.cycle_path)
    return build_parametric(route.segments, testcase.sim.dt_s)


def run_case(
    case_dir,
    vehicle_path=None,
    testcase_path=None,
    case_name: str = "run",
    overwrite: bool = False,
    progress=None,
    write_package: bool = True,
) -> tuple[RunResult, EnergyBudget, Path | None]:
    """Load the case inputs, simulate, and (optionally) write the package."""
    case_dir = Path(case_dir)
    vehicle_path = Path(vehicle_path) if vehicle_path else case_dir / "vehicle.yaml"
    testcase_path = Path(testcase_path) if testcase_path else case_dir / "testcase.yaml"
    vehicle = load_vehicle(vehicle_path)
    testcase = load_testcase(testcase_path)
    cycle = load_route_cycle(testcase)
    engine = build_engine(vehicle, testcase, cycle)
    result = engine.run(progress=progress)
    budget = integrate_budget(result)
    package = None
    if write_package:
        package = write_case_package(
            result, budget, vehicle_path, testcase_path, case_dir, case_name, overwrite
        )
    return result, budget, package
