"""Case packaging: energy budget, timeseries CSV, summary, resolved inputs.

Each run is written atomically (temp directory + rename) under
``<case_dir>/output/<case_name>/`` as a self-contained artifact: copied
and resolved input YAMLs, the fixed-column timeseries, a summary record
with the analytical energy budget, a README, and static SVG plots. Apart
from the recorded wall time, a rerun of the same inputs reproduces every
byte.
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
from dataclasses import dataclass
from pathlib import Path

from . import units
from ._version import __version__
from .config import resolved_testcase_yaml, resolved_vehicle_yaml
from .engine import RunResult
from .longitudinal import aero_force, grade_force, rolling_force
from .plots import render_plots
from .state import TIMESERIES_COLUMNS

J_PER_WH = 3600.0


@dataclass(frozen=True)
class EnergyBudget:
    e_aero_wh: float
    e_roll_wh: float
    e_grade_wh: float
    e_inertia_wh: float
    e_wheel_wh: float
    e_drive_wh: float
    e_regen_wh: float
    e_aux_wh: float
    e_hvac_wh: float
    e_net_wh: float
    consumption_kwh_per_100km: float | None


def integrate_budget(result: RunResult) -> EnergyBudget:
    """Integrate the per-step energy channels over the run.

    Road-load components are re-derived from the recorded speed and
    acceleration with the same force expressions the engine used, so the
    budget stays reproducible from the packaged timeseries alone. Each row
    covers one master step of dt; net energy is reported through the
    identity drive - regen + aux + hvac.
    """
    dt = result.dt_s
    vehicle = result.vehicle
    testcase = result.testcase
    m_eff = result.m_eff_kg
    idx = {name: i for i, name in enumerate(result.columns)}
    i_speed = idx["speed_mps"]
    i_accel = idx["accel_mps2"]
    i_drive = idx["p_drive_dc_w"]
    i_regen = idx["p_regen_w"]
    i_aux = idx["p_aux_w"]
    i_hvac = idx["p_hvac_w"]

    rho = testcase.air_density_kg_per_m3
    cd = vehicle.cd
    area = vehicle.frontal_area_m2
    crr = vehicle.crr
    grade = testcase.grade_rad
    wind = testcase.wind_speed_mps

    e_aero = e_roll = e_grade = e_inertia = 0.0
    e_drive = e_regen = e_aux = e_hvac = 0.0
    for row in result.rows:
        v = row[i_speed]
        a = row[i_accel]
        e_aero += aero_force(rho, cd, area, v + wind) * v * dt
        e_roll += rolling_force(m_eff, crr, grade, v) * v * dt
        e_grade += grade_force(m_eff, grade) * v * dt
        p_inertia = m_eff * a * v
        if p_inertia > 0.0:
            e_inertia += p_inertia * dt
        e_drive += row[i_drive] * dt
        e_regen += row[i_regen] * dt
        e_aux += row[i_aux] * dt
        e_hvac += row[i_hvac] * dt

    e_aero /= J_PER_WH
    e_roll /= J_PER_WH
    e_grade /= J_PER_WH
    e_inertia /= J_PER_WH
    e_drive /= J_PER_WH
    e_regen /= J_PER_WH
    e_aux /= J_PER_WH
    e_hvac /= J_PER_WH
    e_net = e_drive - e_regen + e_aux + e_hvac

    distance_km = units.m_to_km(result.distance_m)
    if distance_km > 1e-3:
        consumption = units.wh_to_kwh(e_net) / (distance_km / 100.0)
    else:
        consumption = None
    return EnergyBudget(
        e_aero_wh=e_aero,
        e_roll_wh=e_roll,
        e_grade_wh=e_grade,
        e_inertia_wh=e_inertia,
        e_wheel_wh=e_aero + e_roll + e_grade + e_inertia,
        e_drive_wh=e_drive,
        e_regen_wh=e_regen,
        e_aux_wh=e_aux,
        e_hvac_wh=e_hvac,
        e_net_wh=e_net,
        consumption_kwh_per_100km=consumption,
    )


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    return f"{value:.6g}"


def write_timeseries_csv(rows, path: Path) -> None:
    """Fixed column order, numbers at six significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(TIMESERIES_COLUMNS) + "\n")
        for row in rows:
            handle.write(",".join(_format_cell(v) for v in row) + "\n")


def build_summary(result: RunResult, budget: EnergyBudget, case_name: str,
                  vehicle_sha256: str, testcase_sha256: str) -> dict:
    """Summary record with stable key layout for diff-friendly JSON."""
    return {
        "meta": {
            "tool": "bevsim",
            "version": __version__,
            "case_name": case_name,
            "vehicle_sha256": vehicle_sha256,
            "testcase_sha256": testcase_sha256,
            "wall_time_s": result.wall_time_s,
        },
        "results": {
            "steps": result.steps,
            "dt_s": result.dt_s,
            "cycle_name": result.cycle_name,
            "cycle_duration_s": result.cycle_duration_s,
            "distance_km": units.m_to_km(result.distance_m),
            "final_soc": result.final_soc,
            "energy_net_wh": budget.e_net_wh,
            "consumption_kwh_per_100km": budget.consumption_kwh_per_100km,
        },
        "energy_budget_wh": {
            "aero": budget.e_aero_wh,
            "roll": budget.e_roll_wh,
            "grade": budget.e_grade_wh,
            "inertia": budget.e_inertia_wh,
            "wheel": budget.e_wheel_wh,
            "drive": budget.e_drive_wh,
            "regen": budget.e_regen_wh,
            "aux": budget.e_aux_wh,
            "hvac": budget.e_hvac_wh,
            "net": budget.e_net_wh,
        },
        "inputs": {
            "vehicle_file": "vehicle.yaml",
            "testcase_file": "testcase.yaml",
            "vehicle_name": result.vehicle.name,
            "testcase_name": result.testcase.name,
            "effective_mass_kg": result.m_eff_kg,
        },
    }


def _package_readme(result: RunResult, budget: EnergyBudget, case_name: str) -> str:
    consumption = (
        f"{budget.consumption_kwh_per_100km:.2f} kWh/100km"
        if budget.consumption_kwh_per_100km is not None
        else "n/a (zero distance)"
    )
    return (
        f"# Case package: {case_name}\n"
        f"\n"
        f"Self-contained simulation artifact. `vehicle.yaml` and `testcase.yaml`\n"
        f"are verbatim copies of the inputs; the `*.resolved.yaml` variants are\n"
        f"unit-normalized with every default filled in and reload identically.\n"
        f"\n"
        f"- cycle: {result.cycle_name} ({result.cycle_duration_s:.0f} s, "
        f"{units.m_to_km(result.cycle_distance_m):.2f} km)\n"
        f"- steps: {result.steps} at dt {result.dt_s} s\n"
        f"- distance: {units.m_to_km(result.distance_m):.3f} km\n"
        f"- final SoC: {result.final_soc:.4f}\n"
        f"- net energy: {budget.e_net_wh:.1f} Wh\n"
        f"- consumption: {consumption}\n"
        f"\n"
        f"Files: `summary.json`, `timeseries.csv`, `vehicle.yaml`,\n"
        f"`testcase.yaml`, `vehicle.resolved.yaml`, `testcase.resolved.yaml`,\n"
        f"`plots/`.\n"
    )


def write_case_package(
    result: RunResult,
    budget: EnergyBudget,
    vehicle_path,
    testcase_path,
    case_dir,
    case_name: str,
    overwrite: bool = False,
) -> Path:
    """Write the package atomically; returns the package directory."""
    case_dir = Path(case_dir)
    output_root = case_dir / "output"
    target = output_root / case_name
    if target.exists():
        if not overwrite:
            raise FileExistsError(
                f"case package already exists: {target} (use overwrite to replace)"
            )
    output_root.mkdir(parents=True, exist_ok=True)
    tmp = output_root / f".tmp-{case_name}-{os.getpid()}"
    if tmp.exists():
        shutil.rmtree(tmp)
    tmp.mkdir()
    try:
        vehicle_copy = tmp / "vehicle.yaml"
        testcase_copy = tmp / "testcase.yaml"
        shutil.copyfile(vehicle_path, vehicle_copy)
        shutil.copyfile(testcase_path, testcase_copy)
        (tmp / "vehicle.resolved.yaml").write_text(
            resolved_vehicle_yaml(result.vehicle), encoding="utf-8"
        )
        (tmp / "testcase.resolved.yaml").write_text(
            resolved_testcase_yaml(result.testcase), encoding="utf-8"
        )
        write_timeseries_csv(result.rows, tmp / "timeseries.csv")
        summary = build_summary(
            result,
            budget,
            case_name,
            _sha256_file(vehicle_copy),
            _sha256_file(testcase_copy),
        )
        with open(tmp / "summary.json", "w", encoding="utf-8") as handle:
            json.dump(summary, handle, indent=2)
            handle.write("\n")
        (tmp / "README.md").write_text(
            _package_readme(result, budget, case_name), encoding="utf-8"
        )
        plots_dir = tmp / "plots"
        plots_dir.mkdir()
        render_plots(result.rows, result.columns, plots_dir)
        if target.exists():
            shutil.rmtree(target)
        os.rename(tmp, target)
    finally:
        if tmp.exists():
            shutil.rmtree(tmp)
    return target
