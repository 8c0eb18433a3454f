"""Command-line interface: init, run, list-examples, run-example.

Exit codes are stable: 0 success, 1 configuration or usage error, 2
filesystem error, 3 numerical or plugin runtime abort. Results go to
stdout, errors to stderr; --quiet suppresses progress output only.
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

import click

from . import resources, units
from ._version import __version__
from .errors import (
    BevsimError,
    HandshakeError,
    InvariantError,
    NumericalError,
    ParseError,
    PluginTimeoutError,
    ProtocolError,
    SchemaError,
    SpawnError,
    UnknownModelError,
    VersionError,
)
from .resources import CASE_MARKER
from .workflow import run_case

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FILESYSTEM = 2
EXIT_NUMERICAL = 3

_CONFIG_ERRORS = (
    SchemaError,
    ParseError,
    UnknownModelError,
    SpawnError,
    HandshakeError,
    VersionError,
)
_RUNTIME_ERRORS = (NumericalError, PluginTimeoutError, ProtocolError, InvariantError)


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


def _guarded(body) -> int:
    try:
        body()
        return EXIT_OK
    except CliFailure as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _RUNTIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BevsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILESYSTEM


@click.group(name="bevsim")
@click.version_option(__version__)
def cli():
    """Battery-electric vehicle longitudinal simulator."""


INIT_README = """# Simulation case

Edit `vehicle.yaml` and `testcase.yaml`, then run:

    bevsim run --case {case_dir}

Each run writes a self-contained package under `output/`.
"""


@cli.command("init")
@click.argument("case_dir", type=click.Path(path_type=Path))
def cmd_init(case_dir: Path):
    """Create a new case directory with template inputs."""

    def body():
        if case_dir.exists() and any(case_dir.iterdir()):
            raise CliFailure(
                EXIT_FILESYSTEM, f"directory {case_dir} exists and is not empty"
            )
        try:
            case_dir.mkdir(parents=True, exist_ok=True)
            (case_dir / CASE_MARKER).write_text("", encoding="utf-8")
            shutil.copyfile(
                resources.vehicle_path("sedan_midsize"), case_dir / "vehicle.yaml"
            )
            shutil.copyfile(
                resources.testcase_path("parametric_commute"), case_dir / "testcase.yaml"
            )
            (case_dir / "README.md").write_text(
                INIT_README.format(case_dir=case_dir), encoding="utf-8"
            )
            (case_dir / "output").mkdir()
        except OSError as exc:
            raise CliFailure(EXIT_FILESYSTEM, str(exc)) from exc
        print(f"initialized case directory: {case_dir}")
        print("created: vehicle.yaml, testcase.yaml, README.md, output/, marker")

    sys.exit(_guarded(body))


def _spec_sheet(vehicle, testcase, cycle_name: str) -> str:
    battery = vehicle.battery
    capacity_kwh = units.wh_to_kwh(battery.capacity_ah * battery.v_nom_v)
    lines = [
        f"vehicle:   {vehicle.name or 'unnamed'}  "
        f"(mass {vehicle.mass_kg:.0f} kg, Cd {vehicle.cd}, A {vehicle.frontal_area_m2} m2)",
        f"motor:     {vehicle.motor.model}, "
        f"{units.w_to_kw(vehicle.motor.peak_power_w):.0f} kW / "
        f"{vehicle.motor.peak_torque_nm:.0f} Nm",
        f"battery:   {battery.model}, {capacity_kwh:.1f} kWh nominal "
        f"({battery.capacity_ah:.1f} Ah @ {battery.v_nom_v:.0f} V)",
        f"testcase:  {testcase.name or 'unnamed'}  "
        f"(ambient {testcase.ambient_temp_c} C, dt {testcase.sim.dt_s} s, "
        f"initial SoC {testcase.sim.initial_soc})",
        f"route:     {cycle_name}",
        f"charging:  {'enabled' if testcase.charging.enabled else 'disabled'}",
    ]
    return "\n".join(lines)


def _execute_case(case_dir: Path, vehicle, testcase, name: str, overwrite: bool,
                  quiet: bool) -> None:
    if not (case_dir / CASE_MARKER).is_file():
        raise CliFailure(
            EXIT_CONFIG, f"{case_dir} is not a case directory (missing {CASE_MARKER})"
        )
    from .config import load_testcase, load_vehicle  # local to keep startup light
    from .workflow import load_route_cycle

    vehicle_path = Path(vehicle) if vehicle else case_dir / "vehicle.yaml"
    testcase_path = Path(testcase) if testcase else case_dir / "testcase.yaml"
    vehicle_cfg = load_vehicle(vehicle_path)
    testcase_cfg = load_testcase(testcase_path)
    cycle = load_route_cycle(testcase_cfg)
    if not quiet:
        print(_spec_sheet(vehicle_cfg, testcase_cfg, cycle.name))

    def progress(frac: float) -> None:
        if not quiet:
            print(f"progress: {round(frac * 100):d}%")

    result, budget, package = run_case(
        case_dir,
        vehicle_path=vehicle_path,
        testcase_path=testcase_path,
        case_name=name,
        overwrite=overwrite,
        progress=progress,
    )
    consumption = budget.consumption_kwh_per_100km
    print(
        f"result: steps={result.steps} "
        f"distance_km={units.m_to_km(result.distance_m):.3f} "
        f"final_soc={result.final_soc:.4f} "
        f"energy_net_wh={budget.e_net_wh:.1f}"
        + (f" consumption_kwh_per_100km={consumption:.2f}" if consumption else "")
    )
    print(f"package: {package}")


@cli.command("run")
@click.option("--case", "case_dir", required=True, type=click.Path(path_type=Path),
              help="Case directory created by 'bevsim init'.")
@click.option("--vehicle", type=click.Path(path_type=Path), default=None,
              help="Override the case vehicle YAML.")
@click.option("--testcase", type=click.Path(path_type=Path), default=None,
              help="Override the case testcase YAML.")
@click.option("--name", default="run", show_default=True, help="Case package name.")
@click.option("--overwrite", is_flag=True, help="Replace an existing package.")
@click.option("--quiet", is_flag=True, help="Suppress progress output (never results).")
def cmd_run(case_dir, vehicle, testcase, name, overwrite, quiet):
    """Run a case and write its output package."""

    def body():
        _execute_case(case_dir, vehicle, testcase, name, overwrite, quiet)

    sys.exit(_guarded(body))


@cli.command("list-examples")
def cmd_list_examples():
    """List packaged examples, archetypes, testcases, and cycles."""

    def body():
        print("examples:")
        for name in resources.list_examples():
            print(f"  {name}")
        print("archetypes:")
        for name in resources.list_vehicles():
            print(f"  {name}")
        print("testcases:")
        for name in resources.list_testcases():
            print(f"  {name}")
        print("cycles:")
        for name in resources.list_cycles():
            print(f"  {name}")

    sys.exit(_guarded(body))


@cli.command("run-example")
@click.argument("name")
@click.option("--out", "out_dir", type=click.Path(path_type=Path), default=None,
              help="Case directory to materialize into (default: ./<name>).")
@click.option("--case-name", "case_name", default="run", show_default=True)
@click.option("--overwrite", is_flag=True)
@click.option("--quiet", is_flag=True)
def cmd_run_example(name, out_dir, case_name, overwrite, quiet):
    """Materialize a packaged example into a case directory and run it."""

    def body():
        dest = out_dir if out_dir is not None else Path.cwd() / name
        resources.materialize_example(name, dest)
        if not quiet:
            print(f"materialized example {name!r} into {dest}")
        _execute_case(dest, None, None, case_name, overwrite, quiet)

    sys.exit(_guarded(body))


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        sys.exit(EXIT_CONFIG)
    except click.Abort:
        sys.exit(EXIT_CONFIG)


if __name__ == "__main__":
    main()
