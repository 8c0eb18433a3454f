"""Packaged resources: archetype vehicles, testcases, drive cycles, plugins.

The resource root can be overridden with the BEVSIM_RESOURCE_DIR
environment variable (used by tests). An example pairs one packaged
vehicle with one packaged testcase; materializing it copies everything a
case directory needs, including any referenced cycle CSV or motor map, so
relative paths keep working.
"""

from __future__ import annotations

import os
import shutil
from pathlib import Path

import yaml

from .errors import ParseError

RESOURCE_ENV_VAR = "BEVSIM_RESOURCE_DIR"
CASE_MARKER = ".bevsim-case"


def resource_root() -> Path:
    override = os.environ.get(RESOURCE_ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def _stems(subdir: str, suffix: str) -> tuple[str, ...]:
    directory = resource_root() / subdir
    if not directory.is_dir():
        return ()
    return tuple(sorted(p.stem for p in directory.glob(f"*{suffix}")))


def list_cycles() -> tuple[str, ...]:
    return _stems("cycles", ".csv")


def list_vehicles() -> tuple[str, ...]:
    return _stems("vehicles", ".yaml")


def list_testcases() -> tuple[str, ...]:
    return _stems("testcases", ".yaml")


def cycle_path(name: str) -> Path:
    return resource_root() / "cycles" / f"{name}.csv"


def vehicle_path(name: str) -> Path:
    return resource_root() / "vehicles" / f"{name}.yaml"


def testcase_path(name: str) -> Path:
    return resource_root() / "testcases" / f"{name}.yaml"


def plugin_path(name: str) -> Path:
    return resource_root() / "plugins" / f"{name}.py"


def load_examples() -> dict[str, dict]:
    manifest = resource_root() / "examples.yaml"
    if not manifest.is_file():
        return {}
    with open(manifest, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    return dict(sorted((data.get("examples") or {}).items()))


def list_examples() -> tuple[str, ...]:
    return tuple(load_examples())


def _copy_referenced(src_yaml: Path, dest_dir: Path, keys: tuple[tuple[str, str], ...]) -> None:
    """Copy bare-filename resources a packaged YAML refers to."""
    with open(src_yaml, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    for section_key, subdir in keys:
        section, _, field = section_key.partition(".")
        value = (data.get(section) or {}).get(field) if field else data.get(section)
        if not value or os.path.isabs(value):
            continue
        source = resource_root() / subdir / Path(value).name
        if source.is_file():
            target = dest_dir / value
            target.parent.mkdir(parents=True, exist_ok=True)
            shutil.copyfile(source, target)


def materialize_example(name: str, dest_dir) -> Path:
    """Create a runnable case directory for a packaged example."""
    examples = load_examples()
    if name not in examples:
        raise ParseError(
            f"unknown example {name!r}; available: {', '.join(list_examples()) or 'none'}"
        )
    entry = examples[name]
    vehicle_src = vehicle_path(entry["vehicle"])
    testcase_src = testcase_path(entry["testcase"])
    for path in (vehicle_src, testcase_src):
        if not path.is_file():
            raise ParseError(f"packaged resource missing: {path}")
    dest = Path(dest_dir)
    dest.mkdir(parents=True, exist_ok=True)
    (dest / CASE_MARKER).write_text("", encoding="utf-8")
    shutil.copyfile(vehicle_src, dest / "vehicle.yaml")
    shutil.copyfile(testcase_src, dest / "testcase.yaml")
    _copy_referenced(testcase_src, dest, (("route.cycle_path", "cycles"),))
    _copy_referenced(vehicle_src, dest, (
        ("motor.map_path", "maps"),
        ("battery.external_module_path", "plugins"),
        ("hvac.external_module_path", "plugins"),
    ))
    (dest / "output").mkdir(exist_ok=True)
    (dest / "README.md").write_text(
        f"# Example case: {name}\n\n"
        f"Materialized from the packaged example '{name}' "
        f"(vehicle: {entry['vehicle']}, testcase: {entry['testcase']}).\n",
        encoding="utf-8",
    )
    return dest
