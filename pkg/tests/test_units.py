"""Unit conversions and the single-boundary contract."""

import re
from pathlib import Path

from bevsim import units

SRC = Path(__file__).resolve().parents[1] / "src" / "bevsim"


def test_kmh_roundtrip():
    assert units.kmh_to_mps(36.0) == 10.0
    assert units.mps_to_kmh(units.kmh_to_mps(77.7)) == 77.7


def test_kw_and_rpm():
    assert units.kw_to_w(150.0) == 150000.0
    assert abs(units.rpm_to_radps(60.0) - 6.283185307179586) < 1e-12


def test_capacity_from_energy():
    # 84 kWh at 400 V nominal
    assert abs(units.kwh_to_ah(84.0, 400.0) - 210.0) < 1e-12


def test_distance_and_energy_helpers():
    assert units.m_to_km(23270.0) == 23.27
    assert units.wh_to_kwh(3073.0) == 3.073


FORBIDDEN = re.compile(
    r"(?<![\d.\w])3\.6(?![\d])"          # km/h factor
    r"|(?<![\d.\w])1000(?:\.0)?(?![\d])"  # kW / km factor
    r"|2\.0?\s*\*\s*math\.pi\s*/\s*60"    # rpm factor
    r"|math\.pi\s*/\s*30"
)


def test_conversion_factors_live_only_in_units_module():
    """No module other than units may convert user-facing units."""
    offenders = []
    for path in SRC.rglob("*.py"):
        if path.name == "units.py" or "data" in path.parts:
            continue
        for lineno, line in enumerate(path.read_text().splitlines(), 1):
            code = line.split("#", 1)[0]
            if FORBIDDEN.search(code):
                offenders.append(f"{path.name}:{lineno}: {line.strip()}")
    assert not offenders, "unit factors outside units.py:\n" + "\n".join(offenders)
