"""Model registry resolution."""

import pytest

from bevsim import registry
from bevsim.battery import Ecm2RcBattery, RintBattery
from bevsim.errors import UnknownModelError


def test_builtin_battery_keys_resolve():
    assert registry.resolve("battery", "rint") is RintBattery
    assert registry.resolve("battery", "ecm_2rc") is Ecm2RcBattery


def test_unknown_key_lists_available():
    with pytest.raises(UnknownModelError) as err:
        registry.resolve("battery", "nonexistent")
    message = str(err.value)
    assert "rint" in message and "ecm_2rc" in message and "external" in message


def test_unknown_slot():
    with pytest.raises(UnknownModelError):
        registry.resolve("gearbox", "anything")


def test_available_is_sorted():
    assert registry.available("motor") == ("analytical", "efficiency_map")
    assert registry.available("hvac") == ("external", "lumped_cabin")
