"""Model registry: maps (slot, key) selection strings to runtime factories.

Slots are the swappable subsystem families. Builtin keys resolve to the
in-package implementations; the "external" key resolves to the subprocess
plugin adapter for the battery and HVAC slots.
"""

from .errors import UnknownModelError


def _battery_rint():
    from .battery import RintBattery
    return RintBattery


def _battery_ecm_2rc():
    from .battery import Ecm2RcBattery
    return Ecm2RcBattery


def _battery_external():
    from .plugins import ExternalBattery
    return ExternalBattery


def _motor_analytical():
    from .driveline import scalar_efficiency_model
    return scalar_efficiency_model


def _motor_efficiency_map():
    from .driveline import map_efficiency_model
    return map_efficiency_model


def _hvac_lumped():
    from .loads_hvac import LumpedCabinHvac
    return LumpedCabinHvac


def _hvac_external():
    from .plugins import ExternalHvac
    return ExternalHvac


_SLOTS = {
    "battery": {
        "rint": _battery_rint,
        "ecm_2rc": _battery_ecm_2rc,
        "external": _battery_external,
    },
    "motor": {
        "analytical": _motor_analytical,
        "efficiency_map": _motor_efficiency_map,
    },
    "hvac": {
        "lumped_cabin": _hvac_lumped,
        "external": _hvac_external,
    },
}


def available(slot: str) -> tuple[str, ...]:
    if slot not in _SLOTS:
        raise UnknownModelError("slot", slot, _SLOTS)
    return tuple(sorted(_SLOTS[slot]))


def ensure_known(slot: str, key: str) -> None:
    if slot not in _SLOTS:
        raise UnknownModelError("slot", slot, _SLOTS)
    if key not in _SLOTS[slot]:
        raise UnknownModelError(slot, key, _SLOTS[slot])


def resolve(slot: str, key: str):
    """Return the factory registered for a model selection."""
    ensure_known(slot, key)
    return _SLOTS[slot][key]()
