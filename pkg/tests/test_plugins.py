"""External model slots: protocol, failure modes, builtin fidelity."""

from pathlib import Path

import pytest

from bevsim import resources
from bevsim.errors import (
    HandshakeError,
    InvariantError,
    PluginTimeoutError,
    ProtocolError,
    SpawnError,
    VersionError,
)
from bevsim.plugins import PluginClient

from conftest import column_index, constant_cycle, run_configs

FIXTURES = Path(__file__).parent / "fixtures"
RINT_PLUGIN = str(resources.plugin_path("rint_battery_plugin"))
HVAC_PLUGIN = str(resources.plugin_path("lumped_hvac_plugin"))

BATTERY_PARAMS = {
    "v_nom_v": 360.0,
    "capacity_ah": 150.0,
    "r_int_ohm": 0.05,
    "soc_min": 0.05,
    "soc_max": 0.98,
    "c_rate_charge_max": 2.0,
    "c_rate_discharge_max": 3.0,
    "initial_soc": 0.9,
}


def test_shipped_plugin_handshakes():
    client = PluginClient(RINT_PLUGIN, "battery", BATTERY_PARAMS, 0.5)
    try:
        assert client.handle.protocol == 1
    finally:
        client.shutdown()


def test_nonexistent_path_is_spawn_error():
    with pytest.raises(SpawnError):
        PluginClient("/nonexistent/plugin.py", "battery", {}, 0.5)


def test_unsupported_protocol_is_version_error():
    with pytest.raises(VersionError, match="99"):
        PluginClient(str(FIXTURES / "bad_protocol_plugin.py"), "battery", {}, 0.5)


def test_missing_ready_is_handshake_error():
    with pytest.raises(HandshakeError):
        PluginClient(str(FIXTURES / "no_ready_plugin.py"), "battery", {}, 0.5)


def test_step_timeout():
    client = PluginClient(
        str(FIXTURES / "hang_plugin.py"), "battery", {}, 0.5, timeout_ms=300
    )
    try:
        with pytest.raises(PluginTimeoutError):
            client.step({"p_net_w": 0.0, "t_batt_c": 25.0, "dt_s": 0.5})
    finally:
        client.shutdown()


def test_malformed_line_is_protocol_error():
    client = PluginClient(str(FIXTURES / "malformed_plugin.py"), "battery", {}, 0.5)
    try:
        with pytest.raises(ProtocolError, match="non-JSON"):
            client.step({"p_net_w": 0.0, "t_batt_c": 25.0, "dt_s": 0.5})
    finally:
        client.shutdown()


def test_shutdown_clean_exit():
    client = PluginClient(RINT_PLUGIN, "battery", BATTERY_PARAMS, 0.5)
    client.shutdown()
    assert client.handle.process.returncode == 0


def test_shutdown_already_dead_process():
    client = PluginClient(RINT_PLUGIN, "battery", BATTERY_PARAMS, 0.5)
    client.handle.process.kill()
    client.handle.process.wait()
    client.shutdown()  # must not raise


def test_shutdown_force_kills_unresponsive(monkeypatch):
    import bevsim.plugins as plugins_mod

    client = PluginClient(str(FIXTURES / "hang_plugin.py"), "battery", {}, 0.5)
    # drive it into the hang state so the shutdown message is never read
    client.handle.process.stdin.write('{"type": "step", "inputs": {}}\n')
    client.handle.process.stdin.flush()
    monkeypatch.setattr(plugins_mod, "SHUTDOWN_GRACE_S", 0.2)
    client.shutdown()
    assert client.handle.process.poll() is not None


# -- engine integration --------------------------------------------------------

def external_battery_vehicle(d, path=RINT_PLUGIN):
    # r_int_ohm stays in the section; it is forwarded to the plugin process.
    d["battery"]["model"] = "external"
    d["battery"]["external_module_path"] = path


def test_external_battery_matches_builtin(make_vehicle, make_testcase):
    builtin_vehicle = make_vehicle()
    plugin_vehicle = make_vehicle(external_battery_vehicle)
    testcase = make_testcase()
    r_builtin = run_configs(builtin_vehicle, testcase)
    r_plugin = run_configs(plugin_vehicle, testcase)
    idx = column_index(r_builtin)
    soc, volt = idx["soc"], idx["v_batt_v"]
    for a, b in zip(r_builtin.rows, r_plugin.rows):
        assert abs(a[soc] - b[soc]) <= 1e-6
        assert abs(a[volt] - b[volt]) <= 1e-6


def test_external_hvac_matches_builtin(make_vehicle, make_testcase):
    builtin_vehicle = make_vehicle()

    def mutate(d):
        d["hvac"]["model"] = "external"
        d["hvac"]["external_module_path"] = HVAC_PLUGIN

    plugin_vehicle = make_vehicle(mutate)
    testcase = make_testcase(lambda d: d.update(solar_irradiance_w_per_m2=500.0))
    r_builtin = run_configs(builtin_vehicle, testcase)
    r_plugin = run_configs(plugin_vehicle, testcase)
    idx = column_index(r_builtin)
    cabin, p_hvac = idx["t_cabin_c"], idx["p_hvac_w"]
    for a, b in zip(r_builtin.rows, r_plugin.rows):
        assert abs(a[cabin] - b[cabin]) <= 1e-9
        assert abs(a[p_hvac] - b[p_hvac]) <= 1e-9


def test_dead_plugin_path_fails_at_build(make_vehicle, make_testcase):
    vehicle = make_vehicle(
        lambda d: external_battery_vehicle(d, "/nonexistent/plugin.py")
    )
    from bevsim.engine import build_engine

    with pytest.raises(SpawnError):
        build_engine(vehicle, make_testcase(), constant_cycle(10.0, 30.0))


def test_invariant_violation_aborts_run_with_step_index(make_vehicle, make_testcase):
    vehicle = make_vehicle(
        lambda d: external_battery_vehicle(d, str(FIXTURES / "bad_soc_plugin.py"))
    )
    with pytest.raises(InvariantError, match="step 0"):
        run_configs(vehicle, make_testcase(), constant_cycle(10.0, 30.0))


def test_hanging_plugin_aborts_run(make_vehicle, make_testcase):
    def mutate(d):
        external_battery_vehicle(d, str(FIXTURES / "hang_plugin.py"))

    vehicle = make_vehicle(mutate)
    from bevsim.engine import build_engine

    engine = build_engine(vehicle, make_testcase(), constant_cycle(10.0, 30.0))
    engine.battery.client.handle.timeout_ms = 300
    with pytest.raises(PluginTimeoutError, match="step 0"):
        engine.run()
