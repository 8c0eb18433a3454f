"""External battery and HVAC model slots over a subprocess line protocol.

A plugin is any executable (``.py`` files run under the current Python
interpreter) speaking newline-delimited JSON on stdin/stdout, one object
per line, UTF-8:

  host -> plugin   {"type": "init", "slot": "battery"|"hvac",
                    "params": {...}, "dt_eff_s": <float>}
  plugin -> host   {"type": "ready", "protocol": 1}
  host -> plugin   {"type": "step", "inputs": {...}}
  plugin -> host   {"type": "result", "outputs": {...}}
  host -> plugin   {"type": "shutdown"}

Requests are strictly serialized; one plugin process serves one engine.
Outputs are validated against the same invariants as builtin models and
any violation aborts the run.
"""

from __future__ import annotations

import json
import math
import os
import queue
import subprocess
import sys
import threading
from dataclasses import dataclass

from .battery import BatteryState
from .errors import (
    HandshakeError,
    InvariantError,
    PluginTimeoutError,
    ProtocolError,
    SpawnError,
    VersionError,
)
from .loads_hvac import CabinState
from .units import MS_PER_S

PROTOCOL_VERSION = 1
DEFAULT_STEP_TIMEOUT_MS = 2000
DEFAULT_INIT_TIMEOUT_MS = 10000
SHUTDOWN_GRACE_S = 2.0


@dataclass
class PluginHandle:
    path: str
    slot: str
    process: subprocess.Popen
    protocol: int
    timeout_ms: int


class PluginClient:
    """Spawns and drives one plugin process in request/response lockstep."""

    def __init__(
        self,
        path: str,
        slot: str,
        params: dict,
        dt_eff_s: float,
        timeout_ms: int = DEFAULT_STEP_TIMEOUT_MS,
        init_timeout_ms: int = DEFAULT_INIT_TIMEOUT_MS,
    ):
        if not os.path.isfile(path):
            raise SpawnError(f"plugin executable not found: {path}")
        argv = [sys.executable, path] if path.endswith(".py") else [path]
        try:
            process = subprocess.Popen(
                argv,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise SpawnError(f"could not start plugin {path}: {exc}") from exc
        self._lines: queue.Queue = queue.Queue()
        self._reader = threading.Thread(
            target=self._pump, args=(process.stdout,), daemon=True
        )
        self._reader.start()
        self.handle = PluginHandle(
            path=path, slot=slot, process=process, protocol=0, timeout_ms=timeout_ms
        )
        try:
            reply = self._request(
                {"type": "init", "slot": slot, "params": params, "dt_eff_s": dt_eff_s},
                timeout_ms=init_timeout_ms,
            )
        except PluginTimeoutError as exc:
            self.shutdown()
            raise HandshakeError(f"plugin {path} sent no ready message") from exc
        except ProtocolError as exc:
            self.shutdown()
            raise HandshakeError(f"plugin {path}: {exc}") from exc
        if reply.get("type") != "ready":
            self.shutdown()
            raise HandshakeError(
                f"plugin {path} replied {reply.get('type')!r} instead of 'ready'"
            )
        if reply.get("protocol") != PROTOCOL_VERSION:
            self.shutdown()
            raise VersionError(
                f"plugin {path} speaks protocol {reply.get('protocol')!r}; "
                f"host requires {PROTOCOL_VERSION}"
            )
        self.handle.protocol = PROTOCOL_VERSION

    def _pump(self, stream) -> None:
        for line in stream:
            self._lines.put(line)
        self._lines.put(None)

    def _request(self, message: dict, timeout_ms: int | None = None) -> dict:
        timeout = (timeout_ms or self.handle.timeout_ms) / MS_PER_S
        try:
            self.handle.process.stdin.write(json.dumps(message) + "\n")
            self.handle.process.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise ProtocolError(f"plugin {self.handle.path} closed its stdin") from exc
        try:
            line = self._lines.get(timeout=timeout)
        except queue.Empty:
            raise PluginTimeoutError(
                f"plugin {self.handle.path} gave no reply within {timeout:.1f} s"
            ) from None
        if line is None:
            raise ProtocolError(f"plugin {self.handle.path} closed its stdout")
        try:
            reply = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ProtocolError(
                f"plugin {self.handle.path} emitted a non-JSON line: {line!r:.120}"
            ) from exc
        if not isinstance(reply, dict):
            raise ProtocolError(f"plugin {self.handle.path} emitted a non-object line")
        return reply

    def step(self, inputs: dict) -> dict:
        reply = self._request({"type": "step", "inputs": inputs})
        if reply.get("type") != "result" or not isinstance(reply.get("outputs"), dict):
            raise ProtocolError(
                f"plugin {self.handle.path} step reply malformed: {reply!r:.120}"
            )
        return reply["outputs"]

    def shutdown(self) -> None:
        process = self.handle.process
        if process.poll() is None:
            try:
                process.stdin.write(json.dumps({"type": "shutdown"}) + "\n")
                process.stdin.flush()
            except (BrokenPipeError, OSError, ValueError):
                pass
            try:
                process.wait(timeout=SHUTDOWN_GRACE_S)
            except subprocess.TimeoutExpired:
                process.terminate()
                try:
                    process.wait(timeout=1.0)
                except subprocess.TimeoutExpired:
                    process.kill()
                    process.wait()
        try:
            process.stdin.close()
        except OSError:
            pass


def _require_finite_number(outputs: dict, key: str, path: str) -> float:
    value = outputs.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvariantError(f"plugin {path} output {key!r} missing or non-numeric")
    value = float(value)
    if not math.isfinite(value):
        raise InvariantError(f"plugin {path} output {key!r} is not finite")
    return value


class ExternalBattery:
    """Battery-slot adapter presenting the builtin battery step contract."""

    def __init__(self, params, initial_soc: float, dt_eff_s: float,
                 timeout_ms: int = DEFAULT_STEP_TIMEOUT_MS):
        self.params = params
        init_params = {
            "v_nom_v": params.v_nom_v,
            "capacity_ah": params.capacity_ah,
            "soc_min": params.soc_min,
            "soc_max": params.soc_max,
            "c_rate_charge_max": params.c_rate_charge_max,
            "c_rate_discharge_max": params.c_rate_discharge_max,
            "initial_soc": initial_soc,
        }
        for key in ("r_int_ohm", "r0_ohm", "r1_ohm", "c1_f", "r2_ohm", "c2_f"):
            value = getattr(params, key)
            if value is not None:
                init_params[key] = value
        self.client = PluginClient(
            params.external_module_path, "battery", init_params, dt_eff_s, timeout_ms
        )
        self.state = BatteryState(soc=initial_soc, v_batt_v=params.v_nom_v)

    def step(self, p_net_w: float, dt_s: float, t_batt_c: float = 25.0):
        outputs = self.client.step(
            {"p_net_w": p_net_w, "t_batt_c": t_batt_c, "dt_s": dt_s}
        )
        path = self.client.handle.path
        soc = _require_finite_number(outputs, "soc", path)
        v = _require_finite_number(outputs, "v_batt_v", path)
        i = _require_finite_number(outputs, "i_batt_a", path)
        if not 0.0 <= soc <= 1.0:
            raise InvariantError(f"plugin {path} returned soc {soc} outside [0, 1]")
        if v <= 0.0:
            raise InvariantError(f"plugin {path} returned non-positive voltage {v}")
        self.state = BatteryState(soc=soc, v_batt_v=v, i_batt_a=i)
        return self.state, 0.0

    def shutdown(self) -> None:
        self.client.shutdown()


class ExternalHvac:
    """HVAC-slot adapter presenting the builtin cabin step contract."""

    def __init__(self, params, initial_cabin_temp_c: float, enabled: bool,
                 dt_eff_s: float, timeout_ms: int = DEFAULT_STEP_TIMEOUT_MS):
        init_params = {"initial_cabin_temp_c": initial_cabin_temp_c, "enabled": enabled}
        for key in (
            "ua_body_w_per_k", "k_v_w_per_k_per_mps", "glass_area_m2",
            "solar_transmittance", "air_massflow_kg_per_s", "occupant_heat_w",
            "cabin_capacitance_j_per_k", "rated_thermal_power_w", "cop_cooling",
            "cop_heating", "setpoint_c", "controller_gain_w_per_k",
        ):
            value = getattr(params, key)
            if value is not None:
                init_params[key] = value
        self.client = PluginClient(
            params.external_module_path, "hvac", init_params, dt_eff_s, timeout_ms
        )
        self.state = CabinState(t_cabin_c=initial_cabin_temp_c)

    def step(self, t_amb_c: float, v_mps: float, g_solar_w_per_m2: float,
             n_occupants: int, dt_s: float) -> CabinState:
        outputs = self.client.step({
            "t_cabin_c": self.state.t_cabin_c,
            "t_amb_c": t_amb_c,
            "speed_mps": v_mps,
            "g_solar": g_solar_w_per_m2,
            "n_occ": n_occupants,
            "dt_s": dt_s,
        })
        path = self.client.handle.path
        q_hvac = _require_finite_number(outputs, "q_hvac_w", path)
        p_hvac = _require_finite_number(outputs, "p_hvac_w", path)
        t_cabin = _require_finite_number(outputs, "t_cabin_c", path)
        if p_hvac < 0.0:
            raise InvariantError(f"plugin {path} returned negative p_hvac_w {p_hvac}")
        self.state = CabinState(t_cabin_c=t_cabin, q_hvac_w=q_hvac, p_hvac_w=p_hvac)
        return self.state

    def shutdown(self) -> None:
        self.client.shutdown()
