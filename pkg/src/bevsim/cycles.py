"""Drive cycles: CSV speed traces and parametric segment routes.

A cycle is an ordered list of (time_s, speed_mps) samples with strictly
increasing time starting at zero and non-negative speed. Distance is the
trapezoidal integral of speed over time, accumulated in sample order so
that the engine's kinematic integration reproduces it exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from . import units
from .config import SegmentSpec
from .errors import FormatError, MonotonicityError, NegativeSpeedError, SchemaError

CSV_HEADER = ("time_s", "speed_kmh")


@dataclass(frozen=True)
class DriveCycle:
    name: str
    times_s: tuple[float, ...]
    speeds_mps: tuple[float, ...]

    @property
    def duration_s(self) -> float:
        return self.times_s[-1]

    @property
    def distance_m(self) -> float:
        return _trapezoid_distance(self.times_s, self.speeds_mps)

    def __len__(self) -> int:
        return len(self.times_s)


def _trapezoid_distance(times, speeds) -> float:
    total = 0.0
    for i in range(1, len(times)):
        total += 0.5 * (speeds[i - 1] + speeds[i]) * (times[i] - times[i - 1])
    return total


def _validate_samples(times, speeds, name: str) -> DriveCycle:
    if len(times) < 2:
        raise FormatError(f"{name}: a cycle needs at least two samples")
    if times[0] != 0.0:
        raise MonotonicityError(f"{name}: time must start at 0, got {times[0]}")
    for i in range(1, len(times)):
        if times[i] <= times[i - 1]:
            raise MonotonicityError(
                f"{name}: time must be strictly increasing at row {i} "
                f"({times[i - 1]} -> {times[i]})"
            )
    for i, v in enumerate(speeds):
        if v < 0.0:
            raise NegativeSpeedError(f"{name}: negative speed {v} at row {i}")
    return DriveCycle(name=name, times_s=tuple(times), speeds_mps=tuple(speeds))


def load_cycle_csv(path) -> DriveCycle:
    """Load a speed trace CSV with the exact header ``time_s,speed_kmh``."""
    path = Path(path)
    if not path.is_file():
        raise FormatError(f"cycle file not found: {path}")
    times: list[float] = []
    speeds: list[float] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(f"{path}: empty file") from None
        if tuple(h.strip() for h in header) != CSV_HEADER:
            raise FormatError(
                f"{path}: header must be exactly 'time_s,speed_kmh', "
                f"got {','.join(header)!r}"
            )
        for row_index, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise FormatError(f"{path}: line {row_index}: expected 2 columns")
            try:
                t = float(row[0])
                v_kmh = float(row[1])
            except ValueError:
                raise FormatError(
                    f"{path}: line {row_index}: non-numeric value"
                ) from None
            times.append(t)
            speeds.append(units.kmh_to_mps(v_kmh))
    return _validate_samples(times, speeds, path.stem)


def build_parametric(segments, dt_s: float, name: str = "parametric") -> DriveCycle:
    """Piecewise-linear speed trace from accel/cruise/decel/idle segments.

    Speed is continuous at joins: accel ramps up to the target, decel ramps
    down to it, cruise holds the current speed, and idle requires the
    vehicle to already be stopped.
    """
    if dt_s <= 0.0:
        raise SchemaError("sim.dt_s", "must be positive")
    if not segments:
        raise SchemaError("route.segments", "expected a non-empty list of segments")
    knots_t = [0.0]
    knots_v = [0.0]
    for i, seg in enumerate(segments):
        if not isinstance(seg, SegmentSpec):
            seg = SegmentSpec(**seg)
        at = f"route.segments[{i}]"
        if seg.kind not in ("accel", "cruise", "decel", "idle"):
            raise SchemaError(at, f"unknown segment kind {seg.kind!r}")
        if seg.duration_s <= 0.0:
            raise SchemaError(at, "duration_s must be positive")
        current = knots_v[-1]
        if seg.kind == "accel":
            if seg.target_speed_mps is None or seg.target_speed_mps < current:
                raise SchemaError(at, "accel target must be >= the current speed")
            end_speed = seg.target_speed_mps
        elif seg.kind == "decel":
            if seg.target_speed_mps is None or seg.target_speed_mps > current:
                raise SchemaError(at, "decel target must be <= the current speed")
            end_speed = seg.target_speed_mps
        elif seg.kind == "cruise":
            end_speed = current
        else:  # idle
            if current != 0.0:
                raise SchemaError(at, "idle requires the previous segment to end at 0")
            end_speed = 0.0
        if seg.target_speed_mps is not None and seg.target_speed_mps < 0.0:
            raise SchemaError(at, "target_speed_mps must be non-negative")
        knots_t.append(knots_t[-1] + seg.duration_s)
        knots_v.append(end_speed)

    total = knots_t[-1]
    times: list[float] = []
    speeds: list[float] = []
    n = int(total / dt_s)
    for k in range(n + 1):
        t = k * dt_s
        if t > total:
            break
        times.append(t)
        speeds.append(_interp_knots(knots_t, knots_v, t))
    if times[-1] < total - 1e-9:
        times.append(total)
        speeds.append(knots_v[-1])
    else:
        times[-1] = total
        speeds[-1] = knots_v[-1]
    return _validate_samples(times, speeds, name)


def _lerp(t: float, t0: float, t1: float, v0: float, v1: float) -> float:
    # Convex-combination form: stays non-negative for non-negative samples.
    frac = (t - t0) / (t1 - t0)
    frac = min(max(frac, 0.0), 1.0)
    return v0 * (1.0 - frac) + v1 * frac


def _interp_knots(knots_t, knots_v, t: float) -> float:
    for j in range(len(knots_t) - 1):
        if knots_t[j] <= t <= knots_t[j + 1]:
            t0, t1 = knots_t[j], knots_t[j + 1]
            if t1 == t0:
                return knots_v[j + 1]
            return _lerp(t, t0, t1, knots_v[j], knots_v[j + 1])
    return knots_v[-1]


def resample(cycle: DriveCycle, dt_s: float) -> DriveCycle:
    """Linear interpolation of the cycle onto a uniform dt grid.

    Endpoints are preserved exactly; when the duration is not a multiple of
    dt_s the final sample closes the cycle with a shorter last interval.
    """
    if dt_s <= 0.0:
        raise SchemaError("sim.dt_s", "must be positive")
    duration = cycle.duration_s
    n = round(duration / dt_s)
    if abs(n * dt_s - duration) > 1e-9 * max(1.0, duration):
        n = int(duration / dt_s)
    times: list[float] = []
    speeds: list[float] = []
    src_t = cycle.times_s
    src_v = cycle.speeds_mps
    j = 0
    last = len(src_t) - 1
    for k in range(n + 1):
        t = k * dt_s
        if t > duration:
            t = duration
        while j < last and src_t[j + 1] < t:
            j += 1
        if t <= src_t[0]:
            v = src_v[0]
        elif t >= src_t[last]:
            v = src_v[last]
        else:
            v = _lerp(t, src_t[j], src_t[j + 1], src_v[j], src_v[j + 1])
        times.append(t)
        speeds.append(v)
    if times[-1] < duration - 1e-9:
        times.append(duration)
        speeds.append(src_v[last])
    else:
        times[-1] = duration
        speeds[-1] = src_v[last]
    return _validate_samples(times, speeds, cycle.name)


def write_cycle_csv(cycle: DriveCycle, path) -> None:
    """Inverse of load_cycle_csv, used by packaging and resource tooling."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for t, v in zip(cycle.times_s, cycle.speeds_mps):
            writer.writerow([f"{t:.10g}", f"{units.mps_to_kmh(v):.10g}"])
