"""Static SVG plots for the case package.

Two standard figures: motion with SoC, and power channels with coupled
temperatures. Rendering is deterministic: fixed hash salt, no embedded
date, and a fixed downsampling stride, so identical runs produce
byte-identical SVG files. matplotlib is imported lazily to keep CLI
startup light on paths that never plot.
"""

from __future__ import annotations

from pathlib import Path

from .units import W_PER_KW

MAX_PLOT_POINTS = 2000
_SVG_RC = {"svg.hashsalt": "bevsim", "figure.dpi": 100}


def _series(rows, columns, names):
    idx = [columns.index(n) for n in names]
    stride = max(1, len(rows) // MAX_PLOT_POINTS)
    sampled = rows[::stride]
    if sampled[-1] is not rows[-1]:
        sampled = list(sampled) + [rows[-1]]
    return [[row[i] for row in sampled] for i in idx]


def render_plots(rows, columns, out_dir) -> list[Path]:
    """Write motion_soc.svg and power_thermal.svg under out_dir."""
    if not rows:
        raise ValueError("cannot plot an empty timeseries")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    def save(fig, path: Path) -> None:
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

    out_dir = Path(out_dir)
    columns = list(columns)
    written = []
    with plt.rc_context(_SVG_RC):
        t, v, soc = _series(rows, columns, ["time_s", "speed_mps", "soc"])
        fig, ax_speed = plt.subplots(figsize=(8, 4))
        ax_speed.plot(t, v, color="tab:blue", linewidth=0.9, label="speed")
        ax_speed.set_xlabel("time [s]")
        ax_speed.set_ylabel("speed [m/s]", color="tab:blue")
        ax_soc = ax_speed.twinx()
        ax_soc.plot(t, soc, color="tab:red", linewidth=1.1, label="SoC")
        ax_soc.set_ylabel("SoC [-]", color="tab:red")
        ax_speed.set_title("Motion and SoC")
        fig.tight_layout()
        path = out_dir / "motion_soc.svg"
        save(fig, path)
        written.append(path)

        t, p_drive, p_regen, p_hvac, p_net, t_b, t_m, t_c, t_cab = _series(
            rows,
            columns,
            [
                "time_s", "p_drive_dc_w", "p_regen_w", "p_hvac_w", "p_batt_net_w",
                "t_batt_c", "t_motor_c", "t_coolant_c", "t_cabin_c",
            ],
        )
        fig, (ax_p, ax_t) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
        ax_p.plot(t, [x / W_PER_KW for x in p_drive], linewidth=0.8, label="traction DC")
        ax_p.plot(t, [-x / W_PER_KW for x in p_regen], linewidth=0.8, label="regen")
        ax_p.plot(t, [x / W_PER_KW for x in p_hvac], linewidth=0.8, label="HVAC")
        ax_p.plot(t, [x / W_PER_KW for x in p_net], linewidth=0.8, label="battery net")
        ax_p.set_ylabel("power [kW]")
        ax_p.legend(loc="upper right", fontsize=8)
        ax_t.plot(t, t_b, linewidth=0.9, label="battery")
        ax_t.plot(t, t_m, linewidth=0.9, label="motor")
        ax_t.plot(t, t_c, linewidth=0.9, label="coolant")
        ax_t.plot(t, t_cab, linewidth=0.9, label="cabin")
        ax_t.set_xlabel("time [s]")
        ax_t.set_ylabel("temperature [degC]")
        ax_t.legend(loc="upper right", fontsize=8)
        ax_p.set_title("Power and thermal response")
        fig.tight_layout()
        path = out_dir / "power_thermal.svg"
        save(fig, path)
        written.append(path)
    return written
