"""Experiment runs, CSV/SVG emission and result summaries."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field, replace
from html import escape
from pathlib import Path

import numpy as np

from .configfile import load_config
from .errors import ConfigError
from .geometry import REFERENCE_POWER_W, DeviceConfig, Version, build_preset
from .simulation import ControllerConfig, ExerciseRecord, TrajectorySpec, simulate_exercise
from .statics import LoadCase
from .workspace import WorkspaceGrid

OUT_ENV = "CADEL_SIM_OUT"
DEFAULT_OUT = "cadel_out"
DEFAULT_LOADS = (0.5, 1.0, 1.5, 2.5)


@dataclass
class ExperimentSpec:
    device: DeviceConfig
    loads: tuple[float, ...] = DEFAULT_LOADS
    trajectory: TrajectorySpec = field(default_factory=TrajectorySpec)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    out_dir: Path = Path(DEFAULT_OUT)
    base_load: LoadCase = field(default_factory=LoadCase)

    def __post_init__(self):
        if not self.loads:
            raise ValueError("load list must be nonempty")
        if any(m < 0 for m in self.loads):
            raise ValueError("payload masses must be >= 0")


def resolve_out_dir(flag: str | None) -> Path:
    """--out wins, then $CADEL_SIM_OUT, then ./cadel_out."""
    return Path(flag or os.environ.get(OUT_ENV) or DEFAULT_OUT)


def resolve_device(preset: str | None = None, config_path: str | None = None) -> DeviceConfig:
    if config_path:
        return load_config(config_path)
    try:
        return build_preset(preset or Version.LCADEL)
    except ValueError:
        choices = ", ".join(v.value for v in Version)
        raise ConfigError(f"unknown preset {preset!r} (choose from {choices})") from None


def format_mass(mass: float) -> str:
    text = f"{mass:.6f}".rstrip("0")
    return text + "0" if text.endswith(".") else text


def record_filename(device: str, mass: float) -> str:
    return f"{device}_{format_mass(mass)}kg.csv"


def csv_header(cable_count: int) -> list[str]:
    idx = range(1, cable_count + 1)
    return (
        ["t_s", "alpha_des_deg", "alpha_deg", "beta_deg"]
        + [f"l{i}_m" for i in idx]
        + [f"T{i}_N" for i in idx]
        + [f"tau{i}_Nm" for i in idx]
        + ["P_W"]
    )


def write_record_csv(record: ExerciseRecord, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = np.column_stack(
        [
            record.time,
            np.degrees(record.alpha_desired),
            np.degrees(record.alpha),
            np.degrees(record.beta),
            record.lengths,
            record.tensions,
            record.motor_torques,
            record.power,
        ]
    )
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(csv_header(record.cable_count))
        writer.writerows([f"{v:.10g}" for v in row] for row in rows)
    return path


def write_workspace_csv(grid: WorkspaceGrid, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha_deg", "beta_deg", "feasible", "total_tension_N"])
        for i, a in enumerate(grid.alpha):
            for j, b in enumerate(grid.beta):
                total = grid.total_tension[i, j]
                writer.writerow(
                    [
                        f"{math.degrees(a):.10g}",
                        f"{math.degrees(b):.10g}",
                        int(grid.feasible[i, j]),
                        "" if math.isnan(total) else f"{total:.10g}",
                    ]
                )
    return path


def write_torque_curve_csv(alphas: np.ndarray, torque: np.ndarray, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha_deg", "tau1_Nm"])
        for a, tau in zip(alphas, torque):
            writer.writerow([f"{math.degrees(a):.10g}", "" if math.isnan(tau) else f"{tau:.10g}"])
    return path


def write_svg_plot(
    path: str | Path,
    series: list[tuple[str, np.ndarray, np.ndarray]],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    width: int = 640,
    height: int = 400,
) -> Path:
    """Minimal standalone SVG line plot; NaN samples break the polyline."""
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    margin_l, margin_r, margin_t, margin_b = 70, 130, 40, 50
    xs = np.concatenate([np.asarray(x, float) for _, x, _ in series])
    ys = np.concatenate([np.asarray(y, float) for _, _, y in series])
    xs, ys = xs[np.isfinite(xs)], ys[np.isfinite(ys)]
    x0, x1 = (float(xs.min()), float(xs.max())) if xs.size else (0.0, 1.0)
    y0, y1 = (float(ys.min()), float(ys.max())) if ys.size else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = width - margin_l - margin_r, height - margin_t - margin_b

    def sx(x):
        return margin_l + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return margin_t + (y1 - y) / (y1 - y0) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin_l}" y="{margin_t}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{margin_l + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">{escape(xlabel)}</text>',
        f'<text x="15" y="{margin_t + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {margin_t + ph / 2:.1f})">{escape(ylabel)}</text>',
    ]
    for k in range(5):
        xv = x0 + k * (x1 - x0) / 4
        yv = y0 + k * (y1 - y0) / 4
        parts.append(f'<text x="{sx(xv):.1f}" y="{margin_t + ph + 16}" text-anchor="middle">{xv:.3g}</text>')
        parts.append(f'<text x="{margin_l - 6}" y="{sy(yv) + 4:.1f}" text-anchor="end">{yv:.3g}</text>')
    for n, (label, x, y) in enumerate(series):
        color = colors[n % len(colors)]
        d, pen_down = [], False
        for xv, yv in zip(np.asarray(x, float), np.asarray(y, float)):
            if not (math.isfinite(xv) and math.isfinite(yv)):
                pen_down = False
                continue
            d.append(f"{'L' if pen_down else 'M'}{sx(xv):.2f},{sy(yv):.2f}")
            pen_down = True
        parts.append(f'<path d="{" ".join(d)}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = margin_t + 15 + 18 * n
        parts.append(
            f'<line x1="{width - margin_r + 10}" y1="{ly}" x2="{width - margin_r + 30}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{width - margin_r + 35}" y="{ly + 4}">{escape(label)}</text>')
    parts.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(parts) + "\n")
    return path


def run_sweep(spec: ExperimentSpec) -> list[tuple[ExerciseRecord, Path]]:
    """Simulate every payload in ``spec.loads`` and write one CSV per run."""
    out = []
    for mass in spec.loads:
        load = replace(spec.base_load, payload_mass=float(mass))
        record = simulate_exercise(spec.device, load, spec.trajectory, spec.controller)
        path = write_record_csv(record, spec.out_dir / record_filename(spec.device.name, mass))
        out.append((record, path))
    return out


@dataclass
class SummaryRow:
    payload_mass: float
    average_power: float
    peak_right_torque: float
    rms_error_deg: float


@dataclass
class Summary:
    device: str
    rows: list[SummaryRow]
    reference_power: float | None

    def format(self) -> str:
        lines = [
            f"device: {self.device}",
            f"{'load_kg':>8} {'avg_power_W':>12} {'peak_tau1_Nm':>13} {'rms_err_deg':>12}",
        ]
        for r in self.rows:
            lines.append(
                f"{r.payload_mass:>8.2f} {r.average_power:>12.4f} "
                f"{r.peak_right_torque:>13.4f} {r.rms_error_deg:>12.4f}"
            )
        if self.reference_power is None:
            lines.append("reference power: n/a (custom device)")
        else:
            mean_p = float(np.mean([r.average_power for r in self.rows]))
            lines.append(
                f"reference power ({self.device}): {self.reference_power:.2f} W; "
                f"simulated mean {mean_p:.3f} W (ratio {mean_p / self.reference_power:.2f})"
            )
        return "\n".join(lines)


def reference_power(device: str) -> float | None:
    try:
        return REFERENCE_POWER_W[Version(device)]
    except ValueError:
        return None


def summarize(records: list[ExerciseRecord]) -> Summary:
    if not records:
        raise ValueError("summarize needs at least one record")
    rows = [
        SummaryRow(
            payload_mass=r.payload_mass,
            average_power=r.average_power,
            peak_right_torque=r.peak_right_torque,
            rms_error_deg=math.degrees(r.rms_tracking_error),
        )
        for r in records
    ]
    device = records[0].device
    return Summary(device=device, rows=rows, reference_power=reference_power(device))
