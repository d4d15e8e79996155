"""CSV and SVG emission.

Floats are written with ``repr`` so re-parsing a CSV reproduces the
in-memory values exactly, and all output is a pure function of its inputs,
which keeps artifacts byte-identical across repeated runs.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .engine import RunResult, TriggerEvent

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]


def _fmt(v: float) -> str:
    return repr(float(v))


def write_trajectory_csv(path: Path, result: RunResult, record_every: int = 1) -> None:
    """Columns: t, x_1..x_n, err_inf, gamma, trig_1..trig_n."""
    n = result.actions.shape[1]
    header = (
        ["t"]
        + [f"x_{i + 1}" for i in range(n)]
        + ["err_inf", "gamma"]
        + [f"trig_{i + 1}" for i in range(n)]
    )
    last = len(result.times) - 1
    lines = [",".join(header)]
    for k in range(len(result.times)):
        if k % record_every and k != last:
            continue
        row = [_fmt(result.times[k])]
        row += [_fmt(v) for v in result.actions[k]]
        row += [_fmt(result.err_inf[k]), _fmt(result.gamma[k])]
        row += [str(int(v)) for v in result.trig[k]]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_events_csv(path: Path, events: Sequence[TriggerEvent]) -> None:
    """Columns: t, player, rho, xi (player indices are 1-based, xi empty for
    deterministic laws)."""
    lines = ["t,player,rho,xi"]
    for ev in events:
        xi = "" if math.isnan(ev.xi) else _fmt(ev.xi)
        lines.append(f"{_fmt(ev.t)},{ev.player + 1},{_fmt(ev.rho)},{xi}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_summary_csv(path: Path, rows: Sequence[dict]) -> None:
    """Comparison table: player, law, count_mean, max_interval, mean_interval, min_interval."""
    header = ["player", "law", "count_mean", "max_interval", "mean_interval", "min_interval"]
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(
                [
                    str(row["player"]),
                    str(row["law"]),
                    _fmt(row["count_mean"]),
                    "" if row["max_interval"] is None else _fmt(row["max_interval"]),
                    "" if row["mean_interval"] is None else _fmt(row["mean_interval"]),
                    "" if row["min_interval"] is None else _fmt(row["min_interval"]),
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    return list(np.linspace(lo, hi, count))


def line_chart_svg(
    path: Path,
    series: Sequence[tuple[str, np.ndarray, np.ndarray]],
    title: str,
    xlabel: str,
    ylabel: str,
    ylog: bool = False,
    hlines: Sequence[float] = (),
) -> None:
    """Minimal static line chart. ``ylog`` plots log10 of the values and
    drops nonpositive points."""
    width, height = 720.0, 440.0
    ml, mr, mt, mb = 64.0, 16.0, 36.0, 48.0
    pw, ph = width - ml - mr, height - mt - mb

    cleaned = []
    for label, xs, ys in series:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if ylog:
            keep = ys > 0
            xs, ys = xs[keep], np.log10(ys[keep])
        keep = np.isfinite(xs) & np.isfinite(ys)
        cleaned.append((label, xs[keep], ys[keep]))

    href = [math.log10(h) if ylog else h for h in hlines if not ylog or h > 0]
    all_x = np.concatenate([xs for _, xs, _ in cleaned if xs.size] or [np.array([0.0, 1.0])])
    all_y = np.concatenate(
        [ys for _, _, ys in cleaned if ys.size] + [np.array(href)]
        if (any(ys.size for _, _, ys in cleaned) or href)
        else [np.array([0.0, 1.0])]
    )
    x0, x1 = float(all_x.min()), float(all_x.max())
    y0, y1 = float(all_y.min()), float(all_y.max())
    if x1 <= x0:
        x1 = x0 + 1.0
    if y1 <= y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def sx(v: float) -> float:
        return ml + (v - x0) / (x1 - x0) * pw

    def sy(v: float) -> float:
        return mt + (y1 - v) / (y1 - y0) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">{title}</text>',
    ]
    # axes and grid
    for tv in _ticks(x0, x1):
        parts.append(
            f'<line x1="{sx(tv):.2f}" y1="{mt:.2f}" x2="{sx(tv):.2f}" y2="{mt + ph:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{sx(tv):.2f}" y="{mt + ph + 16:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{tv:.4g}</text>'
        )
    for tv in _ticks(y0, y1):
        parts.append(
            f'<line x1="{ml:.2f}" y1="{sy(tv):.2f}" x2="{ml + pw:.2f}" y2="{sy(tv):.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{ml - 6:.2f}" y="{sy(tv) + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tv:.4g}</text>'
        )
    parts.append(
        f'<rect x="{ml:.2f}" y="{mt:.2f}" width="{pw:.2f}" height="{ph:.2f}" '
        f'fill="none" stroke="#333333"/>'
    )
    parts.append(
        f'<text x="{ml + pw / 2:.1f}" y="{height - 10:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>'
    )
    ylab = f"log10({ylabel})" if ylog else ylabel
    parts.append(
        f'<text x="16" y="{mt + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 16 {mt + ph / 2:.1f})">{ylab}</text>'
    )
    for hv in href:
        parts.append(
            f'<line x1="{ml:.2f}" y1="{sy(hv):.2f}" x2="{ml + pw:.2f}" y2="{sy(hv):.2f}" '
            f'stroke="#555555" stroke-width="1" stroke-dasharray="6 4"/>'
        )
    for idx, (label, xs, ys) in enumerate(cleaned):
        if not xs.size:
            continue
        color = PALETTE[idx % len(PALETTE)]
        points = " ".join(f"{sx(a):.3f},{sy(b):.3f}" for a, b in zip(xs, ys))
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        lx, ly = ml + pw - 150, mt + 16 + 16 * idx
        parts.append(
            f'<line x1="{lx:.1f}" y1="{ly - 4:.1f}" x2="{lx + 22:.1f}" y2="{ly - 4:.1f}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 28:.1f}" y="{ly:.1f}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")
