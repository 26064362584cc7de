"""Deterministic SVG line chart of magnetization versus time."""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

from .results import ResultTable

WIDTH, HEIGHT = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 64, 150, 24, 48
Y_MIN, Y_MAX = -1.05, 1.05

# column, label, stroke, dash pattern, draw markers
SERIES = (
    ("mz_exact", "exact", "#000000", None, False),
    ("mz_trotter", "Trotter", "#1f4e9c", None, False),
    ("mz_noisy", "noisy", "#000000", "6,4", False),
    ("mz_sampled_mean", "sampled", "#c0392b", None, True),
)


def _f(v: float) -> str:
    return f"{v:.2f}"


def _nice_step(span: float) -> float:
    raw = span / 6
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 5, 10):
        if raw <= m * mag:
            return m * mag
    return 10 * mag


def svg_text(table: ResultTable, title: str | None = None) -> str:
    if not len(table):
        raise ValueError("cannot plot an empty table")
    times = table.column("time_fs")
    t_max = max(times) if max(times) > 0 else 1.0
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(t):
        return LEFT + pw * t / t_max

    def sy(m):
        return TOP + ph * (Y_MAX - m) / (Y_MAX - Y_MIN)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<text x="{_f(LEFT + pw / 2)}" y="16" text-anchor="middle">{escape(title)}</text>')
    out.append(
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#000000"/>'
    )
    for m in (-1.0, -0.5, 0.0, 0.5, 1.0):
        y = _f(sy(m))
        out.append(f'<line x1="{LEFT - 4}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="#000000"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y}" text-anchor="end" dy="4">{m:g}</text>')
    step = _nice_step(t_max)
    k = 0
    while k * step <= t_max * (1 + 1e-9):
        x = _f(sx(k * step))
        out.append(f'<line x1="{x}" y1="{TOP + ph}" x2="{x}" y2="{TOP + ph + 4}" stroke="#000000"/>')
        out.append(f'<text x="{x}" y="{TOP + ph + 18}" text-anchor="middle">{k * step:g}</text>')
        k += 1
    out.append(f'<text x="{_f(LEFT + pw / 2)}" y="{HEIGHT - 10}" text-anchor="middle">time (fs)</text>')
    out.append(
        f'<text x="16" y="{_f(TOP + ph / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_f(TOP + ph / 2)})">&lt;m_z&gt;</text>'
    )
    # zero-magnetization guide
    y0 = _f(sy(0.0))
    out.append(
        f'<line x1="{LEFT}" y1="{y0}" x2="{LEFT + pw}" y2="{y0}" stroke="#000000" '
        f'stroke-dasharray="1,3" class="zero-line"/>'
    )

    legend_y = TOP + 8
    for col, label, color, dash, markers in SERIES:
        pts = [(t, v) for t, v in zip(times, table.column(col)) if v is not None]
        if not pts:
            continue
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        coords = " ".join(f"{_f(sx(t))},{_f(sy(v))}" for t, v in pts)
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"{dash_attr}/>'
        )
        if markers:
            errs = table.column("mz_sampled_stderr")
            for (t, v), e in zip(pts, (e for e, m in zip(errs, table.column(col)) if m is not None)):
                if e:
                    out.append(
                        f'<line x1="{_f(sx(t))}" y1="{_f(sy(v - e))}" x2="{_f(sx(t))}" '
                        f'y2="{_f(sy(v + e))}" stroke="{color}"/>'
                    )
                out.append(f'<circle cx="{_f(sx(t))}" cy="{_f(sy(v))}" r="2.5" fill="{color}"/>')
        lx = LEFT + pw + 12
        out.append(
            f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 24}" y2="{legend_y}" stroke="{color}" '
            f'stroke-width="1.5"{dash_attr}/>'
        )
        out.append(f'<text x="{lx + 30}" y="{legend_y + 4}">{label}</text>')
        legend_y += 18
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_plot(table: ResultTable, path: str | Path, title: str | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(svg_text(table, title))
    return path
