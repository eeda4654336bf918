"""Hand-written SVG line charts of peaks per stage and of orientation
profiles. No rendering dependency; every plotted value is also stored
verbatim in a ``data-values`` attribute so charts can be checked
against the CSV they came from."""

from __future__ import annotations

import logging
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .experiments import STAGE_LABELS, RunRecord
from .orientation import orientation_grid

log = logging.getLogger(__name__)

WIDTH, HEIGHT = 480, 360
MARGIN = 60
FAMILIES = {
    "thin": lambda sid: sid.startswith("thin_"),
    "wide": lambda sid: sid.startswith("wide_"),
    "white": lambda sid: sid.startswith("white_"),
}


def _style(sid: str) -> dict:
    """Dotted for target 31 / gray-on-white, solid for target 72 /
    gray-on-black; square markers for inducer 12, diamonds for 102."""
    if sid.startswith("white_"):
        dash = "4,4" if sid == "white_on_white" else ""
        marker = "square" if sid == "white_on_white" else "diamond"
        return {"dash": dash, "marker": marker}
    _, target, inducer = sid.split("_")
    return {"dash": "4,4" if target == "31" else "",
            "marker": "square" if inducer == "12" else "diamond"}


class _Axes:
    def __init__(self, xs, ys):
        self.x0, self.x1 = min(xs), max(xs)
        lo, hi = float(min(ys)), float(max(ys))
        if hi == lo:
            lo, hi = lo - 1.0, hi + 1.0
        pad = 0.05 * (hi - lo)
        self.y0, self.y1 = lo - pad, hi + pad

    def px(self, x) -> float:
        span = (self.x1 - self.x0) or 1.0
        return MARGIN + (x - self.x0) / span * (WIDTH - 2 * MARGIN)

    def py(self, y) -> float:
        return HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * MARGIN)


def _marker(kind: str, x: float, y: float) -> str:
    if kind == "square":
        return f'<rect x="{x - 4:.2f}" y="{y - 4:.2f}" width="8" height="8" fill="black"/>'
    if kind == "diamond":
        pts = f"{x:.2f},{y - 5:.2f} {x + 5:.2f},{y:.2f} {x:.2f},{y + 5:.2f} {x - 5:.2f},{y:.2f}"
        return f'<polygon points="{pts}" fill="black"/>'
    return ""


def _svg(title: str, axes: _Axes, xticks, ylabel: str, series) -> str:
    """``series``: list of (label, xs, ys, style)."""
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>']
    bottom, left = HEIGHT - MARGIN, MARGIN
    out.append(f'<line x1="{left}" y1="{bottom}" x2="{WIDTH - MARGIN}" y2="{bottom}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{MARGIN}" x2="{left}" y2="{bottom}" stroke="black"/>')
    for x, label in xticks:
        out.append(f'<text x="{axes.px(x):.2f}" y="{bottom + 18}" text-anchor="middle" '
                   f'font-size="11">{escape(label)}</text>')
    for y in np.linspace(axes.y0, axes.y1, 5):
        out.append(f'<text x="{left - 6}" y="{axes.py(y) + 4:.2f}" text-anchor="end" '
                   f'font-size="10">{y:.3g}</text>')
    out.append(f'<text x="14" y="{HEIGHT / 2}" font-size="11" transform="rotate(-90 14 {HEIGHT / 2})" '
               f'text-anchor="middle">{escape(ylabel)}</text>')
    for k, (label, xs, ys, style) in enumerate(series):
        pts = " ".join(f"{axes.px(x):.2f},{axes.py(y):.2f}" for x, y in zip(xs, ys))
        dash = f' stroke-dasharray="{style["dash"]}"' if style.get("dash") else ""
        values = " ".join(repr(float(y)) for y in ys)
        out.append(f'<polyline points="{pts}" fill="none" stroke="black"{dash} '
                   f'data-label="{escape(label)}" data-values="{values}"/>')
        for x, y in zip(xs, ys):
            out.append(_marker(style.get("marker", ""), axes.px(x), axes.py(y)))
        ly = MARGIN + 14 * k
        out.append(f'<line x1="{WIDTH - MARGIN - 110}" y1="{ly}" x2="{WIDTH - MARGIN - 85}" y2="{ly}" '
                   f'stroke="black"{dash}/>')
        out.append(_marker(style.get("marker", ""), WIDTH - MARGIN - 97.5, ly))
        out.append(f'<text x="{WIDTH - MARGIN - 80}" y="{ly + 4}" font-size="10">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_predictions(record: RunRecord, out_dir) -> list:
    """One chart of peak versus stage per stimulus family present in the
    record. Returns the written paths."""
    stages = record.stages
    if not stages or not record.predictions:
        log.warning("no stages in record; no prediction charts written")
        return []
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    condition = record.predictions[0].condition
    paths = []
    for family, member in FAMILIES.items():
        sids = [s for s in record.stimuli if member(s)]
        if not sids:
            continue
        xs = list(range(len(stages)))
        series = []
        for sid in sids:
            have = [(x, record.peak(sid, st)) for x, st in zip(xs, stages)
                    if any(r.stimulus_id == sid and r.stage == st for r in record.predictions)]
            series.append((sid, [x for x, _ in have], [y for _, y in have], _style(sid)))
        axes = _Axes(xs + [xs[0] - 0.25, xs[-1] + 0.25], [y for s in series for y in s[2]])
        ticks = [(x, STAGE_LABELS.get(st, st)) for x, st in zip(xs, stages)]
        svg = _svg(f"condition {condition}: {family}", axes, ticks, "predicted response", series)
        path = out_dir / f"peaks_{condition or 'run'}_{family}.svg"
        path.write_text(svg)
        paths.append(path)
    return paths


def plot_orientation_profiles(record: RunRecord, out_dir) -> list:
    """Per stimulus: the no-feedback profile (taken from the first stage's
    unmodulated sum) and the modulated profile of every stage."""
    if not record.predictions:
        log.warning("empty record; no profile charts written")
        return []
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    condition = record.predictions[0].condition
    paths = []
    for sid in record.stimuli:
        rows = [record.get(sid, st) for st in record.stages
                if any(r.stimulus_id == sid and r.stage == st for r in record.predictions)]
        theta = orientation_grid(len(rows[0].A))
        series = []
        if rows[0].unmodulated is not None:
            series.append(("no feedback", theta, rows[0].unmodulated, {"dash": ""}))
        for k, r in enumerate(rows):
            dash = "2,3" if k == 0 else "6,3"
            series.append((STAGE_LABELS.get(r.stage, r.stage), theta, r.A, {"dash": dash}))
        axes = _Axes(list(theta), [y for s in series for y in s[2]])
        ticks = [(t, f"{int(t)}") for t in theta[::3]]
        svg = _svg(f"condition {condition}: {sid}", axes, ticks, "A(theta)", series)
        path = out_dir / f"profile_{condition or 'run'}_{sid}.svg"
        path.write_text(svg)
        paths.append(path)
    return paths
