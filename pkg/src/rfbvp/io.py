"""File formats: solution/profile/weights CSV, JSON run manifests, SVG plots.

CSV numerals use 17 significant digits so every float64 round-trips exactly.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from . import __version__
from .errors import ProfileError
from .fit import ObservedProfile
from .kernel import WeightTable


def fmt(value: float) -> str:
    return "%.17g" % value


def _write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")


# -- solution CSV ------------------------------------------------------------


def solution_csv(x, T) -> str:
    lines = ["x,T"]
    lines += [f"{fmt(a)},{fmt(b)}" for a, b in zip(x, T)]
    return "\n".join(lines) + "\n"


def write_solution_csv(path, x, T) -> None:
    _write_text(path, solution_csv(x, T))


def _read_columns(text: str, header: tuple[str, ...], what: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows or tuple(c.strip() for c in rows[0]) != header:
        raise ProfileError(f"{what} CSV must start with header {','.join(header)!r}")
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise ProfileError(f"malformed {what} CSV: {exc}") from None
    if data.size and data.shape[1] != len(header):
        raise ProfileError(f"{what} CSV rows must have {len(header)} columns")
    return data.reshape(-1, len(header))


def read_solution_csv(path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_columns(Path(path).read_text(encoding="utf-8"), ("x", "T"), "solution")
    return data[:, 0], data[:, 1]


# -- profile CSV -------------------------------------------------------------


def profile_csv(x, T_obs) -> str:
    lines = ["x,T_obs"]
    lines += [f"{fmt(a)},{fmt(b)}" for a, b in zip(x, T_obs)]
    return "\n".join(lines) + "\n"


def write_profile_csv(path, profile: ObservedProfile) -> None:
    _write_text(path, profile_csv(profile.x, profile.T_obs))


def read_profile_csv(path, L: float | None = None, R: float | None = None) -> ObservedProfile:
    """Read an ``x,T_obs`` file; bounds default to the first and last abscissa."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProfileError(f"cannot read profile data: {exc}") from None
    data = _read_columns(text, ("x", "T_obs"), "profile")
    return ObservedProfile.from_points(data, L, R)


# -- weights CSV -------------------------------------------------------------


def weights_csv(table: WeightTable) -> str:
    lines = ["k,w"]
    lines += [f"{k},{fmt(w)}" for k, w in zip(table.offsets, table.w)]
    lines.append("j,sL,sR")
    lines += [
        f"{j},{fmt(sl)},{fmt(sr)}" for j, sl, sr in zip(range(1, table.kmax + 1), table.sL, table.sR)
    ]
    return "\n".join(lines) + "\n"


def read_weights_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(k, w, j, sL, sR)`` from a two-section weights file."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "k,w" or "j,sL,sR" not in lines:
        raise ValueError("weights CSV must contain 'k,w' and 'j,sL,sR' sections")
    split = lines.index("j,sL,sR")
    first = np.array([[float(c) for c in ln.split(",")] for ln in lines[1:split]]).reshape(-1, 2)
    second = np.array([[float(c) for c in ln.split(",")] for ln in lines[split + 1 :]]).reshape(-1, 3)
    return (
        first[:, 0].astype(int),
        first[:, 1],
        second[:, 0].astype(int),
        second[:, 1],
        second[:, 2],
    )


# -- JSON manifest -----------------------------------------------------------


@dataclass
class RunManifest:
    command: str
    alpha: float | list | None = None
    theta: float | list | None = None
    lambda1: float = 0.0
    lambda2: float = 0.0
    L: float = 0.0
    R: float = 1.0
    N: int | None = None
    gL: float | None = None
    gR: float | None = None
    outputs: dict = field(default_factory=dict)
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    )

    def to_dict(self) -> dict:
        return asdict(self)


def jsonable(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats for ``json``."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return obj


# -- SVG ---------------------------------------------------------------------

_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
)


def svg_plot(
    series,
    *,
    points=None,
    title: str = "",
    xlabel: str = "x",
    ylabel: str = "T",
    width: int = 640,
    height: int = 420,
) -> str:
    """Static line chart: one ``<polyline>`` per ``(label, x, y)`` in ``series``.

    ``points`` is an optional ``(label, x, y)`` scatter drawn as circles.
    """
    series = [(str(lbl), np.asarray(x, float), np.asarray(y, float)) for lbl, x, y in series]
    all_x = [s[1] for s in series] + ([np.asarray(points[1], float)] if points else [])
    all_y = [s[2] for s in series] + ([np.asarray(points[2], float)] if points else [])
    x0, x1 = min(a.min() for a in all_x), max(a.max() for a in all_x)
    y0, y1 = min(a.min() for a in all_y), max(a.max() for a in all_y)
    if x1 == x0:
        x1 = x0 + 1.0
    pad = 0.05 * (y1 - y0) if y1 > y0 else 0.5
    y0, y1 = y0 - pad, y1 + pad

    left, right, top, bottom = 60, 150, 30, 45
    pw, ph = width - left - right, height - top - bottom

    def sx(v):
        return left + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return top + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + pw / 2:.1f}" y="18" text-anchor="middle" font-size="13">{escape(title)}</text>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for t in np.linspace(x0, x1, 6):
        out.append(
            f'<text x="{sx(t):.1f}" y="{top + ph + 15}" text-anchor="middle">{t:.3g}</text>'
        )
    for t in np.linspace(y0, y1, 6):
        out.append(f'<text x="{left - 6}" y="{sy(t) + 4:.1f}" text-anchor="end">{t:.3g}</text>')
    out.append(
        f'<text x="{left + pw / 2:.1f}" y="{height - 8}" text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="14" y="{top + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {top + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    for n, (label, x, y) in enumerate(series):
        color = _PALETTE[n % len(_PALETTE)]
        coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}">'
            f"<title>{escape(label)}</title></polyline>"
        )
        ly = top + 10 + 16 * n
        out.append(
            f'<line x1="{left + pw + 10}" y1="{ly}" x2="{left + pw + 30}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(f'<text x="{left + pw + 35}" y="{ly + 4}">{escape(label)}</text>')
    if points:
        label, px, py = points
        for a, b in zip(px, py):
            out.append(f'<circle cx="{sx(a):.2f}" cy="{sy(b):.2f}" r="3" fill="black"/>')
        ly = top + 10 + 16 * len(series)
        out.append(f'<circle cx="{left + pw + 20}" cy="{ly}" r="3" fill="black"/>')
        out.append(f'<text x="{left + pw + 35}" y="{ly + 4}">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, svg: str) -> None:
    _write_text(path, svg)
