"""Dependency-free SVG 1.1 emission for the experiment plots.

Supports exactly what the harness needs: line charts with optional
one-standard-deviation bands, overlaid step histograms, and heatmaps
with point markers. Output is deterministic: fixed canvas, fixed float
formatting, and no timestamps.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

WIDTH = 640
HEIGHT = 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 24, 40, 48

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

# Dark-to-bright ramp for heatmaps.
_RAMP = (
    (68, 1, 84),
    (59, 82, 139),
    (33, 145, 140),
    (94, 201, 98),
    (253, 231, 37),
)


def _fmt(v: float) -> str:
    return f"{float(v):.4f}".rstrip("0").rstrip(".")


def _ticks(lo: float, hi: float, count: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10.0 ** np.floor(np.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    first = np.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * abs(step):
        ticks.append(0.0 if abs(t) < 1e-12 else t)
        t += step
    return ticks


class _Canvas:
    def __init__(self, title: str, xlabel: str, ylabel: str,
                 xlim: tuple[float, float], ylim: tuple[float, float]):
        self.parts: list[str] = []
        self.xlo, self.xhi = xlim
        self.ylo, self.yhi = ylim
        if self.xhi <= self.xlo:
            self.xhi = self.xlo + 1.0
        if self.yhi <= self.ylo:
            self.yhi = self.ylo + 1.0
        self.parts.append(
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">'
        )
        self.parts.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
        self.parts.append(
            f'<text x="{WIDTH / 2}" y="24" font-family="sans-serif" '
            f'font-size="15" text-anchor="middle">{escape(title)}</text>'
        )
        self.parts.append(
            f'<text x="{WIDTH / 2}" y="{HEIGHT - 10}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{escape(xlabel)}</text>'
        )
        self.parts.append(
            f'<text x="16" y="{HEIGHT / 2}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 16 {HEIGHT / 2})">{escape(ylabel)}</text>'
        )

    def px(self, x: float) -> float:
        span = WIDTH - MARGIN_L - MARGIN_R
        return MARGIN_L + (x - self.xlo) / (self.xhi - self.xlo) * span

    def py(self, y: float) -> float:
        span = HEIGHT - MARGIN_T - MARGIN_B
        return HEIGHT - MARGIN_B - (y - self.ylo) / (self.yhi - self.ylo) * span

    def axes(self):
        x0, y0 = MARGIN_L, HEIGHT - MARGIN_B
        x1, y1 = WIDTH - MARGIN_R, MARGIN_T
        self.parts.append(
            f'<path d="M {x0} {y1} L {x0} {y0} L {x1} {y0}" '
            f'fill="none" stroke="black" stroke-width="1"/>'
        )
        for t in _ticks(self.xlo, self.xhi):
            px = self.px(t)
            self.parts.append(
                f'<line x1="{_fmt(px)}" y1="{y0}" x2="{_fmt(px)}" y2="{y0 + 4}" '
                f'stroke="black" stroke-width="1"/>'
            )
            self.parts.append(
                f'<text x="{_fmt(px)}" y="{y0 + 16}" font-family="sans-serif" '
                f'font-size="10" text-anchor="middle">{_fmt(t)}</text>'
            )
        for t in _ticks(self.ylo, self.yhi):
            py = self.py(t)
            self.parts.append(
                f'<line x1="{x0 - 4}" y1="{_fmt(py)}" x2="{x0}" y2="{_fmt(py)}" '
                f'stroke="black" stroke-width="1"/>'
            )
            self.parts.append(
                f'<text x="{x0 - 6}" y="{_fmt(py + 3)}" font-family="sans-serif" '
                f'font-size="10" text-anchor="end">{_fmt(t)}</text>'
            )

    def legend(self, labels_colors):
        y = MARGIN_T + 6
        for label, color in labels_colors:
            x = WIDTH - MARGIN_R - 150
            self.parts.append(
                f'<line x1="{x}" y1="{y}" x2="{x + 18}" y2="{y}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
            self.parts.append(
                f'<text x="{x + 24}" y="{y + 4}" font-family="sans-serif" '
                f'font-size="11">{escape(label)}</text>'
            )
            y += 16

    def to_svg(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _poly(points, **attrs) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    attr_text = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{coords}" {attr_text}/>'


def line_chart(path: str, title: str, xlabel: str, ylabel: str, series):
    """Write a line chart; each series is a dict with keys
    label, x, y, and optionally band=(lo, hi) arrays for a shaded region."""
    xs = np.concatenate([np.asarray(s["x"], float) for s in series])
    ys = [np.asarray(s["y"], float) for s in series]
    all_y = list(ys)
    for s in series:
        if s.get("band") is not None:
            lo, hi = s["band"]
            all_y.extend([np.asarray(lo, float), np.asarray(hi, float)])
    ycat = np.concatenate(all_y) if all_y else np.array([0.0, 1.0])
    pad = 0.05 * max(float(ycat.max() - ycat.min()), 1e-9)
    canvas = _Canvas(
        title, xlabel, ylabel,
        (float(xs.min()), float(xs.max())),
        (float(ycat.min()) - pad, float(ycat.max()) + pad),
    )
    canvas.axes()
    for idx, s in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        x = np.asarray(s["x"], float)
        y = np.asarray(s["y"], float)
        if s.get("band") is not None:
            lo, hi = (np.asarray(b, float) for b in s["band"])
            ring = [(canvas.px(a), canvas.py(b)) for a, b in zip(x, hi)]
            ring += [(canvas.px(a), canvas.py(b)) for a, b in zip(x[::-1], lo[::-1])]
            coords = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in ring)
            canvas.parts.append(
                f'<polygon points="{coords}" fill="{color}" fill-opacity="0.15" '
                f'stroke="none"/>'
            )
        pts = [(canvas.px(a), canvas.py(b)) for a, b in zip(x, y)]
        canvas.parts.append(
            _poly(pts, fill="none", stroke=color, stroke_width="2")
        )
        for a, b in pts:
            canvas.parts.append(
                f'<circle cx="{_fmt(a)}" cy="{_fmt(b)}" r="2.5" fill="{color}"/>'
            )
    canvas.legend(
        [(s["label"], PALETTE[i % len(PALETTE)]) for i, s in enumerate(series)]
    )
    _write(path, canvas.to_svg())


def histogram(path: str, title: str, xlabel: str, ylabel: str, series):
    """Overlaid step histograms; each series has label, edges, counts."""
    all_edges = np.concatenate([np.asarray(s["edges"], float) for s in series])
    top = max(float(np.asarray(s["counts"], float).max()) for s in series)
    canvas = _Canvas(
        title, xlabel, ylabel,
        (float(all_edges.min()), float(all_edges.max())),
        (0.0, top * 1.05 if top > 0 else 1.0),
    )
    canvas.axes()
    for idx, s in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        edges = np.asarray(s["edges"], float)
        counts = np.asarray(s["counts"], float)
        pts = [(canvas.px(edges[0]), canvas.py(0.0))]
        for k, c in enumerate(counts):
            pts.append((canvas.px(edges[k]), canvas.py(c)))
            pts.append((canvas.px(edges[k + 1]), canvas.py(c)))
        pts.append((canvas.px(edges[-1]), canvas.py(0.0)))
        coords = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in pts)
        canvas.parts.append(
            f'<polygon points="{coords}" fill="{color}" fill-opacity="0.12" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
    canvas.legend(
        [(s["label"], PALETTE[i % len(PALETTE)]) for i, s in enumerate(series)]
    )
    _write(path, canvas.to_svg())


def _ramp_color(v: float) -> str:
    v = min(max(v, 0.0), 1.0)
    pos = v * (len(_RAMP) - 1)
    k = min(int(pos), len(_RAMP) - 2)
    frac = pos - k
    rgb = [
        int(round(_RAMP[k][c] + frac * (_RAMP[k + 1][c] - _RAMP[k][c])))
        for c in range(3)
    ]
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def heatmap(path: str, title: str, xlabel: str, ylabel: str, x, y, Z,
            markers=()):
    """Cell grid colored by Z[i, j] at (x[i], y[j]), plus point markers.

    Markers are (x, y, style, color) tuples with style "cross" or "plus".
    """
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    Z = np.asarray(Z, float)
    if Z.shape != (x.size, y.size):
        raise ValueError(f"Z shape {Z.shape} != ({x.size}, {y.size})")
    dx = x[1] - x[0] if x.size > 1 else 1.0
    dy = y[1] - y[0] if y.size > 1 else 1.0
    canvas = _Canvas(
        title, xlabel, ylabel,
        (float(x.min() - dx / 2), float(x.max() + dx / 2)),
        (float(y.min() - dy / 2), float(y.max() + dy / 2)),
    )
    lo, hi = float(Z.min()), float(Z.max())
    span = hi - lo if hi > lo else 1.0
    for i in range(x.size):
        for j in range(y.size):
            color = _ramp_color((Z[i, j] - lo) / span)
            px = canvas.px(x[i] - dx / 2)
            py = canvas.py(y[j] + dy / 2)
            w = canvas.px(x[i] + dx / 2) - px
            h = canvas.py(y[j] - dy / 2) - py
            canvas.parts.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(w)}" '
                f'height="{_fmt(h)}" fill="{color}"/>'
            )
    canvas.axes()
    for mx, my, style, color in markers:
        px, py = canvas.px(mx), canvas.py(my)
        r = 6
        if style == "cross":
            lines = [(-r, -r, r, r), (-r, r, r, -r)]
        else:  # plus
            lines = [(-r, 0, r, 0), (0, -r, 0, r)]
        for x0, y0, x1, y1 in lines:
            canvas.parts.append(
                f'<line x1="{_fmt(px + x0)}" y1="{_fmt(py + y0)}" '
                f'x2="{_fmt(px + x1)}" y2="{_fmt(py + y1)}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
    _write(path, canvas.to_svg())


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
