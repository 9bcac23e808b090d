"""Minimal self-contained SVG emission for the sweep figures.

CSV files are the ground truth for every experiment; these figures exist for
quick human inspection only, so the renderer is a deliberately small polyline
and heatmap writer with no external dependencies. All coordinates are written
with fixed precision to keep repeated runs byte-identical.
"""

from __future__ import annotations

from typing import Sequence

_WIDTH = 640
_HEIGHT = 480
_MARGIN = 60


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _axis_range(values: Sequence[float]) -> tuple[float, float]:
    lo = min(values)
    hi = max(values)
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def line_plot(
    x: Sequence[float],
    y: Sequence[float],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """A single polyline with a box frame and min/max tick labels."""
    if len(x) != len(y) or not x:
        raise ValueError("x and y must be equally sized and nonempty")
    x_lo, x_hi = _axis_range(x)
    y_lo, y_hi = _axis_range(y)
    span_x = _WIDTH - 2 * _MARGIN
    span_y = _HEIGHT - 2 * _MARGIN

    def sx(v: float) -> float:
        return _MARGIN + span_x * (v - x_lo) / (x_hi - x_lo)

    def sy(v: float) -> float:
        return _HEIGHT - _MARGIN - span_y * (v - y_lo) / (y_hi - y_lo)

    points = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in zip(x, y))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{span_x}" height="{span_y}" '
        'fill="none" stroke="black"/>',
        f'<polyline points="{points}" fill="none" stroke="steelblue" stroke-width="2"/>',
        f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" font-size="16">{title}</text>',
        f'<text x="{_WIDTH // 2}" y="{_HEIGHT - 12}" text-anchor="middle" font-size="12">'
        f"{x_label}</text>",
        f'<text x="16" y="{_HEIGHT // 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {_HEIGHT // 2})">{y_label}</text>',
        f'<text x="{_MARGIN}" y="{_HEIGHT - _MARGIN + 16}" text-anchor="middle" '
        f'font-size="10">{_fmt(x_lo)}</text>',
        f'<text x="{_WIDTH - _MARGIN}" y="{_HEIGHT - _MARGIN + 16}" text-anchor="middle" '
        f'font-size="10">{_fmt(x_hi)}</text>',
        f'<text x="{_MARGIN - 6}" y="{_HEIGHT - _MARGIN}" text-anchor="end" '
        f'font-size="10">{_fmt(y_lo)}</text>',
        f'<text x="{_MARGIN - 6}" y="{_MARGIN + 4}" text-anchor="end" '
        f'font-size="10">{_fmt(y_hi)}</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


_HEAT_STOPS = ((0x44, 0x01, 0x54), (0x21, 0x91, 0x8C), (0xFD, 0xE7, 0x25))


def _heat_color(value: float) -> str:
    v = min(1.0, max(0.0, value))
    if v < 0.5:
        a, b = _HEAT_STOPS[0], _HEAT_STOPS[1]
        t = v / 0.5
    else:
        a, b = _HEAT_STOPS[1], _HEAT_STOPS[2]
        t = (v - 0.5) / 0.5
    channel = [round(ca + (cb - ca) * t) for ca, cb in zip(a, b)]
    return "#{:02x}{:02x}{:02x}".format(*channel)


def heatmap(
    values: Sequence[Sequence[float]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Grid of colored cells; values[i][j] is row i (bottom to top), column j."""
    rows = len(values)
    cols = len(values[0]) if rows else 0
    if rows == 0 or cols == 0:
        raise ValueError("heatmap needs a nonempty grid")
    span_x = _WIDTH - 2 * _MARGIN
    span_y = _HEIGHT - 2 * _MARGIN
    cell_w = span_x / cols
    cell_h = span_y / rows
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    for i, row in enumerate(values):
        if len(row) != cols:
            raise ValueError("heatmap rows must have equal length")
        y = _HEIGHT - _MARGIN - (i + 1) * cell_h
        for j, value in enumerate(row):
            x = _MARGIN + j * cell_w
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(cell_w)}" '
                f'height="{_fmt(cell_h)}" fill="{_heat_color(value)}"/>'
            )
    parts.extend(
        [
            f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{span_x}" height="{span_y}" '
            'fill="none" stroke="black"/>',
            f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" font-size="16">{title}</text>',
            f'<text x="{_WIDTH // 2}" y="{_HEIGHT - 12}" text-anchor="middle" font-size="12">'
            f"{x_label}</text>",
            f'<text x="16" y="{_HEIGHT // 2}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 16 {_HEIGHT // 2})">{y_label}</text>',
            "</svg>",
        ]
    )
    return "\n".join(parts) + "\n"
