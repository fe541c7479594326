"""Standalone SVG rendering for walks and Gaussian-prime scatters.

No plotting dependency: documents are assembled as text with fixed-precision
coordinates, so identical data produces identical bytes.  The generation
timestamp is an optional trailing comment (off for golden files).
"""

from datetime import datetime, timezone
from math import sqrt
from xml.sax.saxutils import escape

_SVG_OPEN = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
    'viewBox="0 0 {w} {h}">'
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _timestamp_comment() -> str:
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return f"<!-- generated {stamp} -->\n"


def walk_svg(
    sums,
    *,
    envelope: bool = False,
    title: str | None = None,
    width: int = 880,
    height: int = 480,
    timestamp: bool = True,
) -> str:
    """Polyline of the walk heights S(0..n), optionally framed by the
    +/- sqrt(t) envelope curves (two extra path elements)."""
    heights = [int(s) for s in sums]
    if not heights:
        raise ValueError("empty walk: nothing to plot")
    n = len(heights) - 1
    margin = 40.0
    span_x = max(n, 1)
    y_extent = max(max(abs(h) for h in heights), sqrt(span_x), 1.0)

    def px(t: float) -> float:
        return margin + (width - 2 * margin) * t / span_x

    def py(v: float) -> float:
        return height / 2 - (height / 2 - margin) * v / y_extent

    parts = [_SVG_OPEN.format(w=width, h=height)]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append(
        f'<line x1="{_fmt(px(0))}" y1="{_fmt(py(0))}" '
        f'x2="{_fmt(px(n))}" y2="{_fmt(py(0))}" stroke="#999" stroke-width="1"/>'
    )
    if envelope:
        samples = min(span_x, 512)
        for sign in (1, -1):
            coords = []
            for j in range(samples + 1):
                t = span_x * j / samples
                coords.append(f"{_fmt(px(t))},{_fmt(py(sign * sqrt(t)))}")
            parts.append(
                f'<path d="M {" L ".join(coords)}" fill="none" '
                'stroke="#c33" stroke-width="1" stroke-dasharray="4 3"/>'
            )
    points = " ".join(
        f"{_fmt(px(t))},{_fmt(py(v))}" for t, v in enumerate(heights)
    )
    parts.append(
        f'<polyline points="{points}" fill="none" stroke="#225" stroke-width="1"/>'
    )
    parts.append("</svg>\n")
    doc = "\n".join(parts)
    if timestamp:
        doc += _timestamp_comment()
    return doc


def scatter_svg(
    points,
    *,
    title: str | None = None,
    width: int = 640,
    timestamp: bool = True,
) -> str:
    """Square scatter plot with equal aspect, centered on the origin."""
    pts = [(int(x), int(y)) for x, y in points]
    if not pts:
        raise ValueError("empty scatter: nothing to plot")
    margin = 20.0
    extent = max(max(abs(x) for x, _ in pts), max(abs(y) for _, y in pts), 1)
    scale = (width / 2 - margin) / extent
    radius = max(width / (6.0 * extent), 0.4)

    def px(v: int) -> float:
        return width / 2 + v * scale

    def py(v: int) -> float:
        return width / 2 - v * scale

    parts = [_SVG_OPEN.format(w=width, h=width)]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    for x, y in pts:
        parts.append(
            f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" '
            f'r="{_fmt(radius)}" fill="#225"/>'
        )
    parts.append("</svg>\n")
    doc = "\n".join(parts)
    if timestamp:
        doc += _timestamp_comment()
    return doc
