"""Headless SVG rendering of the five views.

Byte-deterministic: fixed attribute order, fixed float formatting, no
randomness, geometry taken verbatim from the view models. Used by the
CLI for docs and by golden-file tests; the browser client draws its own
marks from the same view-model JSON.
"""

from __future__ import annotations

import math
from typing import Optional

from .config import AppConfig
from .selection import SelectionState, annotate_highlights
from .theme import DIMMED_OPACITY, HIGHLIGHT_STROKE, color_hex
from .views import GlyphLayout, ViewModelBundle

VIEW_NAMES = ("timeline", "matrix", "map", "elevation", "aspect")


class UnknownView(ValueError):
    """View name outside the five coordinated views."""


def _f(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _svg_open(width: float, height: float) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" '
        f'height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">'
    )


def _text(x: float, y: float, content: str, size: int = 10, anchor: str = "middle") -> str:
    return (
        f'<text x="{_f(x)}" y="{_f(y)}" font-size="{size}" '
        f'font-family="sans-serif" text-anchor="{anchor}" fill="#333">{content}</text>'
    )


def _glyph_circles(
    glyph: Optional[GlyphLayout],
    cx: float,
    cy: float,
    max_r: float,
    config: AppConfig,
    any_selected: bool,
) -> list[str]:
    """Glyph members translated to (cx, cy), uniformly scaled to fit max_r."""
    if glyph is None:
        return []
    scale = 1.0 if glyph.enclosing.r <= max_r or glyph.enclosing.r == 0 else max_r / glyph.enclosing.r
    parts = []
    for m in glyph.members:
        fill = color_hex(m.color.family, m.color.darkness, config.theme)
        attrs = (
            f'cx="{_f(cx + m.cx * scale)}" cy="{_f(cy + m.cy * scale)}" '
            f'r="{_f(m.r * scale)}" fill="{fill}"'
        )
        if m.highlight:
            attrs += f' stroke="{HIGHLIGHT_STROKE}" stroke-width="2"'
        elif any_selected:
            attrs += f' opacity="{_f(DIMMED_OPACITY)}"'
        parts.append(f'<circle {attrs} data-report-id="{m.report_id}"/>')
    return parts


def _any_selected(bundle: ViewModelBundle) -> bool:
    return any(
        m.highlight
        for b in bundle.timeline.bins
        if b.glyph
        for m in b.glyph.members
    ) or any(s.highlight for s in bundle.elevation.segments) or any(
        a.highlight for a in bundle.aspect.arcs
    )


def _render_timeline(bundle: ViewModelBundle, config: AppConfig) -> str:
    bins = bundle.timeline.bins
    slot = 84.0
    margin = 30.0
    width = max(margin * 2 + slot * max(len(bins), 1), 300.0)
    height = 220.0
    axis_y = height - 40.0
    sel = _any_selected(bundle)

    parts = [_svg_open(width, height)]
    parts.append(
        f'<line x1="{_f(margin)}" y1="{_f(axis_y)}" x2="{_f(width - margin)}" '
        f'y2="{_f(axis_y)}" stroke="#888" stroke-width="1"/>'
    )
    for i, b in enumerate(bins):
        cx = margin + slot * (i + 0.5)
        parts.append(_text(cx, axis_y + 16.0, b.day.isoformat()))
        parts.append(
            f'<line x1="{_f(cx)}" y1="{_f(axis_y)}" x2="{_f(cx)}" '
            f'y2="{_f(axis_y + 4.0)}" stroke="#888" stroke-width="1"/>'
        )
        parts.extend(_glyph_circles(b.glyph, cx, axis_y - 80.0, 38.0, config, sel))
    parts.append("</svg>")
    return "".join(parts)


def _render_matrix(bundle: ViewModelBundle, config: AppConfig) -> str:
    rows = bundle.matrix.problem_types
    cols = bundle.matrix.triggers
    cell = 72.0
    left = 150.0
    top = 60.0
    width = left + cell * len(cols) + 20.0
    height = top + cell * len(rows) + 20.0
    sel = _any_selected(bundle)

    parts = [_svg_open(width, height)]
    for j, trig in enumerate(cols):
        parts.append(_text(left + cell * (j + 0.5), top - 10.0, trig, size=9))
    for i, prob in enumerate(rows):
        parts.append(_text(left - 8.0, top + cell * (i + 0.5) + 3.0, prob, size=9, anchor="end"))
    for i in range(len(rows) + 1):
        y = top + cell * i
        parts.append(
            f'<line x1="{_f(left)}" y1="{_f(y)}" x2="{_f(left + cell * len(cols))}" '
            f'y2="{_f(y)}" stroke="#ddd" stroke-width="1"/>'
        )
    for j in range(len(cols) + 1):
        x = left + cell * j
        parts.append(
            f'<line x1="{_f(x)}" y1="{_f(top)}" x2="{_f(x)}" '
            f'y2="{_f(top + cell * len(rows))}" stroke="#ddd" stroke-width="1"/>'
        )
    index = {(c.problem_type, c.trigger): c for c in bundle.matrix.cells}
    for i, prob in enumerate(rows):
        for j, trig in enumerate(cols):
            c = index.get((prob, trig))
            if c is not None:
                parts.extend(
                    _glyph_circles(
                        c.glyph,
                        left + cell * (j + 0.5),
                        top + cell * (i + 0.5),
                        cell * 0.45,
                        config,
                        sel,
                    )
                )
    parts.append("</svg>")
    return "".join(parts)


def _render_map(bundle: ViewModelBundle, config: AppConfig) -> str:
    width, height = 640.0, 520.0
    margin = 40.0
    ops = bundle.map.operations
    sel = _any_selected(bundle)

    pts = [p for o in ops for ring in o.rings for p in ring]
    parts = [_svg_open(width, height)]
    if pts:
        lons = [p[0] for p in pts]
        lats = [p[1] for p in pts]
        lon0, lon1 = min(lons), max(lons)
        lat0, lat1 = min(lats), max(lats)
        span_x = max(lon1 - lon0, 1e-9)
        span_y = max(lat1 - lat0, 1e-9)
        k = min((width - 2 * margin) / span_x, (height - 2 * margin) / span_y)

        def proj(p):
            return (
                margin + (p[0] - lon0) * k,
                height - margin - (p[1] - lat0) * k,
            )

        for o in ops:
            for ring in o.rings:
                d = "M" + "L".join(f"{_f(x)} {_f(y)}" for x, y in (proj(p) for p in ring)) + "Z"
                opacity = 0.12 if o.shading is None else 0.15 + 0.6 * o.shading
                parts.append(
                    f'<path d="{d}" fill="#6b7f94" fill-opacity="{_f(opacity)}" '
                    f'stroke="#44566b" stroke-width="1" data-operation-id="{o.operation_id}"/>'
                )
            ax, ay = proj(o.anchor)
            parts.append(_text(ax, ay + 46.0, o.display_name, size=9))
            parts.extend(_glyph_circles(o.glyph, ax, ay, 34.0, config, sel))
    parts.append("</svg>")
    return "".join(parts)


def _render_elevation(bundle: ViewModelBundle, config: AppConfig) -> str:
    segs = bundle.elevation.segments
    width = max(60.0 + 14.0 * len(segs), 300.0)
    height = 320.0
    left, bottom, top = 50.0, height - 30.0, 20.0
    lo = 0.0
    hi = max([s.max_m for s in segs], default=3000.0)
    hi = max(hi, 1.0)
    sel = any(s.highlight for s in segs)

    def y(m: float) -> float:
        return bottom - (m - lo) / (hi - lo) * (bottom - top)

    parts = [_svg_open(width, height)]
    parts.append(
        f'<line x1="{_f(left)}" y1="{_f(top)}" x2="{_f(left)}" y2="{_f(bottom)}" '
        f'stroke="#888" stroke-width="1"/>'
    )
    for tick in range(0, int(hi) + 1, 1000):
        parts.append(_text(left - 6.0, y(tick) + 3.0, str(tick), size=9, anchor="end"))
    for s in segs:
        x = left + 12.0 + 14.0 * s.index
        stroke = HIGHLIGHT_STROKE if s.highlight else "#3f6a8a"
        extra = "" if s.highlight or not sel else f' opacity="{_f(DIMMED_OPACITY)}"'
        y1, y2 = y(s.min_m), y(s.max_m)
        if s.min_m == s.max_m:
            y1 += 1.5  # zero-span elevation still draws a visible tick
        parts.append(
            f'<line x1="{_f(x)}" y1="{_f(y1)}" x2="{_f(x)}" y2="{_f(y2)}" '
            f'stroke="{stroke}" stroke-width="3" stroke-linecap="round"'
            f'{extra} data-report-id="{s.report_id}"/>'
        )
    parts.append("</svg>")
    return "".join(parts)


def _polar_point(cx: float, cy: float, radius: float, deg: float) -> tuple[float, float]:
    rad = math.radians(deg)
    return (cx + radius * math.sin(rad), cy - radius * math.cos(rad))


def _render_aspect(bundle: ViewModelBundle, config: AppConfig) -> str:
    arcs = bundle.aspect.arcs
    width = height = 520.0
    cx = cy = width / 2.0
    r0, step = 40.0, 9.0
    sel = any(a.highlight for a in arcs)

    parts = [_svg_open(width, height)]
    for label, deg in (("N", 0.0), ("E", 90.0), ("S", 180.0), ("W", 270.0)):
        lx, ly = _polar_point(cx, cy, r0 + step * (len(arcs) + 2), deg)
        parts.append(_text(lx, ly + 3.0, label, size=11))
    for a in arcs:
        radius = r0 + step * a.index
        stroke = HIGHLIGHT_STROKE if a.highlight else "#4a7c59"
        extra = "" if a.highlight or not sel else f' opacity="{_f(DIMMED_OPACITY)}"'
        common = (
            f'stroke="{stroke}" stroke-width="3" fill="none" stroke-linecap="round"'
            f'{extra} data-report-id="{a.report_id}"'
        )
        if a.sweep_deg >= 360.0:
            parts.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(radius)}" {common}/>')
        elif a.sweep_deg == 0.0:
            px, py = _polar_point(cx, cy, radius, a.start_deg)
            parts.append(
                f'<circle cx="{_f(px)}" cy="{_f(py)}" r="2" '
                f'stroke="{stroke}" stroke-width="3" fill="{stroke}"'
                f'{extra} data-report-id="{a.report_id}"/>'
            )
        else:
            x1, y1 = _polar_point(cx, cy, radius, a.start_deg)
            x2, y2 = _polar_point(cx, cy, radius, a.start_deg + a.sweep_deg)
            large = 1 if a.sweep_deg > 180.0 else 0
            parts.append(
                f'<path d="M{_f(x1)} {_f(y1)}A{_f(radius)} {_f(radius)} 0 {large} 1 '
                f'{_f(x2)} {_f(y2)}" {common}/>'
            )
    parts.append("</svg>")
    return "".join(parts)


_RENDERERS = {
    "timeline": _render_timeline,
    "matrix": _render_matrix,
    "map": _render_map,
    "elevation": _render_elevation,
    "aspect": _render_aspect,
}


def render_svg(
    bundle: ViewModelBundle,
    view: str,
    config: AppConfig = AppConfig(),
    selection: Optional[SelectionState] = None,
) -> bytes:
    """Render one view to SVG bytes; deterministic for fixed inputs."""
    if view not in _RENDERERS:
        raise UnknownView(f"view must be one of {VIEW_NAMES}, got {view!r}")
    if selection is not None:
        bundle = annotate_highlights(bundle, selection)
    return (_RENDERERS[view](bundle, config) + "\n").encode("utf-8")
