"""Render-ready view models for the five coordinated displays.

Each builder partitions the in-scope reports exactly once into its view
(timeline bins, matrix cells, map operations, chart segments, arc rows)
and keeps per-report identity so selection can link the views. Builders
are pure: reports in, geometry out, nothing mutated.

The visual encodings live here and nowhere else:

* circle area proportional to destructive size class,
* colour family by count variant (numeric vs ordinal), never mixed,
* colour darkness log-scaled in the resolved count, capped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Optional

from .config import AppConfig, GlyphScale
from .geometry import Circle, interval_to_arc, pack_circles, polygon_centroid
from .model import (
    AvalancheCount,
    AvalancheObservationReport,
    NumericCount,
    OrdinalBinTable,
    resolve_count_scalar,
)
from .theme import FAMILY_NUMERIC, FAMILY_ORDINAL, color_hex


@dataclass(frozen=True)
class ColorSpec:
    family: str
    darkness: float

    def __post_init__(self) -> None:
        if self.family not in (FAMILY_NUMERIC, FAMILY_ORDINAL):
            raise ValueError(f"unknown colour family {self.family!r}")
        if not 0.0 <= self.darkness <= 1.0:
            raise ValueError(f"darkness {self.darkness} outside [0, 1]")


def size_to_radius(size: float, scale: GlyphScale = GlyphScale()) -> float:
    """Member radius for a size class; circle area stays proportional to size."""
    return scale.radius_base * math.sqrt(size)


def count_to_color(
    count: AvalancheCount,
    cap: int = 100,
    table: Optional[OrdinalBinTable] = None,
) -> ColorSpec:
    """Colour encoding of a count: family from the variant, darkness from value.

    darkness = log(1 + min(s, cap)) / log(1 + cap) with s the resolved
    scalar, so darkness grows strictly with the count below the cap and
    both scale endpoints (0 and cap) are reachable.
    """
    if table is None:
        s = resolve_count_scalar(count)
    else:
        s = resolve_count_scalar(count, table)
    family = FAMILY_NUMERIC if isinstance(count, NumericCount) else FAMILY_ORDINAL
    darkness = math.log1p(min(float(s), float(cap))) / math.log1p(float(cap))
    return ColorSpec(family, darkness)


@dataclass(frozen=True)
class GlyphMember:
    report_id: str
    cx: float
    cy: float
    r: float
    color: ColorSpec
    highlight: bool = False


@dataclass(frozen=True)
class GlyphLayout:
    """Packed circles for one group of reports; one member per report."""

    key: str
    members: tuple[GlyphMember, ...]
    enclosing: Circle


def canonical_order(
    reports, scale: GlyphScale = GlyphScale()
) -> list[AvalancheObservationReport]:
    """Packing order: descending radius, then report_id.

    Makes the rendered glyph a function of the report multiset, not of
    input order.
    """
    return sorted(reports, key=lambda r: (-size_to_radius(r.size, scale), r.report_id))


def build_glyph(reports, key: str, config: AppConfig = AppConfig()) -> GlyphLayout:
    """Pack one glyph from a non-empty report group."""
    group = canonical_order(reports, config.glyph)
    if not group:
        raise ValueError("build_glyph needs at least one report")
    radii = [size_to_radius(r.size, config.glyph) for r in group]
    layout = pack_circles(radii)
    members = tuple(
        GlyphMember(
            report_id=r.report_id,
            cx=c.cx,
            cy=c.cy,
            r=c.r,
            color=count_to_color(r.count, config.glyph.darkness_cap, config.vocab.bins),
        )
        for r, c in zip(group, layout.members)
    )
    return GlyphLayout(key=key, members=members, enclosing=layout.enclosing)


# ---------------------------------------------------------------------------
# timeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TimelineBin:
    day: date
    glyph: Optional[GlyphLayout]


@dataclass(frozen=True)
class TimelineViewModel:
    bins: tuple[TimelineBin, ...]
    clipped: int  # reports outside the requested date range


def build_timeline(
    reports,
    date_range: Optional[tuple[date, date]] = None,
    config: AppConfig = AppConfig(),
) -> TimelineViewModel:
    """One bin per calendar day; empty bins stay so reporting gaps show."""
    reports = list(reports)
    if date_range is None:
        if not reports:
            return TimelineViewModel(bins=(), clipped=0)
        days = [r.occurred_on for r in reports]
        date_range = (min(days), max(days))
    d0, d1 = date_range
    if d0 > d1:
        raise ValueError(f"date range {d0}..{d1} is inverted")

    in_scope = [r for r in reports if d0 <= r.occurred_on <= d1]
    clipped = len(reports) - len(in_scope)
    by_day: dict[date, list[AvalancheObservationReport]] = {}
    for r in in_scope:
        by_day.setdefault(r.occurred_on, []).append(r)

    bins = []
    day = d0
    while day <= d1:
        group = by_day.get(day)
        glyph = build_glyph(group, day.isoformat(), config) if group else None
        bins.append(TimelineBin(day=day, glyph=glyph))
        day += timedelta(days=1)
    return TimelineViewModel(bins=tuple(bins), clipped=clipped)


# ---------------------------------------------------------------------------
# problem x trigger matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixCell:
    problem_type: str
    trigger: str
    glyph: GlyphLayout


@dataclass(frozen=True)
class MatrixViewModel:
    problem_types: tuple[str, ...]  # row order
    triggers: tuple[str, ...]  # column order
    cells: tuple[MatrixCell, ...]  # non-empty cells, row-major


def build_matrix(reports, config: AppConfig = AppConfig()) -> MatrixViewModel:
    by_cell: dict[tuple[str, str], list[AvalancheObservationReport]] = {}
    for r in reports:
        by_cell.setdefault((r.problem_type, r.trigger), []).append(r)

    cells = []
    for problem in config.vocab.problem_types:
        for trigger in config.vocab.triggers:
            group = by_cell.get((problem, trigger))
            if group:
                cells.append(
                    MatrixCell(
                        problem_type=problem,
                        trigger=trigger,
                        glyph=build_glyph(group, f"{problem}|{trigger}", config),
                    )
                )
    return MatrixViewModel(
        problem_types=config.vocab.problem_types,
        triggers=config.vocab.triggers,
        cells=tuple(cells),
    )


# ---------------------------------------------------------------------------
# map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapOperation:
    operation_id: str
    display_name: str
    rings: tuple[tuple[tuple[float, float], ...], ...]
    anchor: tuple[float, float]
    shading: Optional[float]  # mean percent_observed / 100, None without reports
    glyph: Optional[GlyphLayout]


@dataclass(frozen=True)
class MapViewModel:
    operations: tuple[MapOperation, ...]
    unmapped: int  # reports whose operation has no tenure polygon


def build_map(reports, tenures, config: AppConfig = AppConfig()) -> MapViewModel:
    tenure_by_op = {t.operation_id: t for t in tenures}
    by_op: dict[str, list[AvalancheObservationReport]] = {}
    unmapped = 0
    for r in reports:
        if r.operation_id in tenure_by_op:
            by_op.setdefault(r.operation_id, []).append(r)
        else:
            unmapped += 1

    operations = []
    for tenure in tenures:
        group = by_op.get(tenure.operation_id)
        if group:
            shading = sum(r.percent_observed for r in group) / len(group) / 100.0
            glyph = build_glyph(group, tenure.operation_id, config)
        else:
            shading = None
            glyph = None
        operations.append(
            MapOperation(
                operation_id=tenure.operation_id,
                display_name=tenure.display_name,
                rings=tenure.rings,
                anchor=polygon_centroid(tenure),
                shading=shading,
                glyph=glyph,
            )
        )
    return MapViewModel(operations=tuple(operations), unmapped=unmapped)


# ---------------------------------------------------------------------------
# elevation chart and aspect arc diagram
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElevationSegment:
    index: int
    min_m: float
    max_m: float
    report_id: str
    highlight: bool = False


@dataclass(frozen=True)
class ElevationChartViewModel:
    segments: tuple[ElevationSegment, ...]


@dataclass(frozen=True)
class AspectArc:
    index: int
    start_deg: float
    sweep_deg: float
    report_id: str
    highlight: bool = False


@dataclass(frozen=True)
class AspectArcViewModel:
    arcs: tuple[AspectArc, ...]


def _chart_order(reports) -> list[AvalancheObservationReport]:
    # stable, documented: by occurrence day then report id
    return sorted(reports, key=lambda r: (r.occurred_on, r.report_id))


def build_elevation_chart(reports) -> ElevationChartViewModel:
    segments = tuple(
        ElevationSegment(
            index=i,
            min_m=r.elevation.min_m,
            max_m=r.elevation.max_m,
            report_id=r.report_id,
        )
        for i, r in enumerate(_chart_order(reports))
    )
    return ElevationChartViewModel(segments=segments)


def build_aspect_arcs(reports) -> AspectArcViewModel:
    arcs = []
    for i, r in enumerate(_chart_order(reports)):
        start, sweep = interval_to_arc(r.aspect)
        arcs.append(
            AspectArc(index=i, start_deg=start, sweep_deg=sweep, report_id=r.report_id)
        )
    return AspectArcViewModel(arcs=tuple(arcs))


# ---------------------------------------------------------------------------
# bundle + JSON contract
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ViewModelBundle:
    timeline: TimelineViewModel
    matrix: MatrixViewModel
    map: MapViewModel
    elevation: ElevationChartViewModel
    aspect: AspectArcViewModel


def build_all(
    reports,
    tenures,
    date_range: Optional[tuple[date, date]] = None,
    config: AppConfig = AppConfig(),
) -> ViewModelBundle:
    """Build all five coordinated view models over one report list."""
    reports = list(reports)
    timeline = build_timeline(reports, date_range, config)
    if date_range is not None:
        d0, d1 = date_range
        reports = [r for r in reports if d0 <= r.occurred_on <= d1]
    return ViewModelBundle(
        timeline=timeline,
        matrix=build_matrix(reports, config),
        map=build_map(reports, tenures, config),
        elevation=build_elevation_chart(reports),
        aspect=build_aspect_arcs(reports),
    )


def _glyph_json(glyph: Optional[GlyphLayout], config: AppConfig) -> Optional[dict]:
    if glyph is None:
        return None
    return {
        "key": glyph.key,
        "enclosing": {"cx": glyph.enclosing.cx, "cy": glyph.enclosing.cy, "r": glyph.enclosing.r},
        "members": [
            {
                "report_id": m.report_id,
                "cx": m.cx,
                "cy": m.cy,
                "r": m.r,
                "family": m.color.family,
                "darkness": m.color.darkness,
                "color": color_hex(m.color.family, m.color.darkness, config.theme),
                "highlight": m.highlight,
            }
            for m in glyph.members
        ],
    }


def bundle_to_json(bundle: ViewModelBundle, config: AppConfig = AppConfig()) -> dict:
    """The serialized view-model contract shared with the client."""
    return {
        "timeline": {
            "bins": [
                {"date": b.day.isoformat(), "glyph": _glyph_json(b.glyph, config)}
                for b in bundle.timeline.bins
            ],
            "clipped": bundle.timeline.clipped,
        },
        "matrix": {
            "problem_types": list(bundle.matrix.problem_types),
            "triggers": list(bundle.matrix.triggers),
            "cells": [
                {
                    "problem_type": c.problem_type,
                    "trigger": c.trigger,
                    "glyph": _glyph_json(c.glyph, config),
                }
                for c in bundle.matrix.cells
            ],
        },
        "map": {
            "operations": [
                {
                    "operation_id": o.operation_id,
                    "display_name": o.display_name,
                    "rings": [[list(p) for p in ring] for ring in o.rings],
                    "anchor": list(o.anchor),
                    "shading": o.shading,
                    "glyph": _glyph_json(o.glyph, config),
                }
                for o in bundle.map.operations
            ],
            "unmapped": bundle.map.unmapped,
        },
        "elevation": {
            "segments": [
                {
                    "index": s.index,
                    "min_m": s.min_m,
                    "max_m": s.max_m,
                    "report_id": s.report_id,
                    "highlight": s.highlight,
                }
                for s in bundle.elevation.segments
            ]
        },
        "aspect": {
            "arcs": [
                {
                    "index": a.index,
                    "start_deg": a.start_deg,
                    "sweep_deg": a.sweep_deg,
                    "report_id": a.report_id,
                    "highlight": a.highlight,
                }
                for a in bundle.aspect.arcs
            ]
        },
    }


def bundle_report_ids(bundle: ViewModelBundle) -> dict[str, list[str]]:
    """Report ids appearing in each view, used by partition checks."""
    timeline = [
        m.report_id for b in bundle.timeline.bins if b.glyph for m in b.glyph.members
    ]
    matrix = [m.report_id for c in bundle.matrix.cells for m in c.glyph.members]
    map_ids = [
        m.report_id for o in bundle.map.operations if o.glyph for m in o.glyph.members
    ]
    elevation = [s.report_id for s in bundle.elevation.segments]
    aspect = [a.report_id for a in bundle.aspect.arcs]
    return {
        "timeline": timeline,
        "matrix": matrix,
        "map": map_ids,
        "elevation": elevation,
        "aspect": aspect,
    }
