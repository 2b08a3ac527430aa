"""Linked brushing: the selection state machine shared by all views.

A selection is a set of report ids plus a version counter that grows by
exactly one per applied action, so clients can reconcile optimistic
updates against pushed (session, version) events. Brushes are drawn
from a closed predicate vocabulary, one predicate form per view, and a
brush replaces the selection (additive brushing is Add(match(p))).

Actions and predicates have stable JSON forms because they travel over
the selection API and are replayed from append-only session logs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date
from typing import Union

from .ingest import count_to_json, format_count
from .model import (
    AspectInterval,
    AvalancheObservationReport,
    NumericCount,
    aspect_overlaps,
)
from .views import ViewModelBundle


class UnknownReportId(KeyError):
    """Report id not present in the dataset."""


@dataclass(frozen=True)
class SelectionState:
    selected: frozenset[str] = frozenset()
    version: int = 0
    ignored_unknown: int = 0  # unknown ids dropped from the last action


# -- predicates -------------------------------------------------------------


@dataclass(frozen=True)
class DateRange:
    from_day: date
    to_day: date

    def __post_init__(self) -> None:
        if self.from_day > self.to_day:
            raise ValueError(f"date range {self.from_day}..{self.to_day} inverted")


@dataclass(frozen=True)
class ElevationOverlap:
    min_m: float
    max_m: float

    def __post_init__(self) -> None:
        if self.min_m > self.max_m:
            raise ValueError(f"elevation range {self.min_m}..{self.max_m} inverted")


@dataclass(frozen=True)
class AspectOverlap:
    interval: AspectInterval


@dataclass(frozen=True)
class MatrixCellPredicate:
    problem_type: str
    trigger: str


@dataclass(frozen=True)
class OperationPredicate:
    operation_id: str


@dataclass(frozen=True)
class SizeRange:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"size range {self.lo}..{self.hi} inverted")


@dataclass(frozen=True)
class CountVariant:
    variant: str  # "numeric" | "ordinal"

    def __post_init__(self) -> None:
        if self.variant not in ("numeric", "ordinal"):
            raise ValueError(f"count variant must be numeric or ordinal, got {self.variant!r}")


BrushPredicate = Union[
    DateRange,
    ElevationOverlap,
    AspectOverlap,
    MatrixCellPredicate,
    OperationPredicate,
    SizeRange,
    CountVariant,
]


def _report_matches(pred: BrushPredicate, r: AvalancheObservationReport) -> bool:
    if isinstance(pred, DateRange):
        return pred.from_day <= r.occurred_on <= pred.to_day
    if isinstance(pred, ElevationOverlap):
        return r.elevation.min_m <= pred.max_m and pred.min_m <= r.elevation.max_m
    if isinstance(pred, AspectOverlap):
        return aspect_overlaps(pred.interval, r.aspect)
    if isinstance(pred, MatrixCellPredicate):
        return r.problem_type == pred.problem_type and r.trigger == pred.trigger
    if isinstance(pred, OperationPredicate):
        return r.operation_id == pred.operation_id
    if isinstance(pred, SizeRange):
        return pred.lo <= r.size <= pred.hi
    if isinstance(pred, CountVariant):
        is_numeric = isinstance(r.count, NumericCount)
        return is_numeric == (pred.variant == "numeric")
    raise TypeError(f"unknown predicate {pred!r}")


def match(pred: BrushPredicate, reports) -> frozenset[str]:
    """Report ids matching a brush predicate."""
    return frozenset(r.report_id for r in reports if _report_matches(pred, r))


# -- actions ----------------------------------------------------------------


@dataclass(frozen=True)
class SetSelection:
    ids: frozenset[str]


@dataclass(frozen=True)
class AddSelection:
    ids: frozenset[str]


@dataclass(frozen=True)
class RemoveSelection:
    ids: frozenset[str]


@dataclass(frozen=True)
class ClearSelection:
    pass


@dataclass(frozen=True)
class BrushSelection:
    predicate: BrushPredicate
    additive: bool = False


SelectionAction = Union[SetSelection, AddSelection, RemoveSelection, ClearSelection, BrushSelection]


def apply_action(
    state: SelectionState, action: SelectionAction, reports
) -> SelectionState:
    """Apply one action; total, deterministic, version += 1.

    Ids that do not exist in the dataset are dropped and counted in
    ``ignored_unknown`` on the returned state.
    """
    known = {r.report_id for r in reports}
    ignored = 0

    if isinstance(action, (SetSelection, AddSelection, RemoveSelection)):
        ids = frozenset(action.ids)
        valid = ids & known
        ignored = len(ids) - len(valid)
        if isinstance(action, SetSelection):
            selected = valid
        elif isinstance(action, AddSelection):
            selected = state.selected | valid
        else:
            selected = state.selected - valid
    elif isinstance(action, ClearSelection):
        selected = frozenset()
    elif isinstance(action, BrushSelection):
        hits = match(action.predicate, reports)
        selected = (state.selected | hits) if action.additive else hits
    else:
        raise TypeError(f"unknown action {action!r}")

    return SelectionState(
        selected=selected, version=state.version + 1, ignored_unknown=ignored
    )


def replay(actions, reports) -> SelectionState:
    """Fold an action log from the initial state (event-sourcing)."""
    state = SelectionState()
    for action in actions:
        state = apply_action(state, action, reports)
    return state


# -- JSON wire forms ---------------------------------------------------------


def predicate_to_json(pred: BrushPredicate) -> dict:
    if isinstance(pred, DateRange):
        return {"kind": "date_range", "from": pred.from_day.isoformat(), "to": pred.to_day.isoformat()}
    if isinstance(pred, ElevationOverlap):
        return {"kind": "elevation_overlap", "min_m": pred.min_m, "max_m": pred.max_m}
    if isinstance(pred, AspectOverlap):
        return {
            "kind": "aspect_overlap",
            "start_deg": pred.interval.start_deg,
            "end_deg": pred.interval.end_deg,
            "full_circle": pred.interval.full_circle,
        }
    if isinstance(pred, MatrixCellPredicate):
        return {"kind": "matrix_cell", "problem_type": pred.problem_type, "trigger": pred.trigger}
    if isinstance(pred, OperationPredicate):
        return {"kind": "operation", "operation_id": pred.operation_id}
    if isinstance(pred, SizeRange):
        return {"kind": "size_range", "lo": pred.lo, "hi": pred.hi}
    if isinstance(pred, CountVariant):
        return {"kind": "count_variant", "variant": pred.variant}
    raise TypeError(f"unknown predicate {pred!r}")


def predicate_from_json(obj: dict) -> BrushPredicate:
    kind = obj.get("kind")
    if kind == "date_range":
        return DateRange(date.fromisoformat(obj["from"]), date.fromisoformat(obj["to"]))
    if kind == "elevation_overlap":
        return ElevationOverlap(float(obj["min_m"]), float(obj["max_m"]))
    if kind == "aspect_overlap":
        return AspectOverlap(
            AspectInterval(
                float(obj["start_deg"]),
                float(obj["end_deg"]),
                bool(obj.get("full_circle", False)),
            )
        )
    if kind == "matrix_cell":
        return MatrixCellPredicate(str(obj["problem_type"]), str(obj["trigger"]))
    if kind == "operation":
        return OperationPredicate(str(obj["operation_id"]))
    if kind == "size_range":
        return SizeRange(float(obj["lo"]), float(obj["hi"]))
    if kind == "count_variant":
        return CountVariant(str(obj["variant"]))
    raise ValueError(f"unknown predicate kind {kind!r}")


def action_to_json(action: SelectionAction) -> dict:
    if isinstance(action, SetSelection):
        return {"type": "set", "ids": sorted(action.ids)}
    if isinstance(action, AddSelection):
        return {"type": "add", "ids": sorted(action.ids)}
    if isinstance(action, RemoveSelection):
        return {"type": "remove", "ids": sorted(action.ids)}
    if isinstance(action, ClearSelection):
        return {"type": "clear"}
    if isinstance(action, BrushSelection):
        return {
            "type": "brush",
            "predicate": predicate_to_json(action.predicate),
            "additive": action.additive,
        }
    raise TypeError(f"unknown action {action!r}")


def action_from_json(obj: dict) -> SelectionAction:
    kind = obj.get("type")
    if kind in ("set", "add", "remove"):
        ids = obj.get("ids")
        if not isinstance(ids, list) or not all(isinstance(i, str) for i in ids):
            raise ValueError(f"action {kind!r} needs a list of id strings")
        cls = {"set": SetSelection, "add": AddSelection, "remove": RemoveSelection}[kind]
        return cls(frozenset(ids))
    if kind == "clear":
        return ClearSelection()
    if kind == "brush":
        pred = obj.get("predicate")
        if not isinstance(pred, dict):
            raise ValueError("brush action needs a predicate object")
        return BrushSelection(predicate_from_json(pred), bool(obj.get("additive", False)))
    raise ValueError(f"unknown action type {kind!r}")


# -- highlighting & tooltips -------------------------------------------------


def annotate_highlights(bundle: ViewModelBundle, state: SelectionState) -> ViewModelBundle:
    """Return the bundle with per-member highlight flags; nothing else changes."""
    sel = state.selected

    def glyph(g):
        if g is None:
            return None
        return replace(
            g,
            members=tuple(replace(m, highlight=m.report_id in sel) for m in g.members),
        )

    return replace(
        bundle,
        timeline=replace(
            bundle.timeline,
            bins=tuple(replace(b, glyph=glyph(b.glyph)) for b in bundle.timeline.bins),
        ),
        matrix=replace(
            bundle.matrix,
            cells=tuple(replace(c, glyph=glyph(c.glyph)) for c in bundle.matrix.cells),
        ),
        map=replace(
            bundle.map,
            operations=tuple(
                replace(o, glyph=glyph(o.glyph)) for o in bundle.map.operations
            ),
        ),
        elevation=replace(
            bundle.elevation,
            segments=tuple(
                replace(s, highlight=s.report_id in sel) for s in bundle.elevation.segments
            ),
        ),
        aspect=replace(
            bundle.aspect,
            arcs=tuple(replace(a, highlight=a.report_id in sel) for a in bundle.aspect.arcs),
        ),
    )


def tooltip_payload(report_id: str, reports) -> dict:
    """The complete report, verbatim, in its original count variant."""
    for r in reports:
        if r.report_id == report_id:
            count: dict = {"variant": "numeric" if isinstance(r.count, NumericCount) else "ordinal"}
            if isinstance(r.count, NumericCount):
                count["n"] = r.count.n
            else:
                count.update({"label": r.count.label, "lo": r.count.lo, "hi": r.count.hi})
            return {
                "report_id": r.report_id,
                "operation_id": r.operation_id,
                "reported_at": r.reported_at.isoformat().replace("+00:00", "Z"),
                "occurred_on": r.occurred_on.isoformat(),
                "count": count,
                "count_display": format_count(r.count),
                "count_raw": count_to_json(r.count),
                "size": r.size,
                "trigger": r.trigger,
                "problem_type": r.problem_type,
                "elevation": {"min_m": r.elevation.min_m, "max_m": r.elevation.max_m},
                "aspect": {
                    "start_deg": r.aspect.start_deg,
                    "end_deg": r.aspect.end_deg,
                    "full_circle": r.aspect.full_circle,
                },
                "percent_observed": r.percent_observed,
                "comment": r.comment,
            }
    raise UnknownReportId(report_id)
