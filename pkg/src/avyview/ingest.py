"""Report, tenure, and weather ingestion plus the synthetic generator.

Files in, validated domain values out. Parsing is total over decodable
input: a malformed record never aborts the run, it yields exactly one
error diagnostic and the record is skipped. Only undecodable bytes or a
broken file header abort, with :class:`UnreadableInput`.

Formats
-------
reports   ``.jsonl`` (one JSON object per line, canonical form written
          by :func:`serialize_reports`) or ``.csv`` with the fixed
          header ``CSV_HEADER``.
tenures   GeoJSON FeatureCollection of Polygon features carrying
          ``operation_id`` and ``display_name`` properties.
weather   ``.csv`` with header ``WEATHER_HEADER``; empty cell = missing.

The count field preserves the reporter's choice verbatim: a JSON number
parses to a numeric count, a JSON string to an ordinal bin; the CSV
reader applies the same rule to the cell text.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from typing import Optional

import numpy as np

from .model import (
    SIZE_CLASSES,
    UNSPECIFIED,
    AspectInterval,
    AvalancheCount,
    AvalancheObservationReport,
    ElevationInterval,
    NumericCount,
    OperationTenure,
    OrdinalCount,
    UnknownBinLabel,
    Vocabularies,
    WeatherReading,
)

CSV_HEADER = [
    "report_id",
    "operation_id",
    "reported_at",
    "occurred_on",
    "count",
    "size",
    "trigger",
    "problem_type",
    "elev_min_m",
    "elev_max_m",
    "aspect_start_deg",
    "aspect_end_deg",
    "aspect_full_circle",
    "percent_observed",
    "comment",
]

WEATHER_HEADER = [
    "station_id",
    "timestamp",
    "precip_mm",
    "wind_speed_kmh",
    "wind_dir_deg",
    "temp_c",
]


class UnreadableInput(ValueError):
    """Input stream cannot be read at all (encoding / header level)."""


class UnparseableCount(ValueError):
    """Count token is neither a non-negative integer nor a known bin."""


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    locator: str  # line / record reference, e.g. "line 12"
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity} [{self.code}] {self.locator}: {self.message}"


def _error(locator: str, code: str, message: str) -> Diagnostic:
    return Diagnostic("error", locator, code, message)


class _RecordError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


# ---------------------------------------------------------------------------
# count field
# ---------------------------------------------------------------------------


def parse_count_field(text: str, vocab: Vocabularies) -> AvalancheCount:
    """Parse a count cell: digits mean numeric, a bin label means ordinal."""
    token = text.strip()
    if token.isdigit():
        return NumericCount(int(token))
    try:
        entry = vocab.bins.get(token)
    except UnknownBinLabel:
        raise UnparseableCount(
            f"count {text!r} is neither a non-negative integer nor a known bin label"
        ) from None
    return OrdinalCount(entry.label, entry.lo, entry.hi)


def _count_from_json(value, vocab: Vocabularies) -> AvalancheCount:
    if isinstance(value, bool):
        raise UnparseableCount(f"count {value!r} is not a number or bin label")
    if isinstance(value, int):
        if value < 0:
            raise UnparseableCount(f"count {value} is negative")
        return NumericCount(value)
    if isinstance(value, str):
        return parse_count_field(value, vocab)
    raise UnparseableCount(f"count {value!r} is not a number or bin label")


def count_to_json(count: AvalancheCount):
    """Numeric counts serialize as JSON numbers, ordinal ones as labels."""
    if isinstance(count, NumericCount):
        return count.n
    return count.label


def format_count(count: AvalancheCount) -> str:
    """Presentation form preserving the original variant: '7' or 'several (2–9)'."""
    if isinstance(count, NumericCount):
        return str(count.n)
    if count.hi is None:
        return f"{count.label} ({count.lo}+)"
    return f"{count.label} ({count.lo}–{count.hi})"


# ---------------------------------------------------------------------------
# report records
# ---------------------------------------------------------------------------


def _parse_timestamp(raw) -> datetime:
    if not isinstance(raw, str) or not raw:
        raise _RecordError("BAD_TIMESTAMP", f"reported_at {raw!r} is not a timestamp")
    text = raw.replace("Z", "+00:00") if raw.endswith("Z") else raw
    try:
        ts = datetime.fromisoformat(text)
    except ValueError:
        raise _RecordError("BAD_TIMESTAMP", f"cannot parse timestamp {raw!r}") from None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _parse_date(raw) -> date:
    if not isinstance(raw, str):
        raise _RecordError("BAD_DATE", f"occurred_on {raw!r} is not a date")
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise _RecordError("BAD_DATE", f"cannot parse date {raw!r}") from None


def _parse_number(raw, field: str) -> float:
    if isinstance(raw, bool) or not isinstance(raw, (int, float)) or not math.isfinite(raw):
        raise _RecordError("BAD_NUMBER", f"{field} {raw!r} is not a finite number")
    return float(raw)


def _parse_vocab_token(raw, allowed: tuple[str, ...], field: str, code: str) -> str:
    if raw is None or raw == "":
        return UNSPECIFIED
    if not isinstance(raw, str):
        raise _RecordError(code, f"{field} {raw!r} is not a token")
    token = raw.strip().lower()
    if token == "":
        return UNSPECIFIED
    if token not in allowed:
        raise _RecordError(code, f"{field} {raw!r} is not in the configured vocabulary")
    return token


def _build_report(obj: dict, vocab: Vocabularies) -> AvalancheObservationReport:
    for key in ("report_id", "operation_id", "reported_at", "occurred_on", "count",
                "size", "elevation", "aspect", "percent_observed"):
        if key not in obj:
            raise _RecordError("MISSING_FIELD", f"missing required field {key!r}")

    report_id = obj["report_id"]
    operation_id = obj["operation_id"]
    if not isinstance(report_id, str) or not report_id:
        raise _RecordError("BAD_REPORT_ID", f"report_id {report_id!r} is not a token")
    if not isinstance(operation_id, str) or not operation_id:
        raise _RecordError("MISSING_OP_ID", f"operation_id {operation_id!r} is not a token")

    reported_at = _parse_timestamp(obj["reported_at"])
    occurred_on = _parse_date(obj["occurred_on"])
    if occurred_on > reported_at.date():
        raise _RecordError(
            "OCCURRED_AFTER_REPORTED",
            f"occurred_on {occurred_on} is after the report timestamp",
        )

    try:
        count = _count_from_json(obj["count"], vocab)
    except UnparseableCount as exc:
        raise _RecordError("UNPARSEABLE_COUNT", str(exc)) from None

    size = _parse_number(obj["size"], "size")
    if size not in SIZE_CLASSES:
        raise _RecordError("BAD_SIZE", f"size {size} is not on the half-step 1..5 scale")

    elev = obj["elevation"]
    if not isinstance(elev, dict) or "min_m" not in elev or "max_m" not in elev:
        raise _RecordError("BAD_ELEVATION", f"elevation {elev!r} needs min_m and max_m")
    emin = _parse_number(elev["min_m"], "elevation.min_m")
    emax = _parse_number(elev["max_m"], "elevation.max_m")
    if emin > emax:
        raise _RecordError("ELEV_INVERTED", f"elevation min {emin} exceeds max {emax}")
    if not (0 <= emin and emax <= 9000):
        raise _RecordError("ELEV_RANGE", f"elevation [{emin}, {emax}] outside 0..9000 m")

    asp = obj["aspect"]
    if not isinstance(asp, dict):
        raise _RecordError("BAD_ASPECT", f"aspect {asp!r} is not an object")
    full = asp.get("full_circle", False)
    if not isinstance(full, bool):
        raise _RecordError("BAD_ASPECT", f"aspect.full_circle {full!r} is not a boolean")
    astart = _parse_number(asp.get("start_deg", 0.0), "aspect.start_deg")
    aend = _parse_number(asp.get("end_deg", 0.0), "aspect.end_deg")
    if not (0 <= astart < 360 and 0 <= aend < 360):
        raise _RecordError("BAD_ASPECT", f"aspect [{astart}, {aend}] outside [0, 360)")

    pct = obj["percent_observed"]
    if isinstance(pct, bool) or not isinstance(pct, int) or not 0 <= pct <= 100:
        raise _RecordError("BAD_PERCENT", f"percent_observed {pct!r} not an integer in 0..100")

    comment = obj.get("comment", "")
    if not isinstance(comment, str):
        raise _RecordError("BAD_COMMENT", f"comment {comment!r} is not text")

    trigger = _parse_vocab_token(obj.get("trigger"), vocab.triggers, "trigger", "UNKNOWN_TRIGGER")
    problem = _parse_vocab_token(
        obj.get("problem_type"), vocab.problem_types, "problem_type", "UNKNOWN_PROBLEM_TYPE"
    )

    return AvalancheObservationReport(
        report_id=report_id,
        operation_id=operation_id,
        reported_at=reported_at,
        occurred_on=occurred_on,
        count=count,
        size=size,
        trigger=trigger,
        problem_type=problem,
        elevation=ElevationInterval(emin, emax),
        aspect=AspectInterval(astart, aend, full),
        percent_observed=pct,
        comment=comment,
    )


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UnreadableInput(f"input is not valid UTF-8: {exc}") from exc


def parse_reports(
    data: bytes, fmt: str = "jsonl", vocab: Optional[Vocabularies] = None
) -> tuple[list[AvalancheObservationReport], list[Diagnostic]]:
    """Parse a report file; accepted reports keep file order.

    Every malformed record is skipped with one error diagnostic;
    accepted + rejected = record count.
    """
    vocab = vocab or Vocabularies()
    if fmt == "jsonl":
        return _parse_reports_jsonl(_decode(data), vocab)
    if fmt == "csv":
        return _parse_reports_csv(_decode(data), vocab)
    raise ValueError(f"unknown report format {fmt!r} (expected 'jsonl' or 'csv')")


def _parse_reports_jsonl(text: str, vocab: Vocabularies):
    reports: list[AvalancheObservationReport] = []
    diagnostics: list[Diagnostic] = []
    seen_ids: set[str] = set()
    # split on \n only: JSON strings may legally contain unescaped
    # unicode line separators (U+0085, U+2028) that splitlines() eats
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        locator = f"line {lineno}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            diagnostics.append(_error(locator, "BAD_JSON", f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(obj, dict):
            diagnostics.append(_error(locator, "BAD_RECORD", "record is not a JSON object"))
            continue
        try:
            report = _build_report(obj, vocab)
        except _RecordError as exc:
            diagnostics.append(_error(locator, exc.code, exc.message))
            continue
        except ValueError as exc:
            diagnostics.append(_error(locator, "INVALID_RECORD", str(exc)))
            continue
        if report.report_id in seen_ids:
            diagnostics.append(
                _error(locator, "DUPLICATE_REPORT_ID", f"duplicate report_id {report.report_id!r}")
            )
            continue
        seen_ids.add(report.report_id)
        reports.append(report)
    return reports, diagnostics


def _csv_record_to_obj(row: dict) -> dict:
    def num(text):
        text = (text or "").strip()
        if text == "":
            return None
        try:
            f = float(text)
        except ValueError:
            return text  # downstream validation reports the bad number
        return int(f) if f.is_integer() and "." not in text else f

    full_raw = (row.get("aspect_full_circle") or "").strip().lower()
    obj = {
        "report_id": row.get("report_id") or "",
        "operation_id": row.get("operation_id") or "",
        "reported_at": row.get("reported_at") or "",
        "occurred_on": row.get("occurred_on") or "",
        "count": (row.get("count") or "").strip(),
        "size": num(row.get("size")),
        "trigger": row.get("trigger") or "",
        "problem_type": row.get("problem_type") or "",
        "elevation": {"min_m": num(row.get("elev_min_m")), "max_m": num(row.get("elev_max_m"))},
        "aspect": {
            "start_deg": num(row.get("aspect_start_deg")) or 0,
            "end_deg": num(row.get("aspect_end_deg")) or 0,
            "full_circle": full_raw in ("true", "1", "yes"),
        },
        "percent_observed": num(row.get("percent_observed")),
        "comment": row.get("comment") or "",
    }
    # CSV cells are text; sizes arrive as "2.0" and percents as "60"
    if isinstance(obj["size"], int):
        obj["size"] = float(obj["size"])
    return obj


def _parse_reports_csv(text: str, vocab: Vocabularies):
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != CSV_HEADER:
        raise UnreadableInput(
            f"CSV header {reader.fieldnames!r} does not match the documented "
            f"report header {CSV_HEADER!r}"
        )
    reports: list[AvalancheObservationReport] = []
    diagnostics: list[Diagnostic] = []
    seen_ids: set[str] = set()
    for rownum, row in enumerate(reader, start=2):  # header is line 1
        locator = f"line {rownum}"
        try:
            report = _build_report(_csv_record_to_obj(row), vocab)
        except _RecordError as exc:
            diagnostics.append(_error(locator, exc.code, exc.message))
            continue
        except ValueError as exc:
            diagnostics.append(_error(locator, "INVALID_RECORD", str(exc)))
            continue
        if report.report_id in seen_ids:
            diagnostics.append(
                _error(locator, "DUPLICATE_REPORT_ID", f"duplicate report_id {report.report_id!r}")
            )
            continue
        seen_ids.add(report.report_id)
        reports.append(report)
    return reports, diagnostics


def serialize_reports(reports) -> bytes:
    """Canonical JSONL serialization; parse(serialize(x)) == x.

    Ordinal counts are written as their labels, never as resolved
    numbers, so the reporting choice survives persistence.
    """
    lines = []
    for r in reports:
        obj = {
            "report_id": r.report_id,
            "operation_id": r.operation_id,
            "reported_at": r.reported_at.astimezone(timezone.utc).strftime(
                "%Y-%m-%dT%H:%M:%SZ"
            ),
            "occurred_on": r.occurred_on.isoformat(),
            "count": count_to_json(r.count),
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
        lines.append(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


# ---------------------------------------------------------------------------
# tenures (GeoJSON)
# ---------------------------------------------------------------------------


def _clean_ring(coords) -> tuple[tuple[float, float], ...]:
    pts = [(float(p[0]), float(p[1])) for p in coords]
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts = pts[:-1]  # drop GeoJSON closing vertex
    return tuple(pts)


def parse_tenures(data: bytes) -> tuple[list[OperationTenure], list[Diagnostic]]:
    """Parse a GeoJSON FeatureCollection of operation tenures."""
    text = _decode(data)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UnreadableInput(f"tenure file is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise UnreadableInput("tenure file is not a GeoJSON FeatureCollection")

    tenures: list[OperationTenure] = []
    diagnostics: list[Diagnostic] = []
    seen: set[str] = set()
    for idx, feature in enumerate(doc.get("features", [])):
        locator = f"feature {idx}"
        if not isinstance(feature, dict):
            diagnostics.append(_error(locator, "BAD_FEATURE", "feature is not an object"))
            continue
        props = feature.get("properties") or {}
        op_id = props.get("operation_id")
        if not isinstance(op_id, str) or not op_id:
            diagnostics.append(_error(locator, "MISSING_OP_ID", "feature lacks operation_id"))
            continue
        if op_id in seen:
            diagnostics.append(
                _error(locator, "DUPLICATE_OP_ID", f"duplicate operation_id {op_id!r}")
            )
            continue
        geom = feature.get("geometry") or {}
        if geom.get("type") != "Polygon" or not isinstance(geom.get("coordinates"), list):
            diagnostics.append(
                _error(locator, "BAD_GEOMETRY", "geometry is not a Polygon with coordinates")
            )
            continue
        try:
            rings = tuple(_clean_ring(ring) for ring in geom["coordinates"])
        except (TypeError, ValueError, IndexError):
            diagnostics.append(_error(locator, "BAD_GEOMETRY", "malformed ring coordinates"))
            continue
        display_name = props.get("display_name")
        if not isinstance(display_name, str) or not display_name:
            display_name = op_id
        try:
            tenure = OperationTenure(operation_id=op_id, rings=rings, display_name=display_name)
        except ValueError as exc:
            diagnostics.append(_error(locator, "INVALID_RING", str(exc)))
            continue
        seen.add(op_id)
        tenures.append(tenure)
    return tenures, diagnostics


def serialize_tenures(tenures) -> bytes:
    """GeoJSON FeatureCollection round-tripping :func:`parse_tenures`."""
    features = []
    for t in tenures:
        rings = [[list(p) for p in ring] + [list(ring[0])] for ring in t.rings]
        features.append(
            {
                "type": "Feature",
                "properties": {"operation_id": t.operation_id, "display_name": t.display_name},
                "geometry": {"type": "Polygon", "coordinates": rings},
            }
        )
    doc = {"type": "FeatureCollection", "features": features}
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# weather (CSV)
# ---------------------------------------------------------------------------


def parse_weather(data: bytes) -> tuple[list[WeatherReading], list[Diagnostic]]:
    """Parse weather telemetry; readings come back sorted per station.

    Duplicate (station, timestamp) rows are rejected so per-station
    timestamps are strictly increasing after ingestion.
    """
    text = _decode(data)
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != WEATHER_HEADER:
        raise UnreadableInput(
            f"weather CSV header {reader.fieldnames!r} does not match {WEATHER_HEADER!r}"
        )

    rows: list[WeatherReading] = []
    diagnostics: list[Diagnostic] = []
    for rownum, row in enumerate(reader, start=2):
        locator = f"line {rownum}"

        def cell(name):
            value = (row.get(name) or "").strip()
            return value if value else None

        station = cell("station_id")
        if station is None:
            diagnostics.append(_error(locator, "MISSING_STATION", "empty station_id"))
            continue
        try:
            ts = _parse_timestamp(cell("timestamp"))
        except _RecordError as exc:
            diagnostics.append(_error(locator, exc.code, exc.message))
            continue

        def fnum(name):
            value = cell(name)
            if value is None:
                return None
            try:
                out = float(value)
            except ValueError:
                raise _RecordError("BAD_NUMBER", f"{name} {value!r} is not a number") from None
            if not math.isfinite(out):
                raise _RecordError("BAD_NUMBER", f"{name} {value!r} is not finite")
            return out

        try:
            reading = WeatherReading(
                station_id=station,
                timestamp=ts,
                precip_mm=fnum("precip_mm"),
                wind_speed_kmh=fnum("wind_speed_kmh"),
                wind_dir_deg=fnum("wind_dir_deg"),
                temp_c=fnum("temp_c"),
            )
        except _RecordError as exc:
            diagnostics.append(_error(locator, exc.code, exc.message))
            continue
        except ValueError as exc:
            diagnostics.append(_error(locator, "INVALID_READING", str(exc)))
            continue
        rows.append(reading)

    readings: list[WeatherReading] = []
    seen: set[tuple[str, datetime]] = set()
    for reading in sorted(rows, key=lambda r: (r.station_id, r.timestamp)):
        key = (reading.station_id, reading.timestamp)
        if key in seen:
            diagnostics.append(
                _error(
                    f"station {reading.station_id}",
                    "DUPLICATE_TIMESTAMP",
                    f"duplicate reading at {reading.timestamp.isoformat()}",
                )
            )
            continue
        seen.add(key)
        readings.append(reading)
    return readings, diagnostics


def serialize_weather(readings) -> bytes:
    """Weather CSV round-tripping :func:`parse_weather`."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(WEATHER_HEADER)

    def fmt(value):
        if value is None:
            return ""
        return format(value, "g")

    for r in readings:
        writer.writerow(
            [
                r.station_id,
                r.timestamp.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
                fmt(r.precip_mm),
                fmt(r.wind_speed_kmh),
                fmt(r.wind_dir_deg),
                fmt(r.temp_c),
            ]
        )
    return out.getvalue().encode("utf-8")


# ---------------------------------------------------------------------------
# synthetic data
# ---------------------------------------------------------------------------

SYNTH_BASE_DATE = date(2020, 2, 1)

_OPERATION_NAMES = (
    "Cariboo Ridge Cats",
    "Monashee Heli",
    "Selkirk Powder Guides",
    "Kootenay Pass Ops",
    "Valhalla Snowcats",
    "Purcell Heli-Ski",
    "Rogers Pass Control",
    "Duffey Lake Ops",
    "Coquihalla Corridor",
    "Bugaboo Lodge",
)

_COMMENTS = (
    "",
    "size 2 storm slabs on lee features",
    "widespread whumpfing below treeline",
    "natural cycle overnight, crowns visible from the road",
    "ski cutting produced small soft slabs",
    "explosive control, results to size 2.5",
    "isolated wind slab pockets near ridgecrest",
    "poor visibility, estimate only",
    "glide cracks opening on south aspects",
    "cornice failure triggered slab mid-slope",
    "surface hoar buried 40cm down reactive in tests",
    "",
)


@dataclass(frozen=True)
class SynthConfig:
    """Deterministic synthetic-dataset parameters."""

    seed: int = 42
    n_operations: int = 4
    n_days: int = 3
    reports_per_day: tuple[int, int] = (1, 6)
    ordinal_fraction: float = 0.35

    def __post_init__(self) -> None:
        lo, hi = self.reports_per_day
        if self.n_operations < 1 or self.n_days < 1 or lo < 1 or hi < lo:
            raise ValueError("synthetic bounds must be positive and ordered")
        if not 0.0 <= self.ordinal_fraction <= 1.0:
            raise ValueError(f"ordinal_fraction {self.ordinal_fraction} outside [0, 1]")


def _star_ring(rng, cx: float, cy: float) -> tuple[tuple[float, float], ...]:
    # evenly spaced angles with bounded jitter: every angular gap stays
    # below pi, which guarantees a simple (non-self-intersecting) ring
    k = int(rng.integers(7, 11))
    step = 2.0 * np.pi / k
    angles = step * np.arange(k) + rng.uniform(-0.3 * step, 0.3 * step, k)
    radii = rng.uniform(0.06, 0.16, k)
    pts = [
        (round(cx + rr * math.cos(a), 5), round(cy + rr * math.sin(a), 5))
        for a, rr in zip(angles, radii)
    ]
    return tuple(pts)


def generate_synthetic(
    config: SynthConfig, vocab: Optional[Vocabularies] = None
) -> tuple[list[AvalancheObservationReport], list[OperationTenure], list[WeatherReading]]:
    """Generate a reproducible dataset satisfying every domain invariant.

    The same seed yields byte-identical serialized output. The share of
    ordinal counts hits ``ordinal_fraction`` exactly (rounded to the
    nearest report) so variant-preservation checks can count on it.
    """
    vocab = vocab or Vocabularies()
    rng = np.random.default_rng(config.seed)

    # tenures first: star-shaped polygons scattered over a lon/lat box
    tenures: list[OperationTenure] = []
    for i in range(config.n_operations):
        cx = -117.9 + (i % 3) * 0.5 + float(rng.uniform(-0.08, 0.08))
        cy = 50.9 + (i // 3) * 0.4 + float(rng.uniform(-0.06, 0.06))
        tenures.append(
            OperationTenure(
                operation_id=f"op-{i + 1:02d}",
                rings=(_star_ring(rng, cx, cy),),
                display_name=_OPERATION_NAMES[i % len(_OPERATION_NAMES)],
            )
        )

    # report skeletons, then assign ordinal counts to an exact share
    lo, hi = config.reports_per_day
    slots: list[tuple[int, int]] = []
    for day in range(config.n_days):
        for op in range(config.n_operations):
            for _ in range(int(rng.integers(lo, hi + 1))):
                slots.append((day, op))

    n_total = len(slots)
    n_ordinal = int(round(config.ordinal_fraction * n_total))
    ordinal_slots = set(rng.permutation(n_total)[:n_ordinal].tolist())

    size_p = 0.55 ** np.arange(len(SIZE_CLASSES))
    size_p /= size_p.sum()
    bins = vocab.bins.entries
    bin_p = 0.5 ** np.arange(len(bins))
    bin_p /= bin_p.sum()
    trig_real = [t for t in vocab.triggers if t != UNSPECIFIED]
    prob_real = [p for p in vocab.problem_types if p != UNSPECIFIED]

    reports: list[AvalancheObservationReport] = []
    for idx, (day, op) in enumerate(slots):
        occurred = SYNTH_BASE_DATE + timedelta(days=day)
        delay_days = int(rng.integers(0, 2))
        reported = datetime(
            occurred.year, occurred.month, occurred.day, tzinfo=timezone.utc
        ) + timedelta(
            days=delay_days,
            hours=int(rng.integers(7, 19)),
            minutes=int(rng.integers(0, 60)),
        )

        if idx in ordinal_slots:
            entry = bins[int(rng.choice(len(bins), p=bin_p))]
            count: AvalancheCount = OrdinalCount(entry.label, entry.lo, entry.hi)
        else:
            count = NumericCount(min(int(rng.geometric(0.3)) - 1, 60))

        size = SIZE_CLASSES[int(rng.choice(len(SIZE_CLASSES), p=size_p))]

        emin = 50.0 * int(rng.integers(12, 57))
        emax = min(emin + 50.0 * int(rng.integers(0, 17)), 9000.0)

        if rng.random() < 0.10:
            aspect = AspectInterval(0.0, 0.0, True)
        else:
            aspect = AspectInterval(
                45.0 * int(rng.integers(0, 8)), 45.0 * int(rng.integers(0, 8)), False
            )

        trigger = trig_real[int(rng.integers(0, len(trig_real)))] if rng.random() > 0.08 else UNSPECIFIED
        problem = prob_real[int(rng.integers(0, len(prob_real)))] if rng.random() > 0.08 else UNSPECIFIED

        reports.append(
            AvalancheObservationReport(
                report_id=f"rpt-{idx + 1:05d}",
                operation_id=tenures[op].operation_id,
                reported_at=reported,
                occurred_on=occurred,
                count=count,
                size=size,
                trigger=trigger,
                problem_type=problem,
                elevation=ElevationInterval(emin, emax),
                aspect=aspect,
                percent_observed=int(5 * rng.integers(2, 21)),
                comment=_COMMENTS[int(rng.integers(0, len(_COMMENTS)))],
            )
        )

    # hourly weather per station, one station per operation
    readings: list[WeatherReading] = []
    hours = 24 * (config.n_days + 1)
    for i, tenure in enumerate(tenures):
        station = f"wx-{i + 1:02d}"
        base_temp = float(rng.uniform(-12.0, -4.0))
        trend = float(rng.uniform(-0.08, 0.08))
        storm_left = 0
        for h in range(hours):
            ts = datetime(
                SYNTH_BASE_DATE.year, SYNTH_BASE_DATE.month, SYNTH_BASE_DATE.day,
                tzinfo=timezone.utc,
            ) + timedelta(hours=h)
            if storm_left == 0 and rng.random() < 0.06:
                storm_left = int(rng.integers(3, 10))
            precip = round(float(rng.exponential(1.2)), 1) if storm_left > 0 else 0.0
            storm_left = max(storm_left - 1, 0)
            temp = round(
                base_temp + trend * h + 3.0 * math.sin(2.0 * math.pi * (h - 14) / 24.0)
                + float(rng.normal(0.0, 0.6)),
                1,
            )
            wind = round(float(rng.gamma(2.0, 7.0)), 1)
            wdir = round(float(rng.uniform(0.0, 360.0)) % 360.0, 0)
            if wdir >= 360.0:
                wdir = 0.0

            def drop(value):
                return None if rng.random() < 0.04 else value

            readings.append(
                WeatherReading(
                    station_id=station,
                    timestamp=ts,
                    precip_mm=drop(precip),
                    wind_speed_kmh=drop(wind),
                    wind_dir_deg=drop(wdir),
                    temp_c=drop(temp),
                )
            )

    return reports, tenures, readings
