"""HTTP service: datasets, sessions, linked selection, SSE push.

Storage is plain files under one data directory — inspectable and
diffable, no database:

    <data_dir>/datasets/<id>/reports.jsonl     normalized report file
    <data_dir>/datasets/<id>/tenures.json      GeoJSON tenures
    <data_dir>/datasets/<id>/weather.csv       station telemetry
    <data_dir>/sessions/<sid>.log              append-only action log

Sessions are event-sourced: the log replays to the current selection
state, and a restart reproduces it exactly. Selection writes are
serialized per session (one logical writer); reads run concurrently
against immutable snapshots. Selection changes push (session_id,
version) to SSE subscribers so clients re-sync highlights race-free.
"""

from __future__ import annotations

import json
import queue
import threading
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import Response, StreamingResponse

from .config import AppConfig, load_config
from .ingest import (
    Diagnostic,
    UnreadableInput,
    generate_synthetic,
    parse_reports,
    parse_tenures,
    parse_weather,
    serialize_reports,
    serialize_tenures,
    serialize_weather,
    SynthConfig,
)
from .model import AvalancheObservationReport, OperationTenure, WeatherReading
from .selection import (
    SelectionState,
    action_from_json,
    action_to_json,
    annotate_highlights,
    apply_action,
    tooltip_payload,
    UnknownReportId,
)
from .svg import render_svg
from .theme import theme_json
from .views import build_all, bundle_to_json
from .weather import UnknownStation, regional_summary, station_detail, summarize_all

WEATHER_WINDOWS = (24, 48, 72)


def _diag_json(d: Diagnostic) -> dict:
    return {"severity": d.severity, "locator": d.locator, "code": d.code, "message": d.message}


@dataclass
class Dataset:
    dataset_id: str
    reports: list[AvalancheObservationReport]
    tenures: list[OperationTenure]
    readings: list[WeatherReading]
    loaded_at: datetime
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def __post_init__(self) -> None:
        known_ops = {t.operation_id for t in self.tenures}
        for r in self.reports:
            if r.operation_id not in known_ops:
                self.diagnostics.append(
                    Diagnostic(
                        "warning",
                        r.report_id,
                        "UNKNOWN_OPERATION",
                        f"report references operation {r.operation_id!r} with no tenure",
                    )
                )


class DatasetStore:
    """Loads and persists datasets under ``<data_dir>/datasets``."""

    def __init__(self, data_dir: Path, config: AppConfig):
        self.data_dir = Path(data_dir)
        self.config = config
        self.datasets: dict[str, Dataset] = {}
        self._lock = threading.Lock()
        (self.data_dir / "datasets").mkdir(parents=True, exist_ok=True)

    def load_all(self) -> None:
        """Load every persisted dataset; fails fast on unreadable data."""
        root = self.data_dir / "datasets"
        for path in sorted(root.iterdir()) if root.is_dir() else []:
            if path.is_dir():
                self._load_dir(path.name, path)

    def _load_dir(self, dataset_id: str, path: Path) -> Dataset:
        reports, diags = [], []
        rp = path / "reports.jsonl"
        if rp.exists():
            reports, diags = parse_reports(rp.read_bytes(), "jsonl", self.config.vocab)
        tenures: list[OperationTenure] = []
        tp = path / "tenures.json"
        if tp.exists():
            tenures, tdiags = parse_tenures(tp.read_bytes())
            diags += tdiags
        readings: list[WeatherReading] = []
        wp = path / "weather.csv"
        if wp.exists():
            readings, wdiags = parse_weather(wp.read_bytes())
            diags += wdiags
        ds = Dataset(
            dataset_id=dataset_id,
            reports=reports,
            tenures=tenures,
            readings=readings,
            loaded_at=datetime.now(timezone.utc),
            diagnostics=diags,
        )
        with self._lock:
            self.datasets[dataset_id] = ds  # atomic swap
        return ds

    def get(self, dataset_id: str) -> Dataset:
        ds = self.datasets.get(dataset_id)
        if ds is None:
            raise KeyError(dataset_id)
        return ds

    def ingest(
        self,
        dataset_id: str,
        reports_jsonl: Optional[bytes] = None,
        reports_csv: Optional[bytes] = None,
        tenures_geojson: Optional[bytes] = None,
        weather_csv: Optional[bytes] = None,
    ) -> tuple[Dataset, list[Diagnostic]]:
        """Validate inputs, persist normalized files, swap the dataset in."""
        path = self.data_dir / "datasets" / dataset_id
        path.mkdir(parents=True, exist_ok=True)
        diagnostics: list[Diagnostic] = []

        reports: list[AvalancheObservationReport] = []
        if reports_jsonl is not None:
            got, diags = parse_reports(reports_jsonl, "jsonl", self.config.vocab)
            reports += got
            diagnostics += diags
        if reports_csv is not None:
            got, diags = parse_reports(reports_csv, "csv", self.config.vocab)
            reports += got
            diagnostics += diags
        if reports_jsonl is not None or reports_csv is not None:
            (path / "reports.jsonl").write_bytes(serialize_reports(reports))
        if tenures_geojson is not None:
            tenures, diags = parse_tenures(tenures_geojson)
            diagnostics += diags
            (path / "tenures.json").write_bytes(serialize_tenures(tenures))
        if weather_csv is not None:
            readings, diags = parse_weather(weather_csv)
            diagnostics += diags
            (path / "weather.csv").write_bytes(serialize_weather(readings))

        ds = self._load_dir(dataset_id, path)
        return ds, diagnostics

    def write_synthetic(self, dataset_id: str, synth: SynthConfig) -> Dataset:
        reports, tenures, readings = generate_synthetic(synth, self.config.vocab)
        path = self.data_dir / "datasets" / dataset_id
        path.mkdir(parents=True, exist_ok=True)
        (path / "reports.jsonl").write_bytes(serialize_reports(reports))
        (path / "tenures.json").write_bytes(serialize_tenures(tenures))
        (path / "weather.csv").write_bytes(serialize_weather(readings))
        return self._load_dir(dataset_id, path)


@dataclass
class Session:
    session_id: str
    dataset_id: str
    state: SelectionState
    log_path: Path


class SessionManager:
    """Event-sourced selection sessions with per-session write locks."""

    def __init__(self, data_dir: Path, store: DatasetStore):
        self.dir = Path(data_dir) / "sessions"
        self.dir.mkdir(parents=True, exist_ok=True)
        self.store = store
        self.sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._subscribers: dict[str, list[queue.Queue]] = {}
        self._global = threading.Lock()
        self._replay_all()

    def _replay_all(self) -> None:
        for log in sorted(self.dir.glob("*.log")):
            sid = log.stem
            lines = log.read_text(encoding="utf-8").splitlines()
            if not lines:
                continue
            header = json.loads(lines[0])
            dataset_id = header["dataset_id"]
            try:
                reports = self.store.get(dataset_id).reports
            except KeyError:
                continue  # dataset gone; session log kept but dormant
            state = SelectionState()
            for line in lines[1:]:
                action = action_from_json(json.loads(line))
                state = apply_action(state, action, reports)
            self.sessions[sid] = Session(sid, dataset_id, state, log)
            self._locks[sid] = threading.Lock()

    def create(self, dataset_id: str) -> Session:
        self.store.get(dataset_id)  # raises KeyError for unknown datasets
        with self._global:
            n = len(self.sessions) + 1
            sid = f"s-{n:04d}"
            while sid in self.sessions or (self.dir / f"{sid}.log").exists():
                n += 1
                sid = f"s-{n:04d}"
            log = self.dir / f"{sid}.log"
            log.write_text(
                json.dumps({"session_id": sid, "dataset_id": dataset_id}) + "\n",
                encoding="utf-8",
            )
            session = Session(sid, dataset_id, SelectionState(), log)
            self.sessions[sid] = session
            self._locks[sid] = threading.Lock()
            self._subscribers[sid] = []
            return session

    def get(self, sid: str) -> Session:
        session = self.sessions.get(sid)
        if session is None:
            raise KeyError(sid)
        return session

    def apply(self, sid: str, action) -> SelectionState:
        """Apply an action in strict arrival order for the session."""
        session = self.get(sid)
        with self._locks[sid]:
            reports = self.store.get(session.dataset_id).reports
            state = apply_action(session.state, action, reports)
            with session.log_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(action_to_json(action)) + "\n")
            session.state = state
        self._notify(sid, state.version)
        return state

    def subscribe(self, sid: str) -> queue.Queue:
        q: queue.Queue = queue.Queue()
        with self._global:
            self._subscribers.setdefault(sid, []).append(q)
        return q

    def unsubscribe(self, sid: str, q: queue.Queue) -> None:
        with self._global:
            subs = self._subscribers.get(sid, [])
            if q in subs:
                subs.remove(q)

    def _notify(self, sid: str, version: int) -> None:
        with self._global:
            subs = list(self._subscribers.get(sid, []))
        for q in subs:
            q.put(version)


def _parse_range(from_s: Optional[str], to_s: Optional[str]):
    if from_s is None and to_s is None:
        return None
    if from_s is None or to_s is None:
        raise HTTPException(400, "provide both 'from' and 'to', or neither")
    try:
        d0, d1 = date.fromisoformat(from_s), date.fromisoformat(to_s)
    except ValueError:
        raise HTTPException(400, f"bad date range {from_s!r}..{to_s!r}") from None
    if d0 > d1:
        raise HTTPException(400, f"date range {from_s}..{to_s} is inverted")
    return (d0, d1)


def create_app(data_dir, config: Optional[AppConfig] = None) -> FastAPI:
    config = config or AppConfig()
    store = DatasetStore(Path(data_dir), config)
    store.load_all()
    sessions = SessionManager(Path(data_dir), store)

    app = FastAPI(title="avyview", version="0.1.0")
    app.state.store = store
    app.state.sessions = sessions
    app.state.config = config

    def _dataset(dataset_id: str) -> Dataset:
        try:
            return store.get(dataset_id)
        except KeyError:
            raise HTTPException(404, f"unknown dataset {dataset_id!r}") from None

    def _session(sid: str) -> Session:
        try:
            return sessions.get(sid)
        except KeyError:
            raise HTTPException(404, f"unknown session {sid!r}") from None

    @app.get("/api/datasets")
    def list_datasets():
        return {
            "datasets": [
                {
                    "dataset_id": ds.dataset_id,
                    "reports": len(ds.reports),
                    "tenures": len(ds.tenures),
                    "stations": len({r.station_id for r in ds.readings}),
                    "loaded_at": ds.loaded_at.isoformat(),
                    "warnings": sum(1 for d in ds.diagnostics if d.severity == "warning"),
                }
                for _, ds in sorted(store.datasets.items())
            ]
        }

    @app.post("/api/datasets/{dataset_id}/ingest")
    async def ingest_dataset(dataset_id: str, request: Request):
        body = await request.json()
        if not isinstance(body, dict):
            raise HTTPException(400, "ingest body must be a JSON object")

        def as_bytes(key):
            value = body.get(key)
            if value is None:
                return None
            if not isinstance(value, str):
                raise HTTPException(400, f"{key} must be a string")
            return value.encode("utf-8")

        try:
            ds, diagnostics = store.ingest(
                dataset_id,
                reports_jsonl=as_bytes("reports_jsonl"),
                reports_csv=as_bytes("reports_csv"),
                tenures_geojson=as_bytes("tenures_geojson"),
                weather_csv=as_bytes("weather_csv"),
            )
        except UnreadableInput as exc:
            raise HTTPException(400, str(exc)) from None
        return {
            "dataset_id": ds.dataset_id,
            "reports": len(ds.reports),
            "tenures": len(ds.tenures),
            "diagnostics": [_diag_json(d) for d in diagnostics + ds.diagnostics],
        }

    @app.get("/api/datasets/{dataset_id}/viewmodels")
    def dataset_viewmodels(dataset_id: str, request: Request):
        params = request.query_params
        ds = _dataset(dataset_id)
        rng = _parse_range(params.get("from"), params.get("to"))
        bundle = build_all(ds.reports, ds.tenures, rng, config)
        return {"dataset_id": dataset_id, **bundle_to_json(bundle, config)}

    @app.post("/api/sessions")
    async def create_session(request: Request):
        body = await request.json()
        dataset_id = body.get("dataset_id") if isinstance(body, dict) else None
        if not isinstance(dataset_id, str):
            raise HTTPException(400, "body must carry dataset_id")
        try:
            session = sessions.create(dataset_id)
        except KeyError:
            raise HTTPException(404, f"unknown dataset {dataset_id!r}") from None
        return {
            "session_id": session.session_id,
            "dataset_id": session.dataset_id,
            "version": session.state.version,
        }

    @app.post("/api/sessions/{sid}/selection")
    async def post_selection(sid: str, request: Request):
        session = _session(sid)
        body = await request.json()
        try:
            action = action_from_json(body)
        except (ValueError, KeyError, TypeError) as exc:
            raise HTTPException(400, f"bad selection action: {exc}") from None
        state = sessions.apply(session.session_id, action)
        return {
            "session_id": session.session_id,
            "version": state.version,
            "selected_count": len(state.selected),
            "ignored_unknown": state.ignored_unknown,
        }

    @app.get("/api/sessions/{sid}/highlights")
    def get_highlights(sid: str):
        session = _session(sid)
        return {
            "session_id": session.session_id,
            "dataset_id": session.dataset_id,
            "version": session.state.version,
            "selected": sorted(session.state.selected),
        }

    @app.get("/api/sessions/{sid}/viewmodels")
    def session_viewmodels(sid: str, request: Request):
        session = _session(sid)
        ds = _dataset(session.dataset_id)
        params = request.query_params
        rng = _parse_range(params.get("from"), params.get("to"))
        bundle = build_all(ds.reports, ds.tenures, rng, config)
        bundle = annotate_highlights(bundle, session.state)
        return {
            "dataset_id": ds.dataset_id,
            "session_id": session.session_id,
            "version": session.state.version,
            **bundle_to_json(bundle, config),
        }

    @app.get("/api/sessions/{sid}/events")
    def session_events(sid: str):
        session = _session(sid)
        q = sessions.subscribe(sid)

        def stream():
            try:
                payload = json.dumps(
                    {"session_id": sid, "version": session.state.version}
                )
                yield f"event: selection\ndata: {payload}\n\n"
                while True:
                    try:
                        version = q.get(timeout=15.0)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    payload = json.dumps({"session_id": sid, "version": version})
                    yield f"event: selection\ndata: {payload}\n\n"
            finally:
                sessions.unsubscribe(sid, q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.get("/api/reports/{report_id}/tooltip")
    def report_tooltip(report_id: str):
        for _, ds in sorted(store.datasets.items()):
            try:
                return tooltip_payload(report_id, ds.reports)
            except UnknownReportId:
                continue
        raise HTTPException(404, f"unknown report {report_id!r}")

    def _weather_dataset(dataset_id: Optional[str]) -> Dataset:
        if dataset_id is not None:
            return _dataset(dataset_id)
        if len(store.datasets) == 1:
            return next(iter(store.datasets.values()))
        raise HTTPException(
            400, "multiple datasets loaded; pass ?dataset=<id> to pick one"
        )

    def _weather_now(ds: Dataset) -> datetime:
        # Telemetry files are static drops; "now" is the newest reading.
        if not ds.readings:
            raise HTTPException(404, f"dataset {ds.dataset_id!r} has no weather data")
        return max(r.timestamp for r in ds.readings)

    @app.get("/api/weather/summary")
    def weather_summary(window: int = 24, dataset: Optional[str] = None):
        if window not in WEATHER_WINDOWS:
            raise HTTPException(400, f"window must be one of {WEATHER_WINDOWS}")
        ds = _weather_dataset(dataset)
        now = _weather_now(ds)
        stations = summarize_all(ds.readings, now, window)
        regional = regional_summary(stations) if stations else None

        def stat_json(stat):
            if stat is None:
                return None
            return {
                "min": stat.min,
                "max": stat.max,
                "mean": stat.mean,
                "station_count": stat.station_count,
            }

        return {
            "dataset_id": ds.dataset_id,
            "window_hours": window,
            "now": now.isoformat().replace("+00:00", "Z"),
            "stations": [
                {
                    "station_id": s.station_id,
                    "precip_sum_mm": s.precip_sum_mm,
                    "wind_max_kmh": s.wind_max_kmh,
                    "temp_mean_c": s.temp_mean_c,
                    "temp_trend_c_per_hr": s.temp_trend_c_per_hr,
                    "sample_count": s.sample_count,
                    "missing_count": s.missing_count,
                }
                for s in stations
            ],
            "regional": None
            if regional is None
            else {
                "precip_sum_mm": stat_json(regional.precip_sum_mm),
                "wind_max_kmh": stat_json(regional.wind_max_kmh),
                "temp_mean_c": stat_json(regional.temp_mean_c),
                "temp_trend_c_per_hr": stat_json(regional.temp_trend_c_per_hr),
                "station_count": regional.station_count,
            },
        }

    @app.get("/api/weather/stations/{station_id}")
    def weather_station(station_id: str, window: int = 24, dataset: Optional[str] = None):
        if window not in WEATHER_WINDOWS:
            raise HTTPException(400, f"window must be one of {WEATHER_WINDOWS}")
        ds = _weather_dataset(dataset)
        now = _weather_now(ds)
        try:
            rows = station_detail(station_id, ds.readings, now, window)
        except UnknownStation:
            raise HTTPException(404, f"unknown station {station_id!r}") from None
        return {
            "station_id": station_id,
            "window_hours": window,
            "readings": [
                {
                    "timestamp": r.timestamp.isoformat().replace("+00:00", "Z"),
                    "precip_mm": r.precip_mm,
                    "wind_speed_kmh": r.wind_speed_kmh,
                    "wind_dir_deg": r.wind_dir_deg,
                    "temp_c": r.temp_c,
                }
                for r in rows
            ],
        }

    @app.get("/api/theme")
    def get_theme():
        return theme_json(config.theme)

    @app.get("/api/datasets/{dataset_id}/render/{view}")
    def render_view(dataset_id: str, view: str, session: Optional[str] = None):
        ds = _dataset(dataset_id)
        bundle = build_all(ds.reports, ds.tenures, None, config)
        state = None
        if session is not None:
            state = _session(session).state
        try:
            body = render_svg(bundle, view, config, state)
        except ValueError as exc:
            raise HTTPException(404, str(exc)) from None
        return Response(content=body, media_type="image/svg+xml")

    return app


def serve(
    data_dir,
    port: int = 8764,
    host: str = "127.0.0.1",
    config_path: Optional[str] = None,
) -> None:
    """Run the HTTP service until interrupted; fails fast on bad config."""
    import uvicorn

    config = load_config(config_path)
    app = create_app(data_dir, config)
    uvicorn.run(app, host=host, port=port, log_level="warning")
