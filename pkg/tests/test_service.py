from __future__ import annotations

import json
import threading

import pytest
from fastapi.testclient import TestClient

from avyview.config import AppConfig
from avyview.ingest import SynthConfig
from avyview.service import DatasetStore, SessionManager, create_app
from avyview.selection import SetSelection


@pytest.fixture()
def data_dir(tmp_path):
    store = DatasetStore(tmp_path, AppConfig())
    store.write_synthetic("demo", SynthConfig(seed=42))
    return tmp_path


@pytest.fixture()
def client(data_dir):
    app = create_app(data_dir)
    with TestClient(app) as c:
        yield c


def _all_view_ids(body: dict) -> dict[str, list[str]]:
    views = {
        "timeline": [
            m["report_id"]
            for b in body["timeline"]["bins"]
            if b["glyph"]
            for m in b["glyph"]["members"]
        ],
        "matrix": [
            m["report_id"]
            for c in body["matrix"]["cells"]
            for m in c["glyph"]["members"]
        ],
        "map": [
            m["report_id"]
            for o in body["map"]["operations"]
            if o["glyph"]
            for m in o["glyph"]["members"]
        ],
        "elevation": [s["report_id"] for s in body["elevation"]["segments"]],
        "aspect": [a["report_id"] for a in body["aspect"]["arcs"]],
    }
    return views


class TestDatasets:
    def test_list(self, client):
        got = client.get("/api/datasets").json()
        assert got["datasets"][0]["dataset_id"] == "demo"
        assert got["datasets"][0]["reports"] == 45

    def test_viewmodels_partition(self, client):
        body = client.get("/api/datasets/demo/viewmodels").json()
        views = _all_view_ids(body)
        want = sorted(views["elevation"])
        for name, ids in views.items():
            assert sorted(ids) == want, name

    def test_viewmodels_date_range_clips(self, client):
        body = client.get(
            "/api/datasets/demo/viewmodels", params={"from": "2020-02-01", "to": "2020-02-01"}
        ).json()
        assert len(body["timeline"]["bins"]) == 1
        assert body["timeline"]["clipped"] > 0

    def test_unknown_dataset_404(self, client):
        assert client.get("/api/datasets/nope/viewmodels").status_code == 404

    def test_get_idempotent_bytes(self, client):
        a = client.get("/api/datasets/demo/viewmodels").content
        b = client.get("/api/datasets/demo/viewmodels").content
        assert a == b

    def test_ingest_endpoint_reports_diagnostics(self, client):
        good = json.dumps(
            {
                "report_id": "x-1",
                "operation_id": "op-1",
                "reported_at": "2020-02-02T10:00:00Z",
                "occurred_on": "2020-02-02",
                "count": "several",
                "size": 2.0,
                "trigger": "natural",
                "problem_type": "storm-slab",
                "elevation": {"min_m": 1000, "max_m": 1500},
                "aspect": {"start_deg": 0, "end_deg": 90},
                "percent_observed": 50,
            }
        )
        bad = good.replace('"x-1"', '"x-2"').replace('"min_m": 1000', '"min_m": 2000')
        got = client.post(
            "/api/datasets/fresh/ingest", json={"reports_jsonl": good + "\n" + bad + "\n"}
        ).json()
        assert got["reports"] == 1
        codes = [d["code"] for d in got["diagnostics"]]
        assert "ELEV_INVERTED" in codes

    def test_ingest_unreadable_400(self, client):
        got = client.post(
            "/api/datasets/x/ingest", json={"reports_csv": "not,the,header\n1,2,3\n"}
        )
        assert got.status_code == 400


class TestTooltip:
    def test_ordinal_label_preserved(self, client):
        body = client.get("/api/datasets/demo/viewmodels").json()
        ordinal_ids = [
            m["report_id"]
            for c in body["matrix"]["cells"]
            for m in c["glyph"]["members"]
            if m["family"] == "ordinal-green"
        ]
        assert ordinal_ids, "seed 42 should produce ordinal reports"
        tip = client.get(f"/api/reports/{ordinal_ids[0]}/tooltip").json()
        assert tip["count"]["variant"] == "ordinal"
        assert tip["count"]["label"] in tip["count_display"]

    def test_unknown_report_404(self, client):
        assert client.get("/api/reports/ghost/tooltip").status_code == 404


class TestWeather:
    def test_summary_shape(self, client):
        got = client.get("/api/weather/summary", params={"window": 24}).json()
        assert got["window_hours"] == 24
        assert len(got["stations"]) == 4
        assert got["regional"]["station_count"] == 4

    def test_bad_window_400(self, client):
        assert client.get("/api/weather/summary", params={"window": 13}).status_code == 400

    def test_station_detail_newest_first(self, client):
        got = client.get("/api/weather/stations/wx-01", params={"window": 24}).json()
        stamps = [r["timestamp"] for r in got["readings"]]
        assert stamps == sorted(stamps, reverse=True)

    def test_unknown_station_404(self, client):
        assert client.get("/api/weather/stations/wx-99").status_code == 404


class TestSessions:
    def _session(self, client) -> str:
        got = client.post("/api/sessions", json={"dataset_id": "demo"})
        assert got.status_code == 200
        return got.json()["session_id"]

    def test_selection_flow(self, client):
        sid = self._session(client)
        body = client.get("/api/datasets/demo/viewmodels").json()
        rid = body["elevation"]["segments"][0]["report_id"]

        got = client.post(
            f"/api/sessions/{sid}/selection", json={"type": "set", "ids": [rid]}
        ).json()
        assert got["version"] == 1
        assert got["selected_count"] == 1

        highlights = client.get(f"/api/sessions/{sid}/highlights").json()
        assert highlights["selected"] == [rid]
        assert highlights["version"] == 1

    def test_highlight_flags_consistent_across_views(self, client):
        sid = self._session(client)
        body = client.get("/api/datasets/demo/viewmodels").json()
        ids = sorted(_all_view_ids(body)["elevation"])[:3]
        client.post(f"/api/sessions/{sid}/selection", json={"type": "set", "ids": ids})

        annotated = client.get(f"/api/sessions/{sid}/viewmodels").json()
        flagged = {
            "timeline": sorted(
                m["report_id"]
                for b in annotated["timeline"]["bins"]
                if b["glyph"]
                for m in b["glyph"]["members"]
                if m["highlight"]
            ),
            "matrix": sorted(
                m["report_id"]
                for c in annotated["matrix"]["cells"]
                for m in c["glyph"]["members"]
                if m["highlight"]
            ),
            "map": sorted(
                m["report_id"]
                for o in annotated["map"]["operations"]
                if o["glyph"]
                for m in o["glyph"]["members"]
                if m["highlight"]
            ),
            "elevation": sorted(
                s["report_id"] for s in annotated["elevation"]["segments"] if s["highlight"]
            ),
            "aspect": sorted(
                a["report_id"] for a in annotated["aspect"]["arcs"] if a["highlight"]
            ),
        }
        assert all(v == sorted(ids) for v in flagged.values()), flagged

    def test_brush_action_over_http(self, client):
        sid = self._session(client)
        got = client.post(
            f"/api/sessions/{sid}/selection",
            json={
                "type": "brush",
                "predicate": {"kind": "date_range", "from": "2020-02-01", "to": "2020-02-03"},
            },
        ).json()
        assert got["selected_count"] == 45  # every report is in the 3-day window

    def test_unknown_session_404(self, client):
        assert client.get("/api/sessions/nope/highlights").status_code == 404

    def test_unknown_ids_warned_not_fatal(self, client):
        sid = self._session(client)
        got = client.post(
            f"/api/sessions/{sid}/selection", json={"type": "add", "ids": ["ghost"]}
        ).json()
        assert got["ignored_unknown"] == 1
        assert got["selected_count"] == 0

    def test_writes_serialized_per_session(self, client):
        sid = self._session(client)
        errors = []

        def worker(k):
            try:
                r = client.post(
                    f"/api/sessions/{sid}/selection", json={"type": "clear"}
                )
                assert r.status_code == 200
            except Exception as exc:  # pragma: no cover
                errors.append(exc)

        threads = [threading.Thread(target=worker, args=(k,)) for k in range(12)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        got = client.get(f"/api/sessions/{sid}/highlights").json()
        assert got["version"] == 12


class TestEventSourcing:
    def test_restart_replays_session_log(self, data_dir):
        app = create_app(data_dir)
        with TestClient(app) as client:
            sid = client.post("/api/sessions", json={"dataset_id": "demo"}).json()[
                "session_id"
            ]
            body = client.get("/api/datasets/demo/viewmodels").json()
            ids = sorted(_all_view_ids(body)["elevation"])
            client.post(f"/api/sessions/{sid}/selection", json={"type": "set", "ids": ids[:5]})
            client.post(f"/api/sessions/{sid}/selection", json={"type": "remove", "ids": ids[:2]})
            client.post(
                f"/api/sessions/{sid}/selection",
                json={"type": "brush", "additive": True,
                      "predicate": {"kind": "count_variant", "variant": "ordinal"}},
            )
            want = client.get(f"/api/sessions/{sid}/highlights").json()

        # fresh process state over the same directory
        app2 = create_app(data_dir)
        with TestClient(app2) as client2:
            got = client2.get(f"/api/sessions/{sid}/highlights").json()
            assert got["version"] == want["version"]
            assert got["selected"] == want["selected"]

    def test_store_level_replay_equivalence(self, data_dir):
        config = AppConfig()
        store = DatasetStore(data_dir, config)
        store.load_all()
        sessions = SessionManager(data_dir, store)
        session = sessions.create("demo")
        reports = store.get("demo").reports
        ids = [r.report_id for r in reports[:4]]
        for i in range(1, 5):
            sessions.apply(session.session_id, SetSelection(frozenset(ids[:i])))
        want = sessions.get(session.session_id).state

        again = SessionManager(data_dir, store)
        assert again.get(session.session_id).state == want
