from __future__ import annotations

import json
from datetime import date, datetime, timedelta, timezone

import pytest
from hypothesis import given, settings, strategies as st

from avyview.ingest import (
    CSV_HEADER,
    SynthConfig,
    UnparseableCount,
    UnreadableInput,
    format_count,
    generate_synthetic,
    parse_count_field,
    parse_reports,
    parse_tenures,
    parse_weather,
    serialize_reports,
    serialize_tenures,
    serialize_weather,
)
from avyview.model import (
    AspectInterval,
    AvalancheObservationReport,
    ElevationInterval,
    NumericCount,
    OrdinalCount,
    Vocabularies,
)

UTC = timezone.utc
VOCAB = Vocabularies()


def _record(**overrides) -> dict:
    base = {
        "report_id": "r-1",
        "operation_id": "op-1",
        "reported_at": "2020-02-02T14:30:00Z",
        "occurred_on": "2020-02-01",
        "count": 3,
        "size": 2.0,
        "trigger": "natural",
        "problem_type": "storm-slab",
        "elevation": {"min_m": 1800, "max_m": 2400},
        "aspect": {"start_deg": 315, "end_deg": 45, "full_circle": False},
        "percent_observed": 60,
        "comment": "",
    }
    base.update(overrides)
    return base


def _jsonl(*records) -> bytes:
    return ("\n".join(json.dumps(r) for r in records) + "\n").encode()


class TestParseCountField:
    def test_several_is_the_2_9_bin(self):
        got = parse_count_field("several", VOCAB)
        assert got == OrdinalCount("several", 2, 9)

    def test_digits_are_numeric(self):
        assert parse_count_field("0", VOCAB) == NumericCount(0)
        assert parse_count_field("7", VOCAB) == NumericCount(7)

    def test_case_and_whitespace_insensitive(self):
        assert parse_count_field("  Several ", VOCAB) == OrdinalCount("several", 2, 9)

    def test_garbage_rejected(self):
        with pytest.raises(UnparseableCount):
            parse_count_field("a few-ish", VOCAB)

    def test_negative_rejected(self):
        with pytest.raises(UnparseableCount):
            parse_count_field("-3", VOCAB)


class TestParseReports:
    def test_ordinal_label_preserved(self):
        reports, diags = parse_reports(_jsonl(_record(count="several")))
        assert diags == []
        assert reports[0].count == OrdinalCount("several", 2, 9)

    def test_numeric_string_vs_number(self):
        reports, _ = parse_reports(_jsonl(_record(count=7)))
        assert reports[0].count == NumericCount(7)

    def test_inverted_elevation_rejected(self):
        data = _jsonl(
            _record(),
            _record(report_id="r-2", elevation={"min_m": 2400, "max_m": 1800}),
        )
        reports, diags = parse_reports(data)
        assert len(reports) == 1
        assert len(diags) == 1
        assert diags[0].code == "ELEV_INVERTED"
        assert diags[0].severity == "error"

    def test_record_bookkeeping(self):
        data = _jsonl(
            _record(),
            _record(report_id="r-2", size=2.3),
            _record(report_id="r-3"),
            {"nope": 1},
        )
        reports, diags = parse_reports(data)
        assert len(reports) + len(diags) == 4
        assert [r.report_id for r in reports] == ["r-1", "r-3"]

    def test_missing_trigger_maps_to_unspecified(self):
        record = _record()
        del record["trigger"]
        reports, diags = parse_reports(_jsonl(record))
        assert diags == []
        assert reports[0].trigger == "unspecified"

    def test_unknown_trigger_rejected(self):
        reports, diags = parse_reports(_jsonl(_record(trigger="meteor")))
        assert reports == []
        assert diags[0].code == "UNKNOWN_TRIGGER"

    def test_duplicate_report_id_rejected(self):
        reports, diags = parse_reports(_jsonl(_record(), _record()))
        assert len(reports) == 1
        assert diags[0].code == "DUPLICATE_REPORT_ID"

    def test_not_utf8_aborts(self):
        with pytest.raises(UnreadableInput):
            parse_reports(b"\xff\xfe\x00junk")

    def test_occurred_after_reported_rejected(self):
        reports, diags = parse_reports(_jsonl(_record(occurred_on="2020-02-05")))
        assert reports == []
        assert diags[0].code == "OCCURRED_AFTER_REPORTED"

    @settings(max_examples=150, deadline=None)
    @given(st.text(max_size=200))
    def test_total_over_arbitrary_text(self, text):
        reports, diags = parse_reports(text.encode("utf-8"))
        assert isinstance(reports, list) and isinstance(diags, list)

    @settings(max_examples=100, deadline=None)
    @given(st.binary(max_size=200))
    def test_fuzz_bytes_never_crash_beyond_unreadable(self, blob):
        try:
            reports, diags = parse_reports(blob)
        except UnreadableInput:
            return  # documented abort for undecodable bytes
        assert isinstance(reports, list) and isinstance(diags, list)


class TestCsvReports:
    def test_round_trip_via_csv(self):
        row = (
            "r-9,op-1,2020-02-02T14:30:00Z,2020-02-01,several,2.0,natural,"
            "storm-slab,1800,2400,315,45,false,60,ski cut results"
        )
        data = (",".join(CSV_HEADER) + "\n" + row + "\n").encode()
        reports, diags = parse_reports(data, fmt="csv")
        assert diags == []
        r = reports[0]
        assert r.count == OrdinalCount("several", 2, 9)
        assert r.elevation == ElevationInterval(1800, 2400)
        assert r.aspect == AspectInterval(315, 45, False)
        assert r.comment == "ski cut results"

    def test_bad_header_aborts(self):
        with pytest.raises(UnreadableInput):
            parse_reports(b"a,b,c\n1,2,3\n", fmt="csv")

    def test_bad_row_is_diagnosed(self):
        row = "r-9,op-1,2020-02-02T14:30:00Z,2020-02-01,banana,2.0,,,1800,2400,0,0,,60,"
        data = (",".join(CSV_HEADER) + "\n" + row + "\n").encode()
        reports, diags = parse_reports(data, fmt="csv")
        assert reports == []
        assert diags[0].code == "UNPARSEABLE_COUNT"


# hypothesis strategy for valid reports -------------------------------------

_token = st.text(
    alphabet="abcdefghijklmnopqrstuvwxyz0123456789-", min_size=1, max_size=12
)
_sizes = st.sampled_from([1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0])
_counts = st.one_of(
    st.integers(0, 500).map(NumericCount),
    st.sampled_from(list(VOCAB.bins.entries)),
)


@st.composite
def _reports(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    out = []
    for i in range(n):
        occurred = date(2020, 2, 1) + timedelta(days=draw(st.integers(0, 5)))
        reported = datetime(
            occurred.year, occurred.month, occurred.day, tzinfo=UTC
        ) + timedelta(hours=draw(st.integers(8, 40)))
        emin = draw(st.integers(0, 3000))
        start = draw(st.floats(0, 359.5))
        end = draw(st.floats(0, 359.5))
        out.append(
            AvalancheObservationReport(
                report_id=f"r-{i}-{draw(_token)}",
                operation_id=draw(_token),
                reported_at=reported,
                occurred_on=occurred,
                count=draw(_counts),
                size=draw(_sizes),
                trigger=draw(st.sampled_from(VOCAB.triggers)),
                problem_type=draw(st.sampled_from(VOCAB.problem_types)),
                elevation=ElevationInterval(emin, emin + draw(st.integers(0, 1500))),
                aspect=AspectInterval(start, end, draw(st.booleans())),
                percent_observed=draw(st.integers(0, 100)),
                comment=draw(st.text(max_size=60)),
            )
        )
    return out


class TestSerializeRoundTrip:
    @settings(max_examples=60, deadline=None)
    @given(_reports())
    def test_parse_inverts_serialize(self, reports):
        data = serialize_reports(reports)
        parsed, diags = parse_reports(data)
        assert diags == []
        assert parsed == reports

    @settings(max_examples=30, deadline=None)
    @given(_reports())
    def test_byte_stable_after_one_normalization(self, reports):
        once = serialize_reports(reports)
        again = serialize_reports(parse_reports(once)[0])
        assert once == again

    def test_empty_list_is_valid_document(self):
        assert serialize_reports([]) == b""
        assert parse_reports(b"") == ([], [])

    def test_ordinal_labels_not_midpoints_in_output(self):
        r, _ = parse_reports(_jsonl(_record(count="several")))
        text = serialize_reports(r).decode()
        assert '"several"' in text
        assert "5.5" not in text

    def test_format_count_presentation(self):
        assert format_count(NumericCount(7)) == "7"
        assert format_count(OrdinalCount("several", 2, 9)) == "several (2–9)"
        assert format_count(OrdinalCount("numerous", 10, None)) == "numerous (10+)"


class TestParseTenures:
    def test_single_square(self):
        doc = {
            "type": "FeatureCollection",
            "features": [
                {
                    "type": "Feature",
                    "properties": {"operation_id": "op-1", "display_name": "Operation One"},
                    "geometry": {
                        "type": "Polygon",
                        "coordinates": [[[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]],
                    },
                }
            ],
        }
        tenures, diags = parse_tenures(json.dumps(doc).encode())
        assert diags == []
        assert len(tenures) == 1
        assert tenures[0].outer_ring == ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))

    def test_missing_operation_id(self):
        doc = {
            "type": "FeatureCollection",
            "features": [
                {
                    "type": "Feature",
                    "properties": {"display_name": "X"},
                    "geometry": {"type": "Polygon", "coordinates": [[[0, 0], [1, 0], [1, 1]]]},
                }
            ],
        }
        tenures, diags = parse_tenures(json.dumps(doc).encode())
        assert tenures == []
        assert diags[0].code == "MISSING_OP_ID"

    def test_degenerate_ring_counted(self):
        def feat(op, coords):
            return {
                "type": "Feature",
                "properties": {"operation_id": op, "display_name": op},
                "geometry": {"type": "Polygon", "coordinates": [coords]},
            }

        doc = {
            "type": "FeatureCollection",
            "features": [
                feat("op-1", [[0, 0], [1, 0], [1, 1], [0, 0]]),
                feat("op-2", [[2, 2], [3, 2], [3, 3], [2, 2]]),
                feat("op-3", [[5, 5], [6, 6], [5, 5]]),  # 2 distinct vertices
            ],
        }
        tenures, diags = parse_tenures(json.dumps(doc).encode())
        assert len(tenures) == 2
        assert len(diags) == 1
        assert diags[0].code == "INVALID_RING"

    def test_malformed_json_aborts(self):
        with pytest.raises(UnreadableInput):
            parse_tenures(b"{nope")

    def test_round_trip(self, seed42):
        _, tenures, _ = seed42
        again, diags = parse_tenures(serialize_tenures(tenures))
        assert diags == []
        assert again == tenures


class TestParseWeather:
    def test_missing_cells_are_none(self):
        data = (
            "station_id,timestamp,precip_mm,wind_speed_kmh,wind_dir_deg,temp_c\n"
            "wx-1,2020-02-01T00:00:00Z,1.5,,270,-8.2\n"
        ).encode()
        readings, diags = parse_weather(data)
        assert diags == []
        r = readings[0]
        assert r.precip_mm == 1.5
        assert r.wind_speed_kmh is None
        assert r.temp_c == -8.2

    def test_duplicate_timestamp_rejected(self):
        data = (
            "station_id,timestamp,precip_mm,wind_speed_kmh,wind_dir_deg,temp_c\n"
            "wx-1,2020-02-01T00:00:00Z,1,2,3,4\n"
            "wx-1,2020-02-01T00:00:00Z,9,9,9,9\n"
        ).encode()
        readings, diags = parse_weather(data)
        assert len(readings) == 1
        assert diags[0].code == "DUPLICATE_TIMESTAMP"

    def test_strictly_increasing_per_station(self, seed42):
        _, _, readings = seed42
        data = serialize_weather(readings)
        parsed, _ = parse_weather(data)
        per = {}
        for r in parsed:
            per.setdefault(r.station_id, []).append(r.timestamp)
        for ts in per.values():
            assert all(a < b for a, b in zip(ts, ts[1:]))


class TestGenerateSynthetic:
    def test_deterministic_bytes(self):
        a = generate_synthetic(SynthConfig(seed=42))
        b = generate_synthetic(SynthConfig(seed=42))
        assert serialize_reports(a[0]) == serialize_reports(b[0])
        assert serialize_tenures(a[1]) == serialize_tenures(b[1])
        assert serialize_weather(a[2]) == serialize_weather(b[2])

    def test_different_seed_differs(self):
        a = generate_synthetic(SynthConfig(seed=1))
        b = generate_synthetic(SynthConfig(seed=2))
        assert serialize_reports(a[0]) != serialize_reports(b[0])

    def test_ordinal_fraction_zero_all_numeric(self):
        reports, _, _ = generate_synthetic(SynthConfig(seed=3, ordinal_fraction=0.0))
        assert all(isinstance(r.count, NumericCount) for r in reports)

    @pytest.mark.parametrize("fraction", [0.2, 0.35, 0.8, 1.0])
    def test_ordinal_fraction_within_one_report(self, fraction):
        reports, _, _ = generate_synthetic(SynthConfig(seed=9, ordinal_fraction=fraction))
        n_ord = sum(isinstance(r.count, OrdinalCount) for r in reports)
        assert abs(n_ord - fraction * len(reports)) <= 1.0

    def test_three_day_window(self):
        reports, _, _ = generate_synthetic(SynthConfig(seed=42, n_days=3))
        days = {r.occurred_on for r in reports}
        assert (max(days) - min(days)).days <= 2

    def test_every_domain_invariant_holds(self, seed42):
        reports, tenures, readings = seed42
        # construction enforces invariants; reference integrity on top
        ops = {t.operation_id for t in tenures}
        assert {r.operation_id for r in reports} <= ops
        assert len({r.report_id for r in reports}) == len(reports)

    def test_bad_config_rejected(self):
        with pytest.raises(ValueError):
            SynthConfig(seed=1, n_days=0)
        with pytest.raises(ValueError):
            SynthConfig(seed=1, ordinal_fraction=1.5)
        with pytest.raises(ValueError):
            SynthConfig(seed=1, reports_per_day=(4, 2))
