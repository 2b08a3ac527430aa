from __future__ import annotations

import filecmp
import json
import xml.etree.ElementTree as ET

from avyview.cli import main


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSynth:
    def test_same_seed_identical_directories(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(["synth", "--seed", 42, "--out", a], capsys)[0] == 0
        assert run(["synth", "--seed", 42, "--out", b], capsys)[0] == 0
        match, mismatch, errors = filecmp.cmpfiles(
            a, b, ["reports.jsonl", "tenures.json", "weather.csv"], shallow=False
        )
        assert mismatch == [] and errors == []
        assert len(match) == 3

    def test_seed_changes_output(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        run(["synth", "--seed", 1, "--out", a], capsys)
        run(["synth", "--seed", 2, "--out", b], capsys)
        assert (a / "reports.jsonl").read_bytes() != (b / "reports.jsonl").read_bytes()


class TestValidate:
    def test_clean_file_exit_zero(self, tmp_path, capsys):
        out = tmp_path / "d"
        run(["synth", "--seed", 5, "--out", out], capsys)
        code, stdout, err = run(["validate", out / "reports.jsonl"], capsys)
        assert code == 0
        assert "0 rejected" in stdout
        assert err == ""

    def test_bad_record_exit_one_and_diagnostic_on_stderr(self, tmp_path, capsys):
        bad = tmp_path / "bad.jsonl"
        record = {
            "report_id": "r-1",
            "operation_id": "op-1",
            "reported_at": "2020-02-02T10:00:00Z",
            "occurred_on": "2020-02-01",
            "count": 3,
            "size": 2.0,
            "elevation": {"min_m": 2400, "max_m": 1800},
            "aspect": {"start_deg": 0, "end_deg": 90},
            "percent_observed": 50,
        }
        bad.write_text(json.dumps(record) + "\n", encoding="utf-8")
        code, _, err = run(["validate", bad], capsys)
        assert code == 1
        assert "ELEV_INVERTED" in err

    def test_unreadable_file_exit_one(self, tmp_path, capsys):
        blob = tmp_path / "junk.jsonl"
        blob.write_bytes(b"\xff\xfe\x00")
        code, _, err = run(["validate", blob], capsys)
        assert code == 1
        assert "unreadable" in err


class TestIngestAndRender:
    def test_ingest_then_render_svg(self, tmp_path, capsys):
        src = tmp_path / "src"
        data = tmp_path / "data"
        run(["synth", "--seed", 42, "--out", src], capsys)
        code, out, err = run(
            [
                "ingest",
                src / "reports.jsonl",
                src / "tenures.json",
                src / "weather.csv",
                "--dataset",
                "demo",
                "--data",
                data,
            ],
            capsys,
        )
        assert code == 0, err
        assert "45 reports" in out

        svg_a = tmp_path / "a.svg"
        svg_b = tmp_path / "b.svg"
        for target in (svg_a, svg_b):
            code, _, _ = run(
                [
                    "render-svg",
                    "--dataset",
                    "demo",
                    "--view",
                    "timeline",
                    "--out",
                    target,
                    "--data",
                    data,
                ],
                capsys,
            )
            assert code == 0
        assert svg_a.read_bytes() == svg_b.read_bytes()
        ET.parse(svg_a)  # well-formed XML

    def test_render_unknown_dataset(self, tmp_path, capsys):
        code, _, err = run(
            ["render-svg", "--dataset", "nope", "--view", "map",
             "--out", tmp_path / "x.svg", "--data", tmp_path],
            capsys,
        )
        assert code == 1
        assert "unknown dataset" in err


class TestConfigFile:
    def test_custom_bins_and_vocab(self, tmp_path, capsys):
        cfg = tmp_path / "avyview.cfg"
        cfg.write_text(
            "[bins]\n"
            "a-few = 1..3\n"
            "several = 2..9\n"
            "[vocab]\n"
            "triggers = natural, skier\n"
            "[glyph]\n"
            "darkness_cap = 50\n",
            encoding="utf-8",
        )
        reports = tmp_path / "r.jsonl"
        record = {
            "report_id": "r-1",
            "operation_id": "op-1",
            "reported_at": "2020-02-02T10:00:00Z",
            "occurred_on": "2020-02-01",
            "count": "a-few",
            "size": 2.0,
            "trigger": "skier",
            "problem_type": "storm-slab",
            "elevation": {"min_m": 1000, "max_m": 1500},
            "aspect": {"start_deg": 0, "end_deg": 90},
            "percent_observed": 50,
        }
        reports.write_text(json.dumps(record) + "\n", encoding="utf-8")
        code, out, err = run(["--config", cfg, "validate", reports], capsys)
        assert code == 0, err

    def test_broken_config_exit_two(self, tmp_path, capsys):
        cfg = tmp_path / "broken.cfg"
        cfg.write_text("[bins]\nseveral = banana\n", encoding="utf-8")
        code, _, err = run(["--config", cfg, "validate", cfg], capsys)
        assert code == 2
        assert "configuration error" in err
