"""Command-line entry points.

    avyview synth --seed 42 --out <dir>
    avyview ingest <files...> --dataset <id> --data <dir>
    avyview validate <files...>
    avyview serve --port 8764 --data <dir>
    avyview render-svg --dataset <id> --view timeline --out <file> --data <dir>

Exit code 0 means no error diagnostics; 1 means at least one record was
rejected (or input was unreadable); 2 means bad invocation.

``AVYVIEW_PORT`` and ``AVYVIEW_DATA`` override --port / --data.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .ingest import (
    SynthConfig,
    UnreadableInput,
    generate_synthetic,
    parse_reports,
    parse_tenures,
    parse_weather,
    serialize_reports,
    serialize_tenures,
    serialize_weather,
)
from .svg import VIEW_NAMES, render_svg
from .views import build_all


def _sniff_kind(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix == ".jsonl":
        return "reports-jsonl"
    if suffix == ".json":
        return "tenures"
    if suffix == ".csv":
        head = path.read_bytes()[:200].decode("utf-8", errors="replace")
        return "weather" if head.startswith("station_id,") else "reports-csv"
    raise SystemExit(f"cannot tell what {path} is; expected .jsonl/.json/.csv")


def _parse_file(path: Path, vocab):
    kind = _sniff_kind(path)
    data = path.read_bytes()
    if kind == "reports-jsonl":
        return kind, parse_reports(data, "jsonl", vocab)
    if kind == "reports-csv":
        return kind, parse_reports(data, "csv", vocab)
    if kind == "tenures":
        return kind, parse_tenures(data)
    return kind, parse_weather(data)


def cmd_validate(args) -> int:
    config = load_config(args.config)
    worst = 0
    for name in args.files:
        path = Path(name)
        try:
            _, (records, diagnostics) = _parse_file(path, config.vocab)
        except (UnreadableInput, OSError) as exc:
            print(f"{path}: unreadable: {exc}", file=sys.stderr)
            worst = 1
            continue
        errors = [d for d in diagnostics if d.severity == "error"]
        for d in diagnostics:
            print(f"{path}: {d}", file=sys.stderr)
        print(f"{path}: {len(records)} records ok, {len(errors)} rejected")
        if errors:
            worst = 1
    return worst


def cmd_ingest(args) -> int:
    from .service import DatasetStore

    config = load_config(args.config)
    store = DatasetStore(Path(args.data), config)
    kwargs = {}
    worst = 0
    for name in args.files:
        path = Path(name)
        kind = _sniff_kind(path)
        key = {
            "reports-jsonl": "reports_jsonl",
            "reports-csv": "reports_csv",
            "tenures": "tenures_geojson",
            "weather": "weather_csv",
        }[kind]
        kwargs[key] = path.read_bytes()
    try:
        ds, diagnostics = store.ingest(args.dataset, **kwargs)
    except UnreadableInput as exc:
        print(f"unreadable input: {exc}", file=sys.stderr)
        return 1
    for d in diagnostics + ds.diagnostics:
        print(str(d), file=sys.stderr)
        if d.severity == "error":
            worst = 1
    print(
        f"dataset {ds.dataset_id}: {len(ds.reports)} reports, "
        f"{len(ds.tenures)} tenures, {len(ds.readings)} weather readings"
    )
    return worst


def cmd_synth(args) -> int:
    config = load_config(args.config)
    synth = SynthConfig(
        seed=args.seed,
        n_operations=args.operations,
        n_days=args.days,
        reports_per_day=(args.min_reports, args.max_reports),
        ordinal_fraction=args.ordinal_fraction,
    )
    reports, tenures, readings = generate_synthetic(synth, config.vocab)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "reports.jsonl").write_bytes(serialize_reports(reports))
    (out / "tenures.json").write_bytes(serialize_tenures(tenures))
    (out / "weather.csv").write_bytes(serialize_weather(readings))
    print(
        f"wrote {len(reports)} reports, {len(tenures)} tenures, "
        f"{len(readings)} weather readings to {out}"
    )
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(args.data, port=args.port, host=args.host, config_path=args.config)
    return 0


def cmd_render_svg(args) -> int:
    config = load_config(args.config)
    from .service import DatasetStore

    store = DatasetStore(Path(args.data), config)
    store.load_all()
    try:
        ds = store.get(args.dataset)
    except KeyError:
        print(f"unknown dataset {args.dataset!r} under {args.data}", file=sys.stderr)
        return 1
    bundle = build_all(ds.reports, ds.tenures, None, config)
    body = render_svg(bundle, args.view, config)
    Path(args.out).write_bytes(body)
    print(f"wrote {args.view} view ({len(body)} bytes) to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avyview",
        description="Glyph-based views over avalanche observations and weather telemetry",
    )
    parser.add_argument("--config", default=None, help="vocabulary/theme config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse files and report diagnostics")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ingest", help="ingest files into a dataset directory")
    p.add_argument("files", nargs="+")
    p.add_argument("--dataset", required=True)
    p.add_argument("--data", default=os.environ.get("AVYVIEW_DATA", "./data"))
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("synth", help="write a deterministic synthetic dataset")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.add_argument("--operations", type=int, default=4)
    p.add_argument("--days", type=int, default=3)
    p.add_argument("--min-reports", type=int, default=1)
    p.add_argument("--max-reports", type=int, default=6)
    p.add_argument("--ordinal-fraction", type=float, default=0.35)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=int(os.environ.get("AVYVIEW_PORT", "8764")))
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", default=os.environ.get("AVYVIEW_DATA", "./data"))
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("render-svg", help="render one view headlessly")
    p.add_argument("--dataset", required=True)
    p.add_argument("--view", required=True, choices=VIEW_NAMES)
    p.add_argument("--out", required=True)
    p.add_argument("--data", default=os.environ.get("AVYVIEW_DATA", "./data"))
    p.set_defaults(func=cmd_render_svg)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
