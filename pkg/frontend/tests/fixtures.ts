import type { Glyph, TooltipPayload, ViewModels } from "../src/types";

function glyph(key: string, ids: string[], r = 8): Glyph {
  // tangent row of equal circles, server-style geometry
  const n = ids.length;
  return {
    key,
    enclosing: { cx: 0, cy: 0, r: r * n },
    members: ids.map((id, i) => ({
      report_id: id,
      cx: r * (2 * i - (n - 1)),
      cy: 0,
      r,
      family: i % 2 === 0 ? "numeric-blue" : "ordinal-green",
      darkness: 0.3 + 0.1 * i,
      color: i % 2 === 0 ? "#9bb7d8" : "#a5cfa9",
      highlight: false,
    })),
  };
}

export const FIXTURE: ViewModels = {
  dataset_id: "fix",
  timeline: {
    bins: [
      { date: "2020-02-01", glyph: glyph("2020-02-01", ["r-1", "r-2"]) },
      { date: "2020-02-02", glyph: null },
      { date: "2020-02-03", glyph: glyph("2020-02-03", ["r-3"]) },
    ],
    clipped: 0,
  },
  matrix: {
    problem_types: ["storm-slab", "wind-slab", "unspecified"],
    triggers: ["natural", "explosive", "unspecified"],
    cells: [
      { problem_type: "storm-slab", trigger: "natural", glyph: glyph("storm-slab|natural", ["r-1", "r-2"]) },
      { problem_type: "wind-slab", trigger: "explosive", glyph: glyph("wind-slab|explosive", ["r-3"]) },
    ],
  },
  map: {
    operations: [
      {
        operation_id: "op-1",
        display_name: "Operation One",
        rings: [[[-118, 50.9], [-117.8, 50.9], [-117.8, 51.1], [-118, 51.1]]],
        anchor: [-117.9, 51.0],
        shading: 0.5,
        glyph: glyph("op-1", ["r-1", "r-2"]),
      },
      {
        operation_id: "op-2",
        display_name: "Operation Two",
        rings: [[[-117.5, 50.9], [-117.3, 50.9], [-117.3, 51.1], [-117.5, 51.1]]],
        anchor: [-117.4, 51.0],
        shading: 0.8,
        glyph: glyph("op-2", ["r-3"]),
      },
    ],
    unmapped: 0,
  },
  elevation: {
    segments: [
      { index: 0, min_m: 1800, max_m: 2400, report_id: "r-1", highlight: false },
      { index: 1, min_m: 900, max_m: 1200, report_id: "r-2", highlight: false },
      { index: 2, min_m: 2000, max_m: 2000, report_id: "r-3", highlight: false },
    ],
  },
  aspect: {
    arcs: [
      { index: 0, start_deg: 315, sweep_deg: 90, report_id: "r-1", highlight: false },
      { index: 1, start_deg: 90, sweep_deg: 0, report_id: "r-2", highlight: false },
      { index: 2, start_deg: 0, sweep_deg: 360, report_id: "r-3", highlight: false },
    ],
  },
};

export const TOOLTIP_FIXTURE: TooltipPayload = {
  report_id: "r-2",
  operation_id: "op-1",
  reported_at: "2020-02-02T14:30:00Z",
  occurred_on: "2020-02-01",
  count: { variant: "ordinal", label: "several", lo: 2, hi: 9 },
  count_display: "several (2–9)",
  count_raw: "several",
  size: 2.0,
  trigger: "natural",
  problem_type: "storm-slab",
  elevation: { min_m: 900, max_m: 1200 },
  aspect: { start_deg: 90, end_deg: 180, full_circle: false },
  percent_observed: 60,
  comment: "size 2 storm slabs on lee features",
} as TooltipPayload;
