/**
 * Wire types for the avyview service. These mirror the server's
 * serialized view-model contract field for field; the client renders
 * this geometry verbatim and never recomputes layout.
 */

export interface GlyphMember {
  report_id: string;
  cx: number;
  cy: number;
  r: number;
  family: "numeric-blue" | "ordinal-green";
  darkness: number;
  color: string;
  highlight: boolean;
}

export interface Glyph {
  key: string;
  enclosing: { cx: number; cy: number; r: number };
  members: GlyphMember[];
}

export interface TimelineBin {
  date: string; // ISO day
  glyph: Glyph | null;
}

export interface MatrixCell {
  problem_type: string;
  trigger: string;
  glyph: Glyph;
}

export interface MapOperation {
  operation_id: string;
  display_name: string;
  rings: [number, number][][];
  anchor: [number, number];
  shading: number | null;
  glyph: Glyph | null;
}

export interface ElevationSegment {
  index: number;
  min_m: number;
  max_m: number;
  report_id: string;
  highlight: boolean;
}

export interface AspectArc {
  index: number;
  start_deg: number;
  sweep_deg: number;
  report_id: string;
  highlight: boolean;
}

export interface ViewModels {
  dataset_id: string;
  timeline: { bins: TimelineBin[]; clipped: number };
  matrix: { problem_types: string[]; triggers: string[]; cells: MatrixCell[] };
  map: { operations: MapOperation[]; unmapped: number };
  elevation: { segments: ElevationSegment[] };
  aspect: { arcs: AspectArc[] };
}

export type ViewName = "timeline" | "matrix" | "map" | "elevation" | "aspect";

export const VIEW_NAMES: ViewName[] = ["timeline", "matrix", "map", "elevation", "aspect"];

// selection wire forms -------------------------------------------------------

export type Predicate =
  | { kind: "date_range"; from: string; to: string }
  | { kind: "elevation_overlap"; min_m: number; max_m: number }
  | { kind: "aspect_overlap"; start_deg: number; end_deg: number; full_circle: boolean }
  | { kind: "matrix_cell"; problem_type: string; trigger: string }
  | { kind: "operation"; operation_id: string }
  | { kind: "size_range"; lo: number; hi: number }
  | { kind: "count_variant"; variant: "numeric" | "ordinal" };

export type SelectionAction =
  | { type: "set" | "add" | "remove"; ids: string[] }
  | { type: "clear" }
  | { type: "brush"; predicate: Predicate; additive?: boolean };

export interface Highlights {
  session_id: string;
  dataset_id: string;
  version: number;
  selected: string[];
}

export interface SelectionEvent {
  session_id: string;
  version: number;
}

export interface TooltipPayload {
  report_id: string;
  operation_id: string;
  reported_at: string;
  occurred_on: string;
  count:
    | { variant: "numeric"; n: number }
    | { variant: "ordinal"; label: string; lo: number; hi: number | null };
  count_display: string;
  size: number;
  trigger: string;
  problem_type: string;
  elevation: { min_m: number; max_m: number };
  aspect: { start_deg: number; end_deg: number; full_circle: boolean };
  percent_observed: number;
  comment: string;
}

export interface Theme {
  families: Record<string, { hue_deg: number; ramp: string[] }>;
  saturation: number;
  lightness: { at_zero: number; slope: number };
  highlight_stroke: string;
  dimmed_opacity: number;
}
