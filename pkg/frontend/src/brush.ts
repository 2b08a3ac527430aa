/**
 * Brush gestures and their mapping onto selection actions.
 *
 * Each view contributes one gesture form: a timeline drag spans days,
 * an elevation drag spans metres, an aspect drag sweeps compass
 * degrees, a matrix cell click picks a (problem, trigger) pair, a map
 * polygon click picks an operation. A modifier key turns any brush
 * additive; a click on empty canvas clears the selection.
 */

import type { SelectionAction } from "./types.js";

export type Gesture =
  | { view: "timeline"; fromDate: string; toDate: string; additive?: boolean }
  | { view: "elevation"; minM: number; maxM: number; additive?: boolean }
  | { view: "aspect"; startDeg: number; endDeg: number; additive?: boolean }
  | { view: "matrix"; problemType: string; trigger: string; additive?: boolean }
  | { view: "map"; operationId: string; additive?: boolean }
  | { view: "clear" };

export function gestureToAction(g: Gesture): SelectionAction {
  switch (g.view) {
    case "clear":
      return { type: "clear" };
    case "timeline": {
      const [from, to] = g.fromDate <= g.toDate ? [g.fromDate, g.toDate] : [g.toDate, g.fromDate];
      return {
        type: "brush",
        predicate: { kind: "date_range", from, to },
        additive: g.additive ?? false,
      };
    }
    case "elevation": {
      const lo = Math.min(g.minM, g.maxM);
      const hi = Math.max(g.minM, g.maxM);
      return {
        type: "brush",
        predicate: { kind: "elevation_overlap", min_m: lo, max_m: hi },
        additive: g.additive ?? false,
      };
    }
    case "aspect":
      // start/end keep gesture order: the sweep is clockwise from start
      return {
        type: "brush",
        predicate: {
          kind: "aspect_overlap",
          start_deg: g.startDeg,
          end_deg: g.endDeg,
          full_circle: false,
        },
        additive: g.additive ?? false,
      };
    case "matrix":
      return {
        type: "brush",
        predicate: {
          kind: "matrix_cell",
          problem_type: g.problemType,
          trigger: g.trigger,
        },
        additive: g.additive ?? false,
      };
    case "map":
      return {
        type: "brush",
        predicate: { kind: "operation", operation_id: g.operationId },
        additive: g.additive ?? false,
      };
  }
}

/**
 * Interpret a completed pointer pair on a view's SVG as a gesture.
 * Returns null for gestures that do not map to an action (e.g. a drag
 * that never left a matrix cell boundary).
 */
export function pointerGesture(
  view: "matrix" | "map",
  target: Element | null,
  additive: boolean,
): Gesture | null {
  if (!target) return { view: "clear" };
  const cell = target.closest("[data-problem-type]");
  if (view === "matrix" && cell) {
    return {
      view: "matrix",
      problemType: cell.getAttribute("data-problem-type") ?? "",
      trigger: cell.getAttribute("data-trigger") ?? "",
      additive,
    };
  }
  const polygon = target.closest("[data-operation-id]");
  if (view === "map" && polygon) {
    return {
      view: "map",
      operationId: polygon.getAttribute("data-operation-id") ?? "",
      additive,
    };
  }
  return { view: "clear" };
}
