/**
 * DOM rendering for the five coordinated views.
 *
 * One rendered mark per glyph member / segment / arc, each carrying its
 * report id. Glyph circles use the server geometry verbatim under a
 * single affine transform per glyph (recorded on the group element so
 * tests can verify the parity). Highlight state is applied as classes
 * and can be swapped without re-rendering geometry.
 */

import {
  applyAffine,
  elevationScale,
  glyphTransform,
  lonLatProjection,
  polarPoint,
} from "./transform.js";
import type { Glyph, Theme, ViewModels, ViewName } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const LAYOUT = {
  timeline: { slot: 84, height: 220, margin: 30, glyphMaxR: 38 },
  matrix: { cell: 72, left: 150, top: 60, pad: 20 },
  map: { width: 640, height: 520, margin: 40, glyphMaxR: 34 },
  elevation: { perSegment: 14, height: 320, left: 50, top: 20, bottom: 290 },
  aspect: { size: 520, r0: 40, step: 9 },
} as const;

const DEFAULT_THEME: Pick<Theme, "highlight_stroke" | "dimmed_opacity"> = {
  highlight_stroke: "#d7263d",
  dimmed_opacity: 0.25,
};

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

function markAttrs(reportId: string): Record<string, string> {
  return { class: "mark", "data-report-id": reportId };
}

function renderGlyph(
  parent: SVGElement,
  glyph: Glyph,
  cx: number,
  cy: number,
  maxR: number,
): void {
  const t = glyphTransform(glyph, cx, cy, maxR);
  const group = svgEl("g", {
    class: "glyph",
    "data-glyph-key": glyph.key,
    "data-transform": `${t.tx},${t.ty},${t.s}`,
  });
  for (const m of glyph.members) {
    const [x, y] = applyAffine(t, m.cx, m.cy);
    const circle = svgEl("circle", {
      ...markAttrs(m.report_id),
      cx: x,
      cy: y,
      r: m.r * t.s,
      fill: m.color,
      "data-family": m.family,
    });
    group.appendChild(circle);
  }
  parent.appendChild(group);
}

function panel(root: HTMLElement, view: ViewName, title: string): SVGSVGElement {
  const section = document.createElement("section");
  section.className = "panel";
  section.dataset.view = view;
  const heading = document.createElement("h3");
  heading.textContent = title;
  section.appendChild(heading);
  const svg = svgEl("svg");
  section.appendChild(svg);
  root.appendChild(section);
  return svg;
}

function renderTimeline(svg: SVGSVGElement, vm: ViewModels): void {
  const L = LAYOUT.timeline;
  const bins = vm.timeline.bins;
  const width = Math.max(L.margin * 2 + L.slot * Math.max(bins.length, 1), 300);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(L.height));
  const axisY = L.height - 40;
  svg.appendChild(
    svgEl("line", {
      class: "axis",
      x1: L.margin,
      y1: axisY,
      x2: width - L.margin,
      y2: axisY,
    }),
  );
  bins.forEach((bin, i) => {
    const cx = L.margin + L.slot * (i + 0.5);
    const label = svgEl("text", {
      class: "axis-label",
      x: cx,
      y: axisY + 16,
      "data-date": bin.date,
      "text-anchor": "middle",
    });
    label.textContent = bin.date;
    svg.appendChild(label);
    if (bin.glyph) {
      renderGlyph(svg, bin.glyph, cx, axisY - 80, L.glyphMaxR);
    }
  });
}

function renderMatrix(svg: SVGSVGElement, vm: ViewModels): void {
  const L = LAYOUT.matrix;
  const rows = vm.matrix.problem_types;
  const cols = vm.matrix.triggers;
  svg.setAttribute("width", String(L.left + L.cell * cols.length + L.pad));
  svg.setAttribute("height", String(L.top + L.cell * rows.length + L.pad));

  cols.forEach((trigger, j) => {
    const label = svgEl("text", {
      class: "axis-label",
      x: L.left + L.cell * (j + 0.5),
      y: L.top - 10,
      "text-anchor": "middle",
    });
    label.textContent = trigger;
    svg.appendChild(label);
  });
  rows.forEach((problem, i) => {
    const label = svgEl("text", {
      class: "axis-label",
      x: L.left - 8,
      y: L.top + L.cell * (i + 0.5) + 3,
      "text-anchor": "end",
    });
    label.textContent = problem;
    svg.appendChild(label);
  });

  // one hit-target rect per cell (empty cells brush to empty selections)
  rows.forEach((problem, i) => {
    cols.forEach((trigger, j) => {
      svg.appendChild(
        svgEl("rect", {
          class: "cell",
          x: L.left + L.cell * j,
          y: L.top + L.cell * i,
          width: L.cell,
          height: L.cell,
          "data-problem-type": problem,
          "data-trigger": trigger,
          fill: "transparent",
          stroke: "#ddd",
        }),
      );
    });
  });

  for (const cell of vm.matrix.cells) {
    const i = rows.indexOf(cell.problem_type);
    const j = cols.indexOf(cell.trigger);
    if (i < 0 || j < 0) continue;
    renderGlyph(
      svg,
      cell.glyph,
      L.left + L.cell * (j + 0.5),
      L.top + L.cell * (i + 0.5),
      L.cell * 0.45,
    );
  }
}

function renderMap(svg: SVGSVGElement, vm: ViewModels): void {
  const L = LAYOUT.map;
  svg.setAttribute("width", String(L.width));
  svg.setAttribute("height", String(L.height));
  const points = vm.map.operations.flatMap((o) => o.rings.flat());
  const project = lonLatProjection(points, L.width, L.height, L.margin);

  for (const op of vm.map.operations) {
    for (const ring of op.rings) {
      const d =
        "M" + ring.map((p) => project(p).map((v) => v.toFixed(2)).join(" ")).join("L") + "Z";
      const path = svgEl("path", {
        class: "polygon",
        d,
        "data-operation-id": op.operation_id,
        "fill-opacity": op.shading === null ? 0.12 : 0.15 + 0.6 * op.shading,
      });
      svg.appendChild(path);
    }
    if (op.glyph) {
      const [ax, ay] = project(op.anchor);
      renderGlyph(svg, op.glyph, ax, ay, L.glyphMaxR);
    }
  }
}

function renderElevation(svg: SVGSVGElement, vm: ViewModels): void {
  const L = LAYOUT.elevation;
  const segments = vm.elevation.segments;
  const width = Math.max(60 + L.perSegment * segments.length, 300);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(L.height));
  const maxM = Math.max(...segments.map((s) => s.max_m), 3000);
  const y = elevationScale(maxM, L.top, L.bottom);
  svg.appendChild(
    svgEl("line", { class: "axis", x1: L.left, y1: L.top, x2: L.left, y2: L.bottom }),
  );
  svg.setAttribute("data-max-metres", String(maxM));
  for (const s of segments) {
    const x = L.left + 12 + L.perSegment * s.index;
    const y1 = y(s.min_m);
    svg.appendChild(
      svgEl("line", {
        ...markAttrs(s.report_id),
        x1: x,
        y1: s.min_m === s.max_m ? y1 + 1.5 : y1,
        x2: x,
        y2: y(s.max_m),
        "data-min-m": s.min_m,
        "data-max-m": s.max_m,
      }),
    );
  }
}

function renderAspect(svg: SVGSVGElement, vm: ViewModels): void {
  const L = LAYOUT.aspect;
  svg.setAttribute("width", String(L.size));
  svg.setAttribute("height", String(L.size));
  const c = L.size / 2;
  for (const [label, deg] of [["N", 0], ["E", 90], ["S", 180], ["W", 270]] as const) {
    const [x, yy] = polarPoint(c, c, L.r0 + L.step * (vm.aspect.arcs.length + 2), deg);
    const text = svgEl("text", {
      class: "axis-label",
      x,
      y: yy + 3,
      "text-anchor": "middle",
    });
    text.textContent = label;
    svg.appendChild(text);
  }
  for (const a of vm.aspect.arcs) {
    const radius = L.r0 + L.step * a.index;
    const attrs = {
      ...markAttrs(a.report_id),
      "data-start-deg": a.start_deg,
      "data-sweep-deg": a.sweep_deg,
      fill: "none",
    };
    if (a.sweep_deg >= 360) {
      svg.appendChild(svgEl("circle", { ...attrs, cx: c, cy: c, r: radius }));
    } else if (a.sweep_deg === 0) {
      const [x, yy] = polarPoint(c, c, radius, a.start_deg);
      svg.appendChild(svgEl("circle", { ...attrs, cx: x, cy: yy, r: 2 }));
    } else {
      const [x1, y1] = polarPoint(c, c, radius, a.start_deg);
      const [x2, y2] = polarPoint(c, c, radius, a.start_deg + a.sweep_deg);
      const large = a.sweep_deg > 180 ? 1 : 0;
      svg.appendChild(
        svgEl("path", {
          ...attrs,
          d: `M${x1} ${y1}A${radius} ${radius} 0 ${large} 1 ${x2} ${y2}`,
        }),
      );
    }
  }
}

/** Render all five panels into the root element (replaces content). */
export function renderViews(
  root: HTMLElement,
  vm: ViewModels,
  highlights: Set<string>,
  theme?: Theme,
): void {
  root.replaceChildren();
  renderTimeline(panel(root, "timeline", "Timeline"), vm);
  renderMatrix(panel(root, "matrix", "Problems x Triggers"), vm);
  renderMap(panel(root, "map", "Operations"), vm);
  renderElevation(panel(root, "elevation", "Elevation ranges"), vm);
  renderAspect(panel(root, "aspect", "Aspect ranges"), vm);
  applyHighlights(root, highlights, theme);
}

/**
 * Swap highlight state in place: emphasized marks get the theme stroke,
 * everything else dims while any selection is active. Geometry
 * attributes are never touched.
 */
export function applyHighlights(
  root: HTMLElement,
  highlights: Set<string>,
  theme?: Theme,
): void {
  const stroke = theme?.highlight_stroke ?? DEFAULT_THEME.highlight_stroke;
  const dim = theme?.dimmed_opacity ?? DEFAULT_THEME.dimmed_opacity;
  const active = highlights.size > 0;
  root.querySelectorAll<SVGElement>("[data-report-id]").forEach((el) => {
    const id = el.getAttribute("data-report-id") ?? "";
    const emphasized = highlights.has(id);
    el.classList.toggle("emphasized", emphasized);
    el.classList.toggle("dimmed", active && !emphasized);
    if (emphasized) {
      el.setAttribute("stroke", stroke);
      el.setAttribute("stroke-width", "2");
      el.removeAttribute("opacity");
    } else {
      el.removeAttribute("stroke");
      el.removeAttribute("stroke-width");
      if (active) {
        el.setAttribute("opacity", String(dim));
      } else {
        el.removeAttribute("opacity");
      }
    }
  });
}

/** Report ids of the marks currently emphasized in the DOM. */
export function emphasizedIds(root: HTMLElement): Set<string> {
  const ids = new Set<string>();
  root.querySelectorAll("[data-report-id].emphasized").forEach((el) => {
    ids.add(el.getAttribute("data-report-id") ?? "");
  });
  return ids;
}
