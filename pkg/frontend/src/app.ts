/**
 * The coordinated-views application: load, render, brush, reconcile.
 *
 * Flow per gesture: apply an optimistic local emphasis immediately,
 * POST the action, then fetch the authoritative highlight set once the
 * response (or a pushed SSE event) shows a newer version. The version
 * check makes optimism safe: a stale response can never overwrite a
 * newer selection.
 */

import { ApiClient } from "./api.js";
import { Gesture, gestureToAction, pointerGesture } from "./brush.js";
import { applyHighlights, emphasizedIds, renderViews } from "./render.js";
import { ClientViewState } from "./state.js";
import { showTooltip } from "./tooltip.js";
import { screenToCompass } from "./transform.js";
import type { SelectionEvent, Theme } from "./types.js";

export class AvyViewApp {
  readonly state = new ClientViewState();
  private theme: Theme | undefined;
  private unsubscribe: (() => void) | null = null;
  private tooltipEl: HTMLElement | null = null;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {}

  async start(datasetId: string): Promise<void> {
    this.state.datasetId = datasetId;
    this.theme = await this.api.theme();
    this.state.viewModels = await this.api.viewModels(datasetId, this.state.dateRange ?? undefined);
    const session = await this.api.createSession(datasetId);
    this.state.sessionId = session.session_id;
    this.state.version = session.version;
    renderViews(this.root, this.state.viewModels, this.state.highlights, this.theme);
    this.attachHandlers();
    this.unsubscribe = this.api.subscribe(session.session_id, (e) => {
      void this.onServerEvent(e);
    });
  }

  stop(): void {
    this.unsubscribe?.();
    this.unsubscribe = null;
  }

  /** Route a completed gesture: optimistic highlight, then reconcile. */
  async gesture(g: Gesture, optimisticIds?: Iterable<string>): Promise<void> {
    if (optimisticIds) {
      this.state.pending = true;
      applyHighlights(this.root, new Set(optimisticIds), this.theme);
    }
    const action = gestureToAction(g);
    const res = await this.api.applyAction(this.state.sessionId, action);
    if (this.state.needsRefetch(res.version)) {
      await this.refreshHighlights();
    }
  }

  async onServerEvent(e: SelectionEvent): Promise<void> {
    if (e.session_id === this.state.sessionId && this.state.needsRefetch(e.version)) {
      await this.refreshHighlights();
    }
  }

  async refreshHighlights(): Promise<void> {
    const h = await this.api.highlights(this.state.sessionId);
    if (this.state.acceptHighlights(h)) {
      applyHighlights(this.root, this.state.highlights, this.theme);
    }
  }

  /** Ids currently emphasized in the DOM (for parity checks). */
  domHighlights(): Set<string> {
    return emphasizedIds(this.root);
  }

  private attachHandlers(): void {
    const matrixSvg = this.root.querySelector('[data-view="matrix"] svg');
    matrixSvg?.addEventListener("click", (ev) => {
      const event = ev as MouseEvent;
      const g = pointerGesture("matrix", event.target as Element, event.shiftKey);
      if (g) void this.gesture(g);
    });
    const mapSvg = this.root.querySelector('[data-view="map"] svg');
    mapSvg?.addEventListener("click", (ev) => {
      const event = ev as MouseEvent;
      const g = pointerGesture("map", event.target as Element, event.shiftKey);
      if (g) void this.gesture(g);
    });
    // drag brushes (timeline / elevation / aspect) are wired through
    // pointerdown/pointerup pairs; each completed drag emits exactly
    // one gesture
    this.attachDrag("timeline", (down, up, additive) => {
      const days = this.dayAt(down) ?? this.dayAt(up);
      const days2 = this.dayAt(up) ?? days;
      if (!days || !days2) return { view: "clear" };
      return { view: "timeline", fromDate: days, toDate: days2, additive };
    });
    this.attachDrag("elevation", (down, up, additive) => {
      const svg = this.root.querySelector('[data-view="elevation"] svg');
      const maxM = Number(svg?.getAttribute("data-max-metres") ?? 3000);
      const topY = 20;
      const bottomY = 290;
      const toMetres = (y: number) => ((bottomY - y) / (bottomY - topY)) * maxM;
      return {
        view: "elevation",
        minM: Math.max(0, Math.min(toMetres(down[1]), toMetres(up[1]))),
        maxM: Math.max(toMetres(down[1]), toMetres(up[1])),
        additive,
      };
    });
    this.attachDrag("aspect", (down, up, additive) => {
      const c = 520 / 2;
      return {
        view: "aspect",
        startDeg: screenToCompass(c, c, down[0], down[1]),
        endDeg: screenToCompass(c, c, up[0], up[1]),
        additive,
      };
    });

    this.root.querySelectorAll<SVGElement>("[data-report-id]").forEach((el) => {
      el.addEventListener("mouseenter", () => {
        const id = el.getAttribute("data-report-id");
        if (id) {
          this.state.hoverTarget = id;
          void showTooltip(this.ensureTooltip(), this.api, id);
        }
      });
    });
  }

  private attachDrag(
    view: "timeline" | "elevation" | "aspect",
    toGesture: (down: [number, number], up: [number, number], additive: boolean) => Gesture,
  ): void {
    const svg = this.root.querySelector(`[data-view="${view}"] svg`);
    if (!svg) return;
    let downAt: [number, number] | null = null;
    svg.addEventListener("pointerdown", (ev) => {
      const event = ev as PointerEvent;
      downAt = [event.offsetX, event.offsetY];
    });
    svg.addEventListener("pointerup", (ev) => {
      if (!downAt) return;
      const event = ev as PointerEvent;
      const g = toGesture(downAt, [event.offsetX, event.offsetY], event.shiftKey);
      downAt = null;
      void this.gesture(g);
    });
  }

  private dayAt(point: [number, number]): string | null {
    const bins = this.state.viewModels?.timeline.bins ?? [];
    const slot = 84;
    const margin = 30;
    const index = Math.floor((point[0] - margin) / slot);
    return bins[index]?.date ?? null;
  }

  private ensureTooltip(): HTMLElement {
    if (!this.tooltipEl) {
      this.tooltipEl = document.createElement("div");
      this.root.appendChild(this.tooltipEl);
    }
    return this.tooltipEl;
  }
}

export { ApiClient } from "./api.js";
export { gestureToAction } from "./brush.js";
export type { Gesture } from "./brush.js";
export { applyHighlights, emphasizedIds, renderViews, LAYOUT } from "./render.js";
export { ClientViewState } from "./state.js";
export { renderTooltip, showTooltip } from "./tooltip.js";
