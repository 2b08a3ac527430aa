/**
 * Tooltip drill-down: the verbatim report payload, count shown in its
 * original form (a number, or the ordinal label with its range), plus
 * the free-text comment. Station tooltips show raw telemetry rows.
 */

import { ApiClient, ApiError } from "./api.js";
import type { TooltipPayload } from "./types.js";

function field(dl: HTMLElement, label: string, value: string): void {
  const dt = document.createElement("dt");
  dt.textContent = label;
  const dd = document.createElement("dd");
  dd.textContent = value;
  dl.append(dt, dd);
}

export function renderTooltip(container: HTMLElement, payload: TooltipPayload): void {
  container.replaceChildren();
  container.className = "tooltip";
  container.dataset.reportId = payload.report_id;
  container.dataset.raw = JSON.stringify(payload);

  const dl = document.createElement("dl");
  field(dl, "Report", payload.report_id);
  field(dl, "Operation", payload.operation_id);
  field(dl, "Occurred", payload.occurred_on);
  field(dl, "Count", payload.count_display);
  field(dl, "Size", String(payload.size));
  field(dl, "Trigger", payload.trigger);
  field(dl, "Problem", payload.problem_type);
  field(dl, "Elevation", `${payload.elevation.min_m}-${payload.elevation.max_m} m`);
  field(
    dl,
    "Aspect",
    payload.aspect.full_circle
      ? "all aspects"
      : `${payload.aspect.start_deg}° to ${payload.aspect.end_deg}°`,
  );
  field(dl, "Observed", `${payload.percent_observed}% of tenure`);
  container.appendChild(dl);

  const comment = document.createElement("p");
  comment.className = "comment";
  comment.textContent = payload.comment;
  container.appendChild(comment);
}

export async function showTooltip(
  container: HTMLElement,
  api: ApiClient,
  reportId: string,
): Promise<void> {
  try {
    renderTooltip(container, await api.tooltip(reportId));
  } catch (err) {
    container.replaceChildren();
    container.className = "tooltip tooltip-error";
    container.textContent =
      err instanceof ApiError && err.status === 404
        ? `no report ${reportId}`
        : "tooltip unavailable";
  }
}
