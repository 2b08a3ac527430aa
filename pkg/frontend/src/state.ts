/**
 * Client view state with version reconciliation.
 *
 * The selection version only ever moves forward. Optimistic local
 * highlights carry no version; the authoritative set arrives from the
 * highlights endpoint and is accepted only when its version is not
 * older than what we already hold. SSE events (session_id, version)
 * tell us when a refetch is due.
 */

import type { Highlights, ViewModels } from "./types.js";

export class ClientViewState {
  datasetId = "";
  sessionId = "";
  dateRange: { from: string; to: string } | null = null;
  viewModels: ViewModels | null = null;
  version = 0;
  highlights = new Set<string>();
  hoverTarget: string | null = null;
  pending = false; // an optimistic highlight is showing

  /** A pushed or response version newer than ours means: refetch. */
  needsRefetch(serverVersion: number): boolean {
    return serverVersion > this.version;
  }

  /** Accept an authoritative highlight set; stale versions are dropped. */
  acceptHighlights(h: Highlights): boolean {
    if (h.version < this.version) {
      return false;
    }
    this.version = h.version;
    this.highlights = new Set(h.selected);
    this.pending = false;
    return true;
  }
}
