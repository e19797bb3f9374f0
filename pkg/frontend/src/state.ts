/**
 * The single view-state store. Every mutation funnels through
 * ViewStore.update, which enforces the invariants (zoom bounds, selected
 * node must exist in the loaded report) and then notifies subscribers.
 */

import { SpanJson } from "./types.js";

export const MIN_ZOOM = 0.1;
export const MAX_ZOOM = 8;

export interface Viewport {
  x: number;
  y: number;
  zoom: number;
}

export interface CodePanel {
  file: string;
  span: SpanJson;
}

export interface ViewState {
  expanded: ReadonlySet<string>;
  selected: string | null;
  viewport: Viewport;
  codePanel: CodePanel | null;
}

export function initialView(): ViewState {
  return {
    expanded: new Set(),
    selected: null,
    viewport: { x: 0, y: 0, zoom: 1 },
    codePanel: null,
  };
}

export function clampZoom(zoom: number): number {
  if (!Number.isFinite(zoom)) return 1;
  return Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, zoom));
}

/** Rescales around a fixed screen point so it stays put while zooming. */
export function zoomAt(
  viewport: Viewport,
  factor: number,
  cx: number,
  cy: number,
): Viewport {
  const zoom = clampZoom(viewport.zoom * factor);
  const wx = (cx - viewport.x) / viewport.zoom;
  const wy = (cy - viewport.y) / viewport.zoom;
  return { x: cx - wx * zoom, y: cy - wy * zoom, zoom };
}

export function panBy(viewport: Viewport, dx: number, dy: number): Viewport {
  return { x: viewport.x + dx, y: viewport.y + dy, zoom: viewport.zoom };
}

type Listener = (state: ViewState) => void;

export class ViewStore {
  private state: ViewState = initialView();
  private listeners: Listener[] = [];
  private knownIds: ReadonlySet<string> = new Set();
  private applying = false;

  /** Declares which node ids exist; stale references are dropped. */
  setKnownIds(ids: Iterable<string>): void {
    this.knownIds = new Set(ids);
    this.update((s) => s);
  }

  get(): ViewState {
    return this.state;
  }

  update(fn: (state: ViewState) => ViewState): void {
    if (this.applying) {
      throw new Error("re-entrant view-state update");
    }
    const next = fn(this.state);
    const expanded = new Set(
      [...next.expanded].filter((id) => this.knownIds.has(id)),
    );
    const selected =
      next.selected !== null && this.knownIds.has(next.selected)
        ? next.selected
        : null;
    this.state = {
      expanded,
      selected,
      viewport: { ...next.viewport, zoom: clampZoom(next.viewport.zoom) },
      codePanel: selected === null ? null : next.codePanel,
    };
    this.applying = true;
    try {
      for (const listener of this.listeners) listener(this.state);
    } finally {
      this.applying = false;
    }
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}

export function toggleExpand(store: ViewStore, componentId: string): void {
  store.update((s) => {
    const expanded = new Set(s.expanded);
    if (expanded.has(componentId)) expanded.delete(componentId);
    else expanded.add(componentId);
    return { ...s, expanded };
  });
}

export function selectNode(
  store: ViewStore,
  nodeId: string,
  panel: CodePanel | null,
): void {
  store.update((s) => ({ ...s, selected: nodeId, codePanel: panel }));
}

export function deselect(store: ViewStore): void {
  store.update((s) => ({ ...s, selected: null, codePanel: null }));
}
