/**
 * Application wiring: one store, one render loop, async fetches.
 * bootApp is exported so tests can drive the app against a live server.
 */

import { fetchReport, fetchSource, requestReanalyze } from "./api.js";
import { renderSource } from "./codepanel.js";
import { DiagramHandlers, renderDiagram } from "./diagram.js";
import { Highlights, computeHighlights } from "./highlights.js";
import {
  ViewStore,
  deselect,
  panBy,
  selectNode,
  toggleExpand,
  zoomAt,
} from "./state.js";
import { ReportJson, SourceJson } from "./types.js";

const PAN_STEP = 48;
const ZOOM_STEP = 1.25;
// svg client size is unknowable without layout; zoom around this point
const ZOOM_CENTER = { x: 400, y: 260 };

export interface BootOptions {
  /** Server origin; empty string means same-origin relative URLs. */
  base?: string;
}

export interface AppHandle {
  store: ViewStore;
  report: ReportJson;
  reanalyze(): Promise<void>;
  /** Resolves after the pending code-panel fetch (if any) has rendered. */
  settle(): Promise<void>;
  /** Detaches window-level listeners; the DOM is left as rendered. */
  dispose(): void;
}

function metricsLine(report: ReportJson): string {
  const m = report.metrics;
  const definite = report.findings.filter(
    (f) => f.confidence === "Definite",
  ).length;
  return (
    `${m.component_count} component(s) · ${m.jsx_file_count} file(s) · ` +
    `${report.findings.length} finding(s), ${definite} definite`
  );
}

export async function bootApp(
  doc: Document,
  options: BootOptions = {},
): Promise<AppHandle> {
  const base = options.base ?? "";
  const svg = doc.getElementById("hg-canvas") as SVGSVGElement | null;
  const codePanel = doc.getElementById("hg-code");
  const metrics = doc.getElementById("hg-metrics");
  const reanalyzeBtn = doc.getElementById("hg-reanalyze");
  if (!svg || !codePanel) {
    throw new Error("explorer markup is missing #hg-canvas or #hg-code");
  }

  let report = await fetchReport(base);
  let marks: Highlights = computeHighlights(report);
  const store = new ViewStore();
  store.setKnownIds(report.graph.nodes.map((n) => n.id));

  const sourceCache = new Map<string, SourceJson>();
  let panelRequest = 0;
  let pendingPanel: Promise<void> = Promise.resolve();
  let shownPanel = "";

  const handlers: DiagramHandlers = {
    onToggle: (id) => toggleExpand(store, id),
    onSelect: (id) => {
      const node = report.graph.nodes.find((n) => n.id === id);
      selectNode(store, id, node ? { file: node.file, span: node.span } : null);
    },
    onBackground: () => deselect(store),
  };

  function syncCodePanel(): void {
    const state = store.get();
    if (!codePanel) return;
    if (state.codePanel === null) {
      codePanel.hidden = true;
      codePanel.replaceChildren();
      codePanel.removeAttribute("data-scroll-line");
      shownPanel = "";
      return;
    }
    codePanel.hidden = false;
    const { file, span } = state.codePanel;
    const key = `${file}|${span.sl}|${span.sc}|${span.el}|${span.ec}`;
    if (key === shownPanel) return;
    const token = ++panelRequest;
    const cached = sourceCache.get(file);
    if (cached) {
      shownPanel = key;
      renderSource(codePanel, cached, span);
      return;
    }
    pendingPanel = fetchSource(file, base)
      .then((source) => {
        sourceCache.set(file, source);
        if (token === panelRequest && !codePanel.hidden) {
          shownPanel = key;
          renderSource(codePanel, source, span);
        }
      })
      .catch(() => {
        if (token === panelRequest) {
          codePanel.textContent = `cannot load ${file}`;
        }
      });
  }

  function render(): void {
    renderDiagram(svg!, report, store.get(), marks, handlers);
    syncCodePanel();
  }

  store.subscribe(render);
  if (metrics) metrics.textContent = metricsLine(report);
  render();

  const win = doc.defaultView;
  const onKeydown = (event: KeyboardEvent): void => {
    const key = event.key;
    if (key === "Escape") {
      deselect(store);
    } else if (key === "+" || key === "=") {
      store.update((s) => ({
        ...s,
        viewport: zoomAt(s.viewport, ZOOM_STEP, ZOOM_CENTER.x, ZOOM_CENTER.y),
      }));
    } else if (key === "-" || key === "_") {
      store.update((s) => ({
        ...s,
        viewport: zoomAt(
          s.viewport, 1 / ZOOM_STEP, ZOOM_CENTER.x, ZOOM_CENTER.y),
      }));
    } else if (key.startsWith("Arrow")) {
      const dx = key === "ArrowLeft" ? PAN_STEP : key === "ArrowRight" ? -PAN_STEP : 0;
      const dy = key === "ArrowUp" ? PAN_STEP : key === "ArrowDown" ? -PAN_STEP : 0;
      if (dx || dy) {
        event.preventDefault();
        store.update((s) => ({ ...s, viewport: panBy(s.viewport, dx, dy) }));
      }
    }
  };
  if (win) win.addEventListener("keydown", onKeydown);

  async function reanalyze(): Promise<void> {
    await requestReanalyze(base);
    const before = report.generated_from.digest;
    // the server answers 202 before the swap; poll briefly for the result
    for (let attempt = 0; attempt < 10; attempt++) {
      await new Promise((resolve) => setTimeout(resolve, 150));
      const fresh = await fetchReport(base);
      if (fresh.generated_from.digest !== before || attempt === 9) {
        report = fresh;
        break;
      }
    }
    marks = computeHighlights(report);
    sourceCache.clear();
    store.setKnownIds(report.graph.nodes.map((n) => n.id));
    if (metrics) metrics.textContent = metricsLine(report);
    render();
  }

  if (reanalyzeBtn) {
    reanalyzeBtn.addEventListener("click", () => {
      void reanalyze();
    });
  }

  return {
    store,
    get report() {
      return report;
    },
    reanalyze,
    settle: () => pendingPanel,
    dispose: () => {
      if (win) win.removeEventListener("keydown", onKeydown);
    },
  };
}

// boot automatically when loaded in a page that has the explorer markup
if (typeof document !== "undefined" && document.getElementById("hg-canvas")) {
  void bootApp(document).catch((err) => {
    const metrics = document.getElementById("hg-metrics");
    if (metrics) metrics.textContent = `failed to load report: ${err}`;
  });
}
