/**
 * SVG rendering of the node-link diagram. Rendering is a pure function
 * of (report, view state, highlights): the whole scene is rebuilt on
 * every change, so reverting the state reverts the pixels exactly.
 */

import { Highlights } from "./highlights.js";
import {
  Box,
  DiagramLayout,
  VisibleEdge,
  layoutDiagram,
} from "./layout.js";
import { ViewState } from "./state.js";
import { NodeKind, ReportJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Distinct hues, one per node kind, at the same saturation and level. */
export const KIND_FILL: Record<NodeKind, string> = {
  component: "#f2f4f8",
  prop: "hsl(212, 58%, 82%)",
  state: "hsl(142, 58%, 82%)",
  effect: "hsl(28, 58%, 82%)",
};

const FLOW_KINDS = new Set(["prop_flow", "effect_dep", "effect_set"]);

export interface DiagramHandlers {
  onToggle(componentId: string): void;
  onSelect(nodeId: string): void;
  onBackground(): void;
}

/**
 * All node ids reachable from the seed along prop-flow and effect edges,
 * walking both directions. Render edges do not count: selecting a node
 * highlights its data and control flows, not the component tree.
 */
export function connectedSubgraph(
  report: ReportJson,
  seedId: string,
): Set<string> {
  const neighbors = new Map<string, string[]>();
  const link = (a: string, b: string) => {
    const list = neighbors.get(a);
    if (list) list.push(b);
    else neighbors.set(a, [b]);
  };
  for (const e of report.graph.edges) {
    if (!FLOW_KINDS.has(e.kind)) continue;
    link(e.from, e.to);
    link(e.to, e.from);
  }
  const seen = new Set<string>([seedId]);
  const queue = [seedId];
  while (queue.length) {
    const id = queue.pop()!;
    for (const next of neighbors.get(id) ?? []) {
      if (!seen.has(next)) {
        seen.add(next);
        queue.push(next);
      }
    }
  }
  return seen;
}

function el(
  name: string,
  attrs: Record<string, string>,
  parent: Element,
): Element {
  const node = parent.ownerDocument!.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  parent.appendChild(node);
  return node;
}

function truncate(text: string, max: number): string {
  return text.length > max ? text.slice(0, max - 1) + "…" : text;
}

function edgePath(ve: VisibleEdge, from: Box, to: Box): string {
  const dy = ve.lane * 8;
  if (from.id === to.id) {
    const x = from.x + from.w;
    const cy = from.y + from.h / 2;
    return (
      `M ${x} ${cy - 5 + dy} C ${x + 36} ${cy - 28 + dy}, ` +
      `${x + 36} ${cy + 20 + dy}, ${x} ${cy + 5 + dy}`
    );
  }
  const y0 = from.y + from.h / 2 + dy;
  const y1 = to.y + to.h / 2 + dy;
  if (to.x >= from.x + from.w) {
    const x0 = from.x + from.w;
    const x1 = to.x;
    const bend = Math.max(36, (x1 - x0) / 2);
    return `M ${x0} ${y0} C ${x0 + bend} ${y0}, ${x1 - bend} ${y1}, ${x1} ${y1}`;
  }
  // backward or same-column edge: loop out on the right
  const x0 = from.x + from.w;
  const x1 = to.x + to.w;
  return `M ${x0} ${y0} C ${x0 + 56} ${y0}, ${x1 + 56} ${y1}, ${x1} ${y1}`;
}

interface EdgeStatus {
  red: boolean;
  dashed: boolean;
  dimmed: boolean;
}

function edgeStatus(
  ve: VisibleEdge,
  marks: Highlights,
  emphasizedEdges: Set<string> | null,
): EdgeStatus {
  // re-routed stand-ins never carry finding colors; expanding reveals them
  const red = !ve.rerouted && marks.redEdges.has(ve.id);
  const dashed = red && marks.dashedEdges.has(ve.id);
  const dimmed =
    emphasizedEdges !== null &&
    !ve.sourceIds.some((id) => emphasizedEdges.has(id));
  return { red, dashed, dimmed };
}

function drawEdges(
  parent: Element,
  layout: DiagramLayout,
  marks: Highlights,
  emphasizedEdges: Set<string> | null,
): void {
  const group = el("g", { class: "edges" }, parent);
  for (const ve of layout.edges) {
    const from = layout.byId.get(ve.from);
    const to = layout.byId.get(ve.to);
    if (!from || !to) continue;
    const status = edgeStatus(ve, marks, emphasizedEdges);
    const classes = ["edge", `e-${ve.kind}`];
    if (status.red) classes.push("red");
    if (status.dashed) classes.push("dashed");
    if (status.dimmed) classes.push("dimmed");
    if (ve.rerouted) classes.push("rerouted");
    const marker = status.red
      ? "hg-arrow-red"
      : status.dimmed
        ? "hg-arrow-dim"
        : "hg-arrow";
    const path = el(
      "path",
      {
        class: classes.join(" "),
        d: edgePath(ve, from, to),
        "data-edge-id": ve.id,
        "data-kind": ve.kind,
        "data-from": ve.from,
        "data-to": ve.to,
        "marker-end": `url(#${marker})`,
      },
      group,
    );
    const label =
      ve.sourceIds.length > 1 ? `${ve.kind} ×${ve.sourceIds.length}` : ve.kind;
    el("title", {}, path).textContent = label;
  }
}

function drawComponent(
  parent: Element,
  box: Box,
  marks: Highlights,
  dimmed: boolean,
  selected: boolean,
  handlers: DiagramHandlers,
): void {
  const classes = ["node", "n-component"];
  if (dimmed) classes.push("dimmed");
  if (selected) classes.push("selected");
  if (box.expanded) classes.push("expanded");
  const g = el(
    "g",
    {
      class: classes.join(" "),
      "data-node-id": box.id,
      "data-kind": "component",
    },
    parent,
  );
  el(
    "rect",
    {
      class: "shell",
      x: String(box.x),
      y: String(box.y),
      width: String(box.w),
      height: String(box.h),
      rx: "6",
      fill: KIND_FILL.component,
    },
    g,
  );
  const text = el(
    "text",
    {
      x: String(box.x + box.w / 2),
      y: String(box.y + 19),
      "text-anchor": "middle",
      class: "comp-name",
    },
    g,
  );
  text.textContent = truncate(box.name, 22);
  if (box.expanded) {
    el(
      "line",
      {
        x1: String(box.x),
        y1: String(box.y + 28),
        x2: String(box.x + box.w),
        y2: String(box.y + 28),
        class: "divider",
      },
      g,
    );
  }
  if (marks.badges.has(box.id)) {
    el(
      "circle",
      {
        class: "badge",
        cx: String(box.x + box.w - 9),
        cy: String(box.y + 9),
        r: "5",
      },
      g,
    );
  }
  g.addEventListener("click", (event) => {
    event.stopPropagation();
    handlers.onToggle(box.id);
  });
}

function drawInternal(
  parent: Element,
  box: Box,
  marks: Highlights,
  dimmed: boolean,
  selected: boolean,
  handlers: DiagramHandlers,
): void {
  const classes = ["node", `n-${box.kind}`];
  if (marks.redNodes.has(box.id)) classes.push("red");
  if (marks.dashedNodes.has(box.id)) classes.push("dashed");
  if (dimmed) classes.push("dimmed");
  if (selected) classes.push("selected");
  const g = el(
    "g",
    {
      class: classes.join(" "),
      "data-node-id": box.id,
      "data-kind": box.kind,
    },
    parent,
  );
  const rect = el(
    "rect",
    {
      x: String(box.x),
      y: String(box.y),
      width: String(box.w),
      height: String(box.h),
      rx: "4",
      fill: KIND_FILL[box.kind],
    },
    g,
  );
  el("title", {}, rect).textContent = `${box.kind} ${box.name}`;
  const text = el(
    "text",
    {
      x: String(box.x + 6),
      y: String(box.y + box.h - 5),
      class: "inner-name",
    },
    g,
  );
  text.textContent = truncate(box.name, 20);
  g.addEventListener("click", (event) => {
    event.stopPropagation();
    handlers.onSelect(box.id);
  });
}

function drawDefs(svg: SVGSVGElement): void {
  const defs = el("defs", {}, svg);
  for (const [id, cls] of [
    ["hg-arrow", "arrow"],
    ["hg-arrow-red", "arrow arrow-red"],
    ["hg-arrow-dim", "arrow arrow-dim"],
  ]) {
    const marker = el(
      "marker",
      {
        id,
        class: cls,
        viewBox: "0 0 10 10",
        refX: "9",
        refY: "5",
        markerWidth: "7",
        markerHeight: "7",
        orient: "auto-start-reverse",
      },
      defs,
    );
    el("path", { d: "M 0 0 L 10 5 L 0 10 z" }, marker);
  }
}

/** Rebuilds the scene inside the given svg element. */
export function renderDiagram(
  svg: SVGSVGElement,
  report: ReportJson,
  view: ViewState,
  marks: Highlights,
  handlers: DiagramHandlers,
): void {
  svg.replaceChildren();
  drawDefs(svg);
  const layout = layoutDiagram(report, view.expanded);
  const comps = layout.boxes.filter((b) => b.kind === "component");
  if (comps.length === 0) {
    const notice = el(
      "text",
      { x: "24", y: "40", class: "notice" },
      svg,
    );
    notice.textContent = "no components in this project";
    return;
  }

  let subgraph: Set<string> | null = null;
  let emphasizedNodes: Set<string> | null = null;
  let emphasizedEdges: Set<string> | null = null;
  if (view.selected !== null) {
    subgraph = connectedSubgraph(report, view.selected);
    emphasizedNodes = new Set(subgraph);
    for (const node of report.graph.nodes) {
      if (subgraph.has(node.id) && node.parent_component !== null) {
        emphasizedNodes.add(node.parent_component);
      }
    }
    emphasizedEdges = new Set();
    for (const e of report.graph.edges) {
      if (FLOW_KINDS.has(e.kind) && subgraph.has(e.from) && subgraph.has(e.to)) {
        emphasizedEdges.add(e.id);
      }
    }
  }

  const viewport = el(
    "g",
    {
      class: "viewport",
      transform:
        `translate(${view.viewport.x}, ${view.viewport.y}) ` +
        `scale(${view.viewport.zoom})`,
    },
    svg,
  );
  drawEdges(viewport, layout, marks, emphasizedEdges);
  const nodes = el("g", { class: "nodes" }, viewport);
  for (const box of layout.boxes) {
    const dimmed =
      emphasizedNodes !== null && !emphasizedNodes.has(box.id);
    const selected = view.selected === box.id;
    if (box.kind === "component") {
      drawComponent(nodes, box, marks, dimmed, selected, handlers);
    } else {
      drawInternal(nodes, box, marks, dimmed, selected, handlers);
    }
  }

  svg.onclick = (event) => {
    if (event.target === svg) handlers.onBackground();
  };
}
