/**
 * Deterministic layered layout for the component diagram.
 *
 * Components sit in columns by render depth: the column index is the
 * length of the longest chain of render edges from any root (a component
 * nothing else renders) down to the component. Column spacing is fixed;
 * there is no force simulation, so the same report always produces the
 * same coordinates.
 */

import { EdgeJson, EdgeKind, NodeJson, NodeKind, ReportJson } from "./types.js";

export const COLUMN_SPACING = 240;
export const BOX_WIDTH = 176;
export const COLLAPSED_HEIGHT = 38;
export const HEADER_HEIGHT = 30;
export const INNER_ROW = 22;
export const INNER_PAD = 8;
export const GROUP_GAP = 8;
export const ROW_GAP = 28;
export const MARGIN = 42;

/** One visible rectangle: a component shell or an internal node. */
export interface Box {
  id: string;
  kind: NodeKind;
  name: string;
  x: number;
  y: number;
  w: number;
  h: number;
  /** Column index for components; -1 for internals. */
  column: number;
  /** Owning component id for internals, null for components. */
  owner: string | null;
  expanded: boolean;
}

/** A drawable edge after boundary re-routing. */
export interface VisibleEdge {
  /** Underlying edge id, or a synthetic id for aggregated re-routes. */
  id: string;
  kind: EdgeKind;
  from: string;
  to: string;
  /** Ids of the report edges this drawable stands for. */
  sourceIds: string[];
  /** True when at least one endpoint was moved to a component boundary. */
  rerouted: boolean;
  /** Offset index among parallel edges sharing both endpoints. */
  lane: number;
}

export interface DiagramLayout {
  boxes: Box[];
  byId: Map<string, Box>;
  edges: VisibleEdge[];
  width: number;
  height: number;
}

function bySourceOrder(a: NodeJson, b: NodeJson): number {
  if (a.file !== b.file) return a.file < b.file ? -1 : 1;
  if (a.span.sl !== b.span.sl) return a.span.sl - b.span.sl;
  if (a.span.sc !== b.span.sc) return a.span.sc - b.span.sc;
  return a.id < b.id ? -1 : a.id > b.id ? 1 : 0;
}

/**
 * Computes the column index of every component.
 *
 * Longest-path relaxation over render edges, capped at the component
 * count so render cycles terminate; a component that is rendered by
 * someone but never escaped depth 0 (pure cycle member) is pushed to
 * column 1 so it still sits right of the roots.
 *
 * @param nodes All report nodes; non-components are ignored.
 * @param edges All report edges; non-render edges are ignored.
 * @returns Map from component id to column index, 0 for roots.
 */
export function renderDepths(
  nodes: NodeJson[],
  edges: EdgeJson[],
): Map<string, number> {
  const comps = nodes.filter((n) => n.kind === "component").map((n) => n.id);
  const depth = new Map<string, number>();
  for (const id of comps) depth.set(id, 0);
  const renders = edges.filter((e) => e.kind === "renders");
  const hasParent = new Set(renders.map((e) => e.to));
  const cap = Math.max(comps.length, 1);
  for (let round = 0; round < cap; round++) {
    let changed = false;
    for (const e of renders) {
      if (e.from === e.to) continue;
      const want = (depth.get(e.from) ?? 0) + 1;
      if (want > (depth.get(e.to) ?? 0) && want <= comps.length) {
        depth.set(e.to, want);
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (const id of comps) {
    if (hasParent.has(id) && depth.get(id) === 0) depth.set(id, 1);
  }
  return depth;
}

const GROUP_ORDER: NodeKind[] = ["prop", "state", "effect"];

function internalsByOwner(nodes: NodeJson[]): Map<string, NodeJson[]> {
  const out = new Map<string, NodeJson[]>();
  for (const n of nodes) {
    if (n.kind === "component" || n.parent_component === null) continue;
    const list = out.get(n.parent_component);
    if (list) list.push(n);
    else out.set(n.parent_component, [n]);
  }
  for (const list of out.values()) {
    list.sort(
      (a, b) =>
        GROUP_ORDER.indexOf(a.kind) - GROUP_ORDER.indexOf(b.kind) ||
        bySourceOrder(a, b),
    );
  }
  return out;
}

function expandedHeight(internals: NodeJson[]): number {
  let h = HEADER_HEIGHT + INNER_PAD;
  let prevKind: NodeKind | null = null;
  for (const n of internals) {
    if (prevKind !== null && n.kind !== prevKind) h += GROUP_GAP;
    h += INNER_ROW;
    prevKind = n.kind;
  }
  return h + INNER_PAD;
}

/**
 * Maps a report node to the box that stands for it on screen: the node
 * itself when visible, or the collapsed owning component's boundary.
 * Returns null for ids missing from the report.
 */
export function resolveEndpoint(
  nodeId: string,
  nodesById: Map<string, NodeJson>,
  expanded: ReadonlySet<string>,
): string | null {
  const node = nodesById.get(nodeId);
  if (!node) return null;
  if (node.kind === "component" || node.parent_component === null) {
    return node.id;
  }
  return expanded.has(node.parent_component)
    ? node.id
    : node.parent_component;
}

function visibleEdges(
  edges: EdgeJson[],
  nodesById: Map<string, NodeJson>,
  expanded: ReadonlySet<string>,
): VisibleEdge[] {
  const out: VisibleEdge[] = [];
  const aggregated = new Map<string, VisibleEdge>();
  for (const e of edges) {
    const from = resolveEndpoint(e.from, nodesById, expanded);
    const to = resolveEndpoint(e.to, nodesById, expanded);
    if (from === null || to === null) continue;
    const rerouted = from !== e.from || to !== e.to;
    if (!rerouted) {
      out.push({
        id: e.id,
        kind: e.kind,
        from,
        to,
        sourceIds: [e.id],
        rerouted: false,
        lane: 0,
      });
      continue;
    }
    // an edge fully inside one collapsed component has nothing to show
    if (from === to) continue;
    const key = `${e.kind}|${from}|${to}`;
    const seen = aggregated.get(key);
    if (seen) {
      seen.sourceIds.push(e.id);
    } else {
      const ve: VisibleEdge = {
        id: `agg:${key}`,
        kind: e.kind,
        from,
        to,
        sourceIds: [e.id],
        rerouted: true,
        lane: 0,
      };
      aggregated.set(key, ve);
      out.push(ve);
    }
  }
  assignLanes(out);
  return out;
}

function assignLanes(edges: VisibleEdge[]): void {
  const groups = new Map<string, VisibleEdge[]>();
  for (const ve of edges) {
    const key = `${ve.from}|${ve.to}`;
    const list = groups.get(key);
    if (list) list.push(ve);
    else groups.set(key, [ve]);
  }
  for (const list of groups.values()) {
    list.sort((a, b) =>
      a.kind !== b.kind
        ? a.kind < b.kind
          ? -1
          : 1
        : a.id < b.id
          ? -1
          : 1,
    );
    list.forEach((ve, i) => {
      ve.lane = i - (list.length - 1) / 2;
    });
  }
}

/**
 * Produces the full geometry for one frame: component boxes stacked in
 * depth columns, internal boxes inside each expanded component grouped
 * by kind, and the visible edge list after boundary re-routing.
 *
 * @param report The loaded analysis report.
 * @param expanded Component ids currently showing their internals.
 */
export function layoutDiagram(
  report: ReportJson,
  expanded: ReadonlySet<string>,
): DiagramLayout {
  const nodes = report.graph.nodes;
  const comps = nodes
    .filter((n) => n.kind === "component")
    .sort(bySourceOrder);
  const internals = internalsByOwner(nodes);
  const depths = renderDepths(nodes, report.graph.edges);

  const columns = new Map<number, NodeJson[]>();
  for (const c of comps) {
    const col = depths.get(c.id) ?? 0;
    const list = columns.get(col);
    if (list) list.push(c);
    else columns.set(col, [c]);
  }

  const boxes: Box[] = [];
  const byId = new Map<string, Box>();
  let height = 0;
  for (const [col, members] of [...columns.entries()].sort(
    (a, b) => a[0] - b[0],
  )) {
    const x = MARGIN + col * COLUMN_SPACING;
    let y = MARGIN;
    for (const comp of members) {
      const isOpen = expanded.has(comp.id);
      const kids = isOpen ? (internals.get(comp.id) ?? []) : [];
      const h = isOpen ? expandedHeight(kids) : COLLAPSED_HEIGHT;
      const box: Box = {
        id: comp.id,
        kind: "component",
        name: comp.name,
        x,
        y,
        w: BOX_WIDTH,
        h,
        column: col,
        owner: null,
        expanded: isOpen,
      };
      boxes.push(box);
      byId.set(box.id, box);
      let innerY = y + HEADER_HEIGHT + INNER_PAD;
      let prevKind: NodeKind | null = null;
      for (const kid of kids) {
        if (prevKind !== null && kid.kind !== prevKind) innerY += GROUP_GAP;
        const inner: Box = {
          id: kid.id,
          kind: kid.kind,
          name: kid.name,
          x: x + INNER_PAD,
          y: innerY + 2,
          w: BOX_WIDTH - 2 * INNER_PAD,
          h: INNER_ROW - 4,
          column: -1,
          owner: comp.id,
          expanded: false,
        };
        boxes.push(inner);
        byId.set(inner.id, inner);
        innerY += INNER_ROW;
        prevKind = kid.kind;
      }
      y += h + ROW_GAP;
    }
    if (y - ROW_GAP > height) height = y - ROW_GAP;
  }

  const maxCol = columns.size ? Math.max(...columns.keys()) : 0;
  return {
    boxes,
    byId,
    edges: visibleEdges(report.graph.edges, nodeIndex(nodes), expanded),
    width: MARGIN * 2 + maxCol * COLUMN_SPACING + BOX_WIDTH,
    height: height + MARGIN,
  };
}

export function nodeIndex(nodes: NodeJson[]): Map<string, NodeJson> {
  return new Map(nodes.map((n) => [n.id, n]));
}
