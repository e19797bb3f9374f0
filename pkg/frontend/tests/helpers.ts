/** Builders for small synthetic reports used across the suites. */

import {
  EdgeJson,
  EdgeKind,
  FindingJson,
  NodeJson,
  NodeKind,
  ReportJson,
  SpanJson,
} from "../src/types.js";

export function span(sl = 1, sc = 0, el = sl, ec = 12): SpanJson {
  return { sl, sc, el, ec };
}

export function comp(id: string, name: string, file: string, sl = 1): NodeJson {
  return {
    id,
    kind: "component",
    name,
    file,
    span: span(sl),
    parent_component: null,
    flags: [],
  };
}

export function internal(
  kind: Exclude<NodeKind, "component">,
  id: string,
  name: string,
  owner: NodeJson,
  sl = 2,
): NodeJson {
  return {
    id,
    kind,
    name,
    file: owner.file,
    span: span(sl, 2),
    parent_component: owner.id,
    flags: [],
  };
}

let edgeCounter = 0;

export function edge(
  kind: EdgeKind,
  from: string,
  to: string,
  id?: string,
): EdgeJson {
  return { id: id ?? `e${++edgeCounter}`, kind, from, to };
}

export function finding(
  kind: string,
  confidence: "Definite" | "Suspect",
  nodeIds: string[],
  message = "",
): FindingJson {
  return {
    id: `f-${nodeIds.join("-")}`,
    kind,
    confidence,
    node_ids: nodeIds,
    spans: [span()],
    message,
  };
}

export function report(
  nodes: NodeJson[],
  edges: EdgeJson[] = [],
  findings: FindingJson[] = [],
): ReportJson {
  return {
    schema_version: "1.0",
    generated_from: { root: ".", digest: "test" },
    metrics: {
      jsx_file_count: new Set(nodes.map((n) => n.file)).size,
      component_count: nodes.filter((n) => n.kind === "component").length,
      total_loc: 0,
      anti_pattern_counts: {},
    },
    graph: { nodes, edges },
    findings,
    diagnostics: [],
  };
}
