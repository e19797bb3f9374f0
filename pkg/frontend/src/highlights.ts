/**
 * Maps the report's findings onto the elements to paint red. This is a
 * pure function of the report: the UI re-detects nothing, it only marks
 * what the backend already decided.
 */

import { ReportJson } from "./types.js";

export const UNREFERENCED = "UnreferencedStateOrProp";
export const PROP_DRILLING = "PropDrilling";
export const EFFECT_PARENT = "EffectModifyingParentState";

export interface Highlights {
  /** Node ids drawn with a red outline. */
  redNodes: Set<string>;
  /** Report edge ids drawn red. */
  redEdges: Set<string>;
  /** Subset of the red sets that belongs to Suspect findings. */
  dashedNodes: Set<string>;
  dashedEdges: Set<string>;
  /** Component ids that carry a red badge while collapsed. */
  badges: Set<string>;
}

export function emptyHighlights(): Highlights {
  return {
    redNodes: new Set(),
    redEdges: new Set(),
    dashedNodes: new Set(),
    dashedEdges: new Set(),
    badges: new Set(),
  };
}

export function computeHighlights(report: ReportJson): Highlights {
  const out = emptyHighlights();
  const nodesById = new Map(report.graph.nodes.map((n) => [n.id, n]));
  const edgeIds = new Map<string, string[]>();
  for (const e of report.graph.edges) {
    const key = `${e.kind}|${e.from}|${e.to}`;
    const list = edgeIds.get(key);
    if (list) list.push(e.id);
    else edgeIds.set(key, [e.id]);
  }
  const edgesBetween = (kind: string, from: string, to: string) =>
    edgeIds.get(`${kind}|${from}|${to}`) ?? [];

  for (const finding of report.findings) {
    const suspect = finding.confidence === "Suspect";
    const ids = finding.node_ids;
    if (finding.kind === UNREFERENCED) {
      for (const id of ids) {
        out.redNodes.add(id);
        if (suspect) out.dashedNodes.add(id);
      }
    } else if (finding.kind === PROP_DRILLING) {
      for (let i = 0; i + 1 < ids.length; i++) {
        for (const eid of edgesBetween("prop_flow", ids[i], ids[i + 1])) {
          out.redEdges.add(eid);
          if (suspect) out.dashedEdges.add(eid);
        }
      }
    } else if (finding.kind === EFFECT_PARENT && ids.length >= 2) {
      const effect = ids[0];
      const state = ids[ids.length - 1];
      for (const eid of edgesBetween("effect_set", effect, state)) {
        out.redEdges.add(eid);
        if (suspect) out.dashedEdges.add(eid);
      }
    }
    for (const id of ids) {
      const node = nodesById.get(id);
      if (!node) continue;
      const owner = node.kind === "component" ? node.id : node.parent_component;
      if (owner) out.badges.add(owner);
    }
  }
  return out;
}
