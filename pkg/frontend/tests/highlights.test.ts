import { describe, expect, test } from "vitest";

import {
  EFFECT_PARENT,
  PROP_DRILLING,
  UNREFERENCED,
  computeHighlights,
} from "../src/highlights.js";
import { comp, edge, finding, internal, report } from "./helpers.js";

const A = comp("component:A.jsx:1:0", "A", "A.jsx", 1);
const B = comp("component:B.jsx:1:0", "B", "B.jsx", 1);
const C = comp("component:C.jsx:1:0", "C", "C.jsx", 1);
const sA = internal("state", "state:A.jsx:2:2", "query", A, 2);
const pB = internal("prop", "prop:B.jsx:1:12", "query", B, 1);
const pC = internal("prop", "prop:C.jsx:1:12", "query", C, 1);
const eB = internal("effect", "effect:B.jsx:3:2", "useEffect#1", B, 3);

const EDGES = [
  edge("renders", A.id, B.id, "r1"),
  edge("renders", B.id, C.id, "r2"),
  edge("prop_flow", sA.id, pB.id, "pf1"),
  edge("prop_flow", pB.id, pC.id, "pf2"),
  edge("effect_dep", eB.id, pB.id, "ed1"),
  edge("effect_set", eB.id, sA.id, "es1"),
];

const NODES = [A, B, C, sA, pB, pC, eB];

describe("computeHighlights", () => {
  test("a clean report paints nothing red", () => {
    const marks = computeHighlights(report(NODES, EDGES));
    expect(marks.redNodes.size).toBe(0);
    expect(marks.redEdges.size).toBe(0);
    expect(marks.dashedNodes.size).toBe(0);
    expect(marks.dashedEdges.size).toBe(0);
    expect(marks.badges.size).toBe(0);
  });

  test("drilling marks exactly the path's prop-flow edges", () => {
    const r = report(NODES, EDGES, [
      finding(PROP_DRILLING, "Definite", [sA.id, pB.id, pC.id]),
    ]);
    const marks = computeHighlights(r);
    expect([...marks.redEdges].sort()).toEqual(["pf1", "pf2"]);
    expect(marks.dashedEdges.size).toBe(0);
    expect(marks.redNodes.size).toBe(0);
    expect([...marks.badges].sort()).toEqual([A.id, B.id, C.id].sort());
  });

  test("suspect findings are also dashed", () => {
    const r = report(NODES, EDGES, [
      finding(PROP_DRILLING, "Suspect", [sA.id, pB.id, pC.id]),
      finding(UNREFERENCED, "Suspect", [pC.id]),
    ]);
    const marks = computeHighlights(r);
    expect(marks.dashedEdges).toEqual(marks.redEdges);
    expect([...marks.redNodes]).toEqual([pC.id]);
    expect([...marks.dashedNodes]).toEqual([pC.id]);
  });

  test("unreferenced marks the node itself", () => {
    const r = report(NODES, EDGES, [
      finding(UNREFERENCED, "Definite", [sA.id]),
    ]);
    const marks = computeHighlights(r);
    expect([...marks.redNodes]).toEqual([sA.id]);
    expect(marks.redEdges.size).toBe(0);
    expect([...marks.badges]).toEqual([A.id]);
  });

  test("an effect finding marks the effect_set edge to the state", () => {
    const r = report(NODES, EDGES, [
      finding(EFFECT_PARENT, "Definite", [eB.id, pB.id, sA.id]),
    ]);
    const marks = computeHighlights(r);
    expect([...marks.redEdges]).toEqual(["es1"]);
    expect([...marks.badges].sort()).toEqual([A.id, B.id].sort());
  });

  test("parallel prop-flow edges on a hop are all marked", () => {
    const doubled = [...EDGES, edge("prop_flow", sA.id, pB.id, "pf1b")];
    const r = report(NODES, doubled, [
      finding(PROP_DRILLING, "Definite", [sA.id, pB.id]),
    ]);
    const marks = computeHighlights(r);
    expect([...marks.redEdges].sort()).toEqual(["pf1", "pf1b"]);
  });

  test("highlighting is a pure function of the report", () => {
    const r = report(NODES, EDGES, [
      finding(PROP_DRILLING, "Definite", [sA.id, pB.id, pC.id]),
      finding(UNREFERENCED, "Suspect", [pC.id]),
    ]);
    const first = computeHighlights(r);
    const second = computeHighlights(r);
    expect(second).toEqual(first);
  });
});
