// @vitest-environment jsdom
//
// Drives the built UI modules against a live analysis server on the
// drill3 fixture: three components, one prop-drilling finding.
import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { ApiError, fetchSource, requestReanalyze } from "../src/api.js";
import { AppHandle, bootApp } from "../src/main.js";
import { NodeJson } from "../src/types.js";

// vitest runs with the package directory as cwd
const FIXTURE = resolve(process.cwd(), "../tests/fixtures/drill3");
const INDEX_HTML = resolve(process.cwd(), "index.html");

let server: ChildProcess | null = null;
let serverErr = "";
let base = "";

async function ready(url: string): Promise<boolean> {
  for (let i = 0; i < 100; i++) {
    if (server && server.exitCode !== null) return false;
    try {
      const res = await fetch(`${url}/api/graph`);
      if (res.ok) return true;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  return false;
}

beforeAll(async () => {
  for (let attempt = 0; attempt < 3; attempt++) {
    const port = 21000 + Math.floor(Math.random() * 20000);
    const proc = spawn(
      "python3",
      ["-m", "hookgraph.cli", "serve", "--root", FIXTURE, "--port", String(port)],
      { stdio: ["ignore", "ignore", "pipe"] },
    );
    proc.stderr!.on("data", (chunk: Buffer) => {
      serverErr += chunk.toString();
    });
    server = proc;
    base = `http://127.0.0.1:${port}`;
    if (await ready(base)) return;
    proc.kill();
  }
  throw new Error(`analysis server never came up: ${serverErr}`);
});

afterAll(() => {
  server?.kill();
});

function mountSkeleton(): void {
  const html = readFileSync(INDEX_HTML, "utf-8");
  const body = html.slice(html.indexOf("<body>") + 6, html.indexOf("<script"));
  document.body.innerHTML = body;
}

async function boot(): Promise<AppHandle> {
  mountSkeleton();
  return bootApp(document, { base });
}

function positions(): Map<string, string> {
  const out = new Map<string, string>();
  for (const g of document.querySelectorAll("g[data-node-id]")) {
    const rect = g.querySelector("rect")!;
    out.set(
      g.getAttribute("data-node-id")!,
      `${rect.getAttribute("x")},${rect.getAttribute("y")}`,
    );
  }
  return out;
}

function click(el: Element): void {
  el.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

function byName(
  app: AppHandle,
  kind: string,
  name: string,
  file: string,
): NodeJson {
  const node = app.report.graph.nodes.find(
    (n) => n.kind === kind && n.name === name && n.file === file,
  );
  if (!node) throw new Error(`no ${kind} ${name} in ${file}`);
  return node;
}

describe("explorer against a live server", () => {
  test("two loads of the same report place every node identically", async () => {
    const first = await boot();
    const before = positions();
    first.dispose();
    const second = await boot();
    const after = positions();
    second.dispose();
    expect(after).toEqual(before);
    expect(before.size).toBe(3);
  });

  test("overview, drilled path, selection, and code panel", async () => {
    const app = await boot();
    const svg = document.getElementById("hg-canvas")!;

    // three components, one per depth column
    const shells = [...svg.querySelectorAll('g[data-kind="component"] rect.shell')];
    expect(shells.length).toBe(3);
    const xs = new Set(shells.map((r) => r.getAttribute("x")));
    expect(xs.size).toBe(3);

    // all three carry a badge: each owns a node on the drilled path
    expect(svg.querySelectorAll("circle.badge").length).toBe(3);
    // collapsed view shows no red edges yet
    expect(svg.querySelectorAll("path.edge.red").length).toBe(0);

    // expand every component
    const compIds = app.report.graph.nodes
      .filter((n) => n.kind === "component")
      .map((n) => n.id);
    for (const id of compIds) {
      click(svg.querySelector(`g[data-node-id="${id}"]`)!);
    }

    // the drilled path is now visible in red
    const red = [...svg.querySelectorAll("path.edge.red")];
    expect(red.length).toBe(2);
    const state = byName(app, "state", "query", "App.jsx");
    const paneProp = byName(app, "prop", "query", "SearchPane.jsx");
    const listProp = byName(app, "prop", "query", "ResultList.jsx");
    const hops = red.map(
      (p) => `${p.getAttribute("data-from")}>${p.getAttribute("data-to")}`,
    );
    expect(hops.sort()).toEqual(
      [
        `${state.id}>${paneProp.id}`,
        `${paneProp.id}>${listProp.id}`,
      ].sort(),
    );

    const beforeSelection = svg.innerHTML;

    // select the origin state
    click(svg.querySelector(`g[data-node-id="${state.id}"]`)!);
    expect(app.store.get().selected).toBe(state.id);

    // everything off the flow is dimmed; the flow itself is not
    const dimmedIds = [...svg.querySelectorAll("g.node.dimmed")].map((g) =>
      g.getAttribute("data-node-id"),
    );
    for (const id of [state.id, paneProp.id, listProp.id]) {
      expect(dimmedIds).not.toContain(id);
    }
    for (const p of svg.querySelectorAll('path.edge[data-kind="renders"]')) {
      expect(p.getAttribute("class")).toContain("dimmed");
    }

    // the code panel opened App.jsx at the useState line
    await app.settle();
    const panel = document.getElementById("hg-code")!;
    expect(panel.hidden).toBe(false);
    expect(panel.querySelector(".code-header")!.textContent).toBe("App.jsx");
    expect(panel.getAttribute("data-scroll-line")).toBe(
      String(state.span.sl),
    );
    const hl = panel.querySelectorAll(".code-line.hl");
    expect(hl.length).toBeGreaterThan(0);
    expect(hl[0].getAttribute("data-line")).toBe("4");
    expect(hl[0].textContent).toContain("useState");

    // escape restores the pre-selection scene exactly
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "Escape" }));
    expect(app.store.get().selected).toBeNull();
    expect(svg.innerHTML).toBe(beforeSelection);
    expect(panel.hidden).toBe(true);
    app.dispose();
  });

  test("keyboard zoom and pan move the viewport transform", async () => {
    const app = await boot();
    const viewport = () =>
      document.querySelector("g.viewport")!.getAttribute("transform")!;
    expect(viewport()).toBe("translate(0, 0) scale(1)");
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "+" }));
    expect(viewport()).toContain("scale(1.25)");
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "ArrowRight" }));
    expect(app.store.get().viewport.x).toBeLessThan(0);
    app.dispose();
  });

  test("source endpoint returns the bytes on disk", async () => {
    const served = await fetchSource("App.jsx", base);
    const disk = readFileSync(`${FIXTURE}/App.jsx`, "utf-8");
    expect(served.content).toBe(disk);
    expect(served.path).toBe("App.jsx");
    const lines = (disk.endsWith("\n") ? disk.slice(0, -1) : disk).split("\n");
    expect(served.line_count).toBe(lines.length);
  });

  test("path traversal is rejected with 400", async () => {
    await expect(fetchSource("../secret.jsx", base)).rejects.toMatchObject({
      name: "ApiError",
      status: 400,
    });
    await expect(fetchSource("unknown.jsx", base)).rejects.toMatchObject({
      status: 404,
    });
    expect(new ApiError(400, "x").status).toBe(400);
  });

  test("reanalyze round-trips and keeps the digest of an unchanged tree", async () => {
    await requestReanalyze(base);
    const app = await boot();
    const before = app.report.generated_from.digest;
    await app.reanalyze();
    expect(app.report.generated_from.digest).toBe(before);
    app.dispose();
  });
});
