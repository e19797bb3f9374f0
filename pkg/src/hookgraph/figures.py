"""Static PNG rendering of the analysis results.

Two figures accompany a report when requested: an overview of the
component hierarchy laid out in columns by render depth, and a bar
chart of finding counts. Rendering always uses the Agg backend so it
works without a display.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  backend must be set first

from .detectors import (  # noqa: E402
    EFFECT_PARENT_MUTATION,
    PROP_DRILLING,
    UNREFERENCED,
)
from .graph import COMPONENT, RENDERS, HookGraph  # noqa: E402

_KIND_SHORT = {
    UNREFERENCED: "unreferenced",
    PROP_DRILLING: "drilling",
    EFFECT_PARENT_MUTATION: "effect-parent",
}


def render_depths(graph: HookGraph) -> dict[str, int]:
    """Column index per component: longest render distance from a root.

    Roots are components nothing renders. Relaxation is capped at the
    component count so render cycles cannot spin forever; members of a
    cycle keep the last depth reached.
    """
    comps = [n.node_id for n in graph.nodes_of_kind(COMPONENT)]
    has_parent = {e.to_node for e in graph.edges if e.kind == RENDERS}
    depth = {c: 0 for c in comps}
    for _ in range(max(len(comps), 1)):
        changed = False
        for edge in graph.edges:
            if edge.kind != RENDERS:
                continue
            if edge.from_node == edge.to_node:
                continue
            want = depth[edge.from_node] + 1
            if want > depth[edge.to_node] and want <= len(comps):
                depth[edge.to_node] = want
                changed = True
        if not changed:
            break
    # a non-root that only cycles still sits right of its parents
    for c in comps:
        if c in has_parent and depth[c] == 0:
            depth[c] = 1
    return depth


def _flagged_components(graph: HookGraph, findings) -> set[str]:
    out = set()
    for f in findings:
        for nid in f.node_ids:
            node = graph.nodes.get(nid)
            if node is None:
                continue
            owner = (node.node_id if node.kind == COMPONENT
                     else node.parent_component)
            if owner:
                out.add(owner)
    return out


def render_overview(graph: HookGraph, findings, path: Path) -> None:
    comps = sorted(
        graph.nodes_of_kind(COMPONENT),
        key=lambda n: (n.file, n.span.start_line, n.span.start_col),
    )
    fig, ax = plt.subplots(figsize=(11, 6))
    if not comps:
        ax.text(0.5, 0.5, "no components", ha="center", va="center")
        ax.set_axis_off()
        fig.savefig(path, dpi=120)
        plt.close(fig)
        return
    depth = render_depths(graph)
    flagged = _flagged_components(graph, findings)
    columns: dict[int, list] = {}
    for node in comps:
        columns.setdefault(depth[node.node_id], []).append(node)
    pos: dict[str, tuple[float, float]] = {}
    for col, members in sorted(columns.items()):
        for row, node in enumerate(members):
            pos[node.node_id] = (col * 3.0, -row * 1.4)
    for edge in graph.edges:
        if edge.kind != RENDERS:
            continue
        x0, y0 = pos[edge.from_node]
        x1, y1 = pos[edge.to_node]
        ax.annotate(
            "", xy=(x1 - 0.9, y1), xytext=(x0 + 0.9, y0),
            arrowprops={"arrowstyle": "->", "color": "#777777", "lw": 1.0},
        )
    for node in comps:
        x, y = pos[node.node_id]
        bad = node.node_id in flagged
        ax.add_patch(plt.Rectangle(
            (x - 0.9, y - 0.4), 1.8, 0.8,
            facecolor="#fde8e8" if bad else "#e8eef9",
            edgecolor="#c0392b" if bad else "#34495e",
            linewidth=1.6 if bad else 1.0,
        ))
        ax.text(x, y, node.name, ha="center", va="center", fontsize=9)
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    ax.set_xlim(min(xs) - 1.5, max(xs) + 1.5)
    ax.set_ylim(min(ys) - 1.0, max(ys) + 1.0)
    ax.set_axis_off()
    ax.set_title("component hierarchy (red = involved in a finding)")
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_findings_chart(findings, path: Path) -> None:
    kinds = [UNREFERENCED, PROP_DRILLING, EFFECT_PARENT_MUTATION]
    definite = [
        sum(1 for f in findings
            if f.kind == k and f.confidence == "Definite")
        for k in kinds
    ]
    suspect = [
        sum(1 for f in findings
            if f.kind == k and f.confidence == "Suspect")
        for k in kinds
    ]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    labels = [_KIND_SHORT[k] for k in kinds]
    ax.bar(labels, definite, color="#c0392b", label="Definite")
    ax.bar(labels, suspect, bottom=definite, color="#e8a196",
           label="Suspect")
    ax.set_ylabel("findings")
    ax.set_title("anti-pattern findings")
    top = max((d + s for d, s in zip(definite, suspect)), default=0)
    ax.set_ylim(0, max(top, 1) * 1.2)
    ax.yaxis.get_major_locator().set_params(integer=True)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_figures(report, out_dir: str | Path) -> list[Path]:
    """Write overview.png and findings.png under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    overview = out / "overview.png"
    chart = out / "findings.png"
    render_overview(report.graph, report.findings, overview)
    render_findings_chart(report.findings, chart)
    return [overview, chart]
