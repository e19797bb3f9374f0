"""Anti-pattern detectors: read-only queries over the hook graph.

Three patterns are reported: state or props that nothing ever reads,
state drilled through components that only pass it along, and effects
that write an ancestor component's state. Every finding carries a
confidence: Definite when the flows involved are fully resolved,
Suspect when an unresolved-analysis diagnostic touches any implicated
node.
"""

import hashlib
from dataclasses import dataclass

from .graph import (
    EFFECT_SET,
    PROP,
    PROP_FLOW,
    STATE,
    GraphNode,
    HookGraph,
    trace_provenance,
)
from .jsast import Span

UNREFERENCED = "UnreferencedStateOrProp"
PROP_DRILLING = "PropDrilling"
EFFECT_PARENT_MUTATION = "EffectModifyingParentState"

DEFINITE = "Definite"
SUSPECT = "Suspect"


@dataclass
class Finding:
    finding_id: str
    kind: str
    confidence: str
    node_ids: list[str]
    spans: list[Span]
    message: str


def _finding_id(kind: str, node_ids: list[str]) -> str:
    digest = hashlib.sha1("|".join(node_ids).encode("utf-8")).hexdigest()
    return f"{kind}:{digest[:12]}"


def _make(graph: HookGraph, kind: str, node_ids: list[str],
          message: str, suspect_ids: set[str]) -> Finding:
    confidence = (SUSPECT if any(n in suspect_ids for n in node_ids)
                  else DEFINITE)
    return Finding(
        finding_id=_finding_id(kind, node_ids),
        kind=kind,
        confidence=confidence,
        node_ids=list(node_ids),
        spans=[graph.nodes[n].span for n in node_ids],
        message=message,
    )


def _base_suspects(graph: HookGraph) -> set[str]:
    """Node ids whose analysis is known to be incomplete."""
    out: set[str] = set()
    for node in graph.nodes.values():
        if "unknown_consumer" in node.flags:
            out.add(node.node_id)
            continue
        owner = (node.node_id if node.kind == "component"
                 else node.parent_component)
        if owner in graph.downgraded_components:
            out.add(node.node_id)
    return out


def _comp_name(graph: HookGraph, node: GraphNode) -> str:
    parent = graph.nodes.get(node.parent_component or "")
    return parent.name if parent else "<module>"


def _flow_successors(graph: HookGraph, node: GraphNode) -> set[str]:
    """Where this node's value can land next.

    A state contributes only its value-side flows; the setter leaving
    the component does not make the value referenced. A prop forwards
    whatever it holds, so every outgoing flow counts.
    """
    edges = graph.outgoing(node.node_id, PROP_FLOW)
    if node.kind == STATE:
        edges = [e for e in edges if e.carries_value]
    return {e.to_node for e in edges}


def _setter_live(graph: HookGraph, state: GraphNode) -> bool:
    """True when the state's setter is invoked, locally or downstream."""
    decl = state.state
    if decl is not None and decl.setter_binding is not None:
        if decl.setter_binding.calls:
            return True
    seen: set[str] = set()
    stack = [
        e.to_node for e in graph.outgoing(state.node_id, PROP_FLOW)
        if e.carries_setter
    ]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        holder = graph.nodes[current]
        if holder.use_count > 0:
            return True
        stack.extend(
            e.to_node for e in graph.outgoing(current, PROP_FLOW)
            if e.carries_setter
        )
    return False


def detect_unreferenced(graph: HookGraph) -> list[Finding]:
    """Flag state values and props whose forward closure is never read.

    Computed as a greatest fixed point: a node stays flagged only while
    every prop it flows into is itself flagged. Each node in a dead
    chain gets its own finding.
    """
    flagged = {
        n.node_id for n in graph.nodes.values()
        if n.kind in (STATE, PROP) and n.use_count == 0
    }
    changed = True
    while changed:
        changed = False
        for nid in sorted(flagged):
            node = graph.nodes[nid]
            if any(s not in flagged for s in _flow_successors(graph, node)):
                flagged.discard(nid)
                changed = True
    suspects = _base_suspects(graph)
    # uncertainty propagates backward: a node flagged only because its
    # successors are flagged inherits their doubt
    changed = True
    while changed:
        changed = False
        for nid in flagged:
            if nid in suspects:
                continue
            node = graph.nodes[nid]
            if any(s in suspects for s in _flow_successors(graph, node)):
                suspects.add(nid)
                changed = True
    findings = []
    for nid in flagged:
        node = graph.nodes[nid]
        comp = _comp_name(graph, node)
        if node.kind == STATE:
            message = f"state '{node.name}' in {comp} is never read"
            if _setter_live(graph, node):
                message += " (its setter is called, the value is not)"
        else:
            message = f"prop '{node.name}' of {comp} is never used"
        if node.forward_count > 0:
            message += "; everything it feeds is also unreferenced"
        findings.append(_make(graph, UNREFERENCED, [nid], message, suspects))
    return _canonical(graph, findings)


def detect_prop_drilling(graph: HookGraph, threshold: int = 1,
                         ) -> list[Finding]:
    """Flag value chains that cross pass-through components before use.

    One finding per maximal provenance path whose count of hops that
    forward without using reaches the threshold. The state's value and
    its setter are traced as separate chains.
    """
    suspects = _base_suspects(graph)
    findings = []
    seen: set[tuple[str, ...]] = set()
    for state in graph.nodes_of_kind(STATE):
        for path in trace_provenance(graph, state.node_id):
            if not path.terminal_use or not path.hops:
                continue
            passthrough = [
                h for h in path.hops if h.forwarded and not h.used_locally
            ]
            if len(passthrough) < threshold:
                continue
            terminal = path.hops[-1]
            node_ids = (
                [state.node_id]
                + [h.prop_id for h in passthrough]
                + [terminal.prop_id]
            )
            key = tuple(node_ids)
            if key in seen:
                continue
            seen.add(key)
            subject = (f"state '{state.name}'" if path.root == "value"
                       else f"setter of state '{state.name}'")
            terminal_comp = graph.nodes[terminal.prop_id]
            message = (
                f"{subject} from {_comp_name(graph, state)} passes through "
                f"{len(passthrough)} component(s) unused before its use in "
                f"{_comp_name(graph, terminal_comp)}"
            )
            findings.append(
                _make(graph, PROP_DRILLING, node_ids, message, suspects))
    return _canonical(graph, findings)


def detect_effect_parent_mutation(graph: HookGraph) -> list[Finding]:
    """Flag effects that call a setter owned by a render ancestor."""
    suspects = _base_suspects(graph)
    findings = []
    for edge in graph.edges:
        if edge.kind != EFFECT_SET:
            continue
        effect = graph.nodes[edge.from_node]
        state = graph.nodes[edge.to_node]
        effect_comp = effect.parent_component
        state_comp = state.parent_component
        if effect_comp is None or state_comp is None:
            continue
        if effect_comp == state_comp:
            continue
        if not graph.is_render_descendant(effect_comp, state_comp):
            continue
        node_ids = [effect.node_id, *edge.hops, state.node_id]
        message = (
            f"effect in {_comp_name(graph, effect)} writes state "
            f"'{state.name}' owned by ancestor {_comp_name(graph, state)}"
        )
        findings.append(
            _make(graph, EFFECT_PARENT_MUTATION, node_ids, message, suspects))
    return _canonical(graph, findings)


def detect_all(graph: HookGraph, drill_threshold: int = 1) -> list[Finding]:
    """Run every detector and merge the results in canonical order."""
    findings = (
        detect_unreferenced(graph)
        + detect_prop_drilling(graph, drill_threshold)
        + detect_effect_parent_mutation(graph)
    )
    return _canonical(graph, findings)


def _canonical(graph: HookGraph, findings: list[Finding]) -> list[Finding]:
    def key(f: Finding):
        first = graph.nodes[f.node_ids[0]]
        return (
            first.file,
            f.spans[0].start_line,
            f.spans[0].start_col,
            f.kind,
            tuple(f.node_ids),
        )
    return sorted(findings, key=key)
