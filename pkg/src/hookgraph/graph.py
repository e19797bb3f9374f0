"""Project-wide hook graph: link per-file extractions into one dataset.

Nodes are component definitions, state declarations, prop declarations,
and effects. Edges record render structure, prop flow across render
sites, effect dependencies, and effect-driven state writes. The graph is
built once and treated as immutable; every query here is read-only.
"""

from dataclasses import dataclass, field

from .extract import (
    DOWNGRADE_CODES,
    AttrBinding,
    ComponentDef,
    Diagnostic,
    EffectDecl,
    FileExtract,
    PropDecl,
    RenderSite,
    StateDecl,
)
from .ingest import ProjectSnapshot
from .jsast import Span

COMPONENT = "component"
STATE = "state"
PROP = "prop"
EFFECT = "effect"

RENDERS = "renders"
PROP_FLOW = "prop_flow"
EFFECT_DEP = "effect_dep"
EFFECT_SET = "effect_set"


class NotAStateNode(Exception):
    """Raised when a provenance query targets a non-state node."""


@dataclass
class GraphNode:
    node_id: str
    kind: str  # component|state|prop|effect
    name: str
    file: str
    span: Span
    parent_component: str | None = None  # node id of the owning component
    flags: list[str] = field(default_factory=list)
    use_count: int = 0
    forward_count: int = 0
    # backrefs into the extraction layer, one of these per kind
    component: ComponentDef | None = None
    state: StateDecl | None = None
    prop: PropDecl | None = None
    effect: EffectDecl | None = None


@dataclass
class GraphEdge:
    edge_id: str
    kind: str  # renders|prop_flow|effect_dep|effect_set
    from_node: str
    to_node: str
    site: Span | None = None
    label: str | None = None
    # prop_flow only: what the flowed value can be
    carries_value: bool = False
    carries_setter: bool = False
    # effect_set only: setter-carrying prop hops, nearest the effect first
    hops: tuple[str, ...] = ()


@dataclass
class PathHop:
    component_id: str
    prop_id: str
    used_locally: bool
    forwarded: bool


@dataclass
class ProvenancePath:
    origin: str  # state node id
    root: str  # value|setter: which half of the pair left the component
    hops: list[PathHop]
    terminal_use: bool


@dataclass
class ProjectMetrics:
    jsx_file_count: int = 0
    component_count: int = 0
    total_loc: int = 0
    anti_pattern_counts: dict[str, int] = field(default_factory=dict)


@dataclass
class HookGraph:
    components: dict[str, ComponentDef]
    nodes: dict[str, GraphNode]
    edges: list[GraphEdge]
    diagnostics: list[Diagnostic]
    metrics: ProjectMetrics
    # component node ids with at least one unresolved-class diagnostic;
    # findings that touch them are downgraded to Suspect
    downgraded_components: frozenset[str] = frozenset()
    _out: dict[str, list[GraphEdge]] = field(default_factory=dict)
    _in: dict[str, list[GraphEdge]] = field(default_factory=dict)

    def outgoing(self, node_id: str, kind: str | None = None,
                 ) -> list[GraphEdge]:
        edges = self._out.get(node_id, [])
        if kind is None:
            return list(edges)
        return [e for e in edges if e.kind == kind]

    def incoming(self, node_id: str, kind: str | None = None,
                 ) -> list[GraphEdge]:
        edges = self._in.get(node_id, [])
        if kind is None:
            return list(edges)
        return [e for e in edges if e.kind == kind]

    def nodes_of_kind(self, kind: str) -> list[GraphNode]:
        return [n for n in self.nodes.values() if n.kind == kind]

    def is_render_descendant(self, node_id: str, ancestor_id: str) -> bool:
        """True iff node_id is reachable from ancestor_id via render edges.

        A component is not its own descendant unless a render cycle
        brings it back to itself.
        """
        seen: set[str] = set()
        stack = [e.to_node for e in self.outgoing(ancestor_id, RENDERS)]
        while stack:
            current = stack.pop()
            if current == node_id:
                return True
            if current in seen:
                continue
            seen.add(current)
            stack.extend(
                e.to_node for e in self.outgoing(current, RENDERS))
        return False


def node_id_for(kind: str, file: str, span: Span) -> str:
    return f"{kind}:{file}:{span.start_line}:{span.start_col}"


def _edge_id(kind: str, from_node: str, to_node: str,
             label: str | None, site: Span | None) -> str:
    eid = f"{kind}:{from_node}->{to_node}"
    if label is not None:
        eid += f":{label}"
    if site is not None:
        eid += f"@{site.start_line}:{site.start_col}"
    return eid


class _Builder:
    def __init__(self, snapshot: ProjectSnapshot,
                 extractions: list[FileExtract]):
        self.snapshot = snapshot
        self.extractions = extractions
        self.nodes: dict[str, GraphNode] = {}
        self.edges: list[GraphEdge] = []
        self.diagnostics: list[Diagnostic] = []
        self.components: dict[str, ComponentDef] = {}
        self.comp_ids: dict[int, str] = {}  # id(ComponentDef) -> node id
        self.state_ids: dict[int, str] = {}  # id(StateDecl) -> node id
        self.prop_ids: dict[int, str] = {}  # id(PropDecl) -> node id
        self.effect_ids: dict[int, str] = {}  # id(EffectDecl) -> node id
        self.by_file: dict[str, dict[str, list[ComponentDef]]] = {}
        self.by_name: dict[str, list[ComponentDef]] = {}
        self.file_of: dict[int, str] = {}  # id(ComponentDef) -> relpath
        self.downgraded: set[str] = set()

    def build(self) -> HookGraph:
        self._make_nodes()
        self._link_renders_and_flows()
        self._propagate_carries()
        self._link_effects()
        self._flag_recursion()
        self._collect_downgrades()
        for node in self.nodes.values():
            node.flags = sorted(set(node.flags))
        metrics = ProjectMetrics(
            jsx_file_count=len(self.snapshot.files),
            component_count=sum(
                1 for n in self.nodes.values() if n.kind == COMPONENT),
            total_loc=sum(f.line_count for f in self.snapshot.files),
            anti_pattern_counts={},
        )
        graph = HookGraph(
            components=self.components,
            nodes=self.nodes,
            edges=self.edges,
            diagnostics=self.diagnostics,
            metrics=metrics,
            downgraded_components=frozenset(self.downgraded),
        )
        for edge in self.edges:
            assert edge.from_node in self.nodes, edge.edge_id
            assert edge.to_node in self.nodes, edge.edge_id
            graph._out.setdefault(edge.from_node, []).append(edge)
            graph._in.setdefault(edge.to_node, []).append(edge)
        return graph

    # -- nodes -----------------------------------------------------------------

    def _make_nodes(self) -> None:
        for fx in self.extractions:
            self.diagnostics.extend(fx.diagnostics)
            file_index = self.by_file.setdefault(fx.path, {})
            for comp in fx.components:
                cid = node_id_for(COMPONENT, fx.path, comp.span)
                assert cid not in self.nodes, cid
                self.comp_ids[id(comp)] = cid
                self.components[cid] = comp
                self.file_of[id(comp)] = fx.path
                file_index.setdefault(comp.name, []).append(comp)
                self.by_name.setdefault(comp.name, []).append(comp)
                self.nodes[cid] = GraphNode(
                    cid, COMPONENT, comp.name, fx.path, comp.span,
                    component=comp,
                )
            # second pass so nested components resolve their parents
            for comp in fx.components:
                if comp.lexical_parent is not None:
                    node = self.nodes[self.comp_ids[id(comp)]]
                    node.parent_component = self.comp_ids.get(
                        id(comp.lexical_parent))
            for comp in fx.components:
                cid = self.comp_ids[id(comp)]
                for st in comp.states:
                    sid = node_id_for(STATE, fx.path, st.span)
                    assert sid not in self.nodes, sid
                    self.state_ids[id(st)] = sid
                    flags = ["synthesized"] if st.synthesized else []
                    if st.setter is None:
                        flags.append("no_setter")
                    self.nodes[sid] = GraphNode(
                        sid, STATE, st.name, fx.path, st.span,
                        parent_component=cid, flags=flags,
                        use_count=st.use_count(),
                        forward_count=st.forward_count(),
                        state=st,
                    )
                for prop in comp.props:
                    pid = node_id_for(PROP, fx.path, prop.span)
                    assert pid not in self.nodes, pid
                    self.prop_ids[id(prop)] = pid
                    flags = []
                    if prop.has_default:
                        flags.append("has_default")
                    if prop.source == "SpreadRest":
                        flags.append("rest")
                    if prop.source == "PropsMemberAccess":
                        flags.append("member_access")
                    self.nodes[pid] = GraphNode(
                        pid, PROP, prop.name, fx.path, prop.span,
                        parent_component=cid, flags=flags,
                        use_count=prop.use_count(),
                        forward_count=prop.forward_count(),
                        prop=prop,
                    )
                for k, eff in enumerate(comp.effects):
                    eid = node_id_for(EFFECT, fx.path, eff.span)
                    assert eid not in self.nodes, eid
                    self.effect_ids[id(eff)] = eid
                    flags = []
                    if eff.deps is None and not eff.non_literal_deps:
                        flags.append("no_deps")
                    if eff.non_literal_deps:
                        flags.append("non_literal_deps")
                    if eff.opaque_body:
                        flags.append("opaque_body")
                    self.nodes[eid] = GraphNode(
                        eid, EFFECT, f"useEffect#{k + 1}", fx.path, eff.span,
                        parent_component=cid, flags=flags,
                        effect=eff,
                    )

    # -- render resolution -------------------------------------------------------

    def _resolve_component(self, tag: str, file: str,
                           ) -> tuple[ComponentDef | None, str | None]:
        same_file = self.by_file.get(file, {}).get(tag, [])
        if len(same_file) == 1:
            return same_file[0], None
        if len(same_file) > 1:
            return None, "ambiguous_component"
        anywhere = self.by_name.get(tag, [])
        if len(anywhere) == 1:
            return anywhere[0], None
        if len(anywhere) > 1:
            return None, "ambiguous_component"
        return None, "unresolved_render"

    def _link_renders_and_flows(self) -> None:
        for fx in self.extractions:
            for comp in fx.components:
                for site in comp.component_sites():
                    self._link_site(fx.path, comp, site)

    def _link_site(self, file: str, comp: ComponentDef,
                   site: RenderSite) -> None:
        child, failure = self._resolve_component(site.tag, file)
        if child is None:
            article = ("is defined more than once"
                       if failure == "ambiguous_component"
                       else "does not match any component definition")
            self.diagnostics.append(Diagnostic(
                failure, site.span, comp.name,
                f"<{site.tag}> rendered by {comp.name} {article}",
            ))
            return
        parent_id = self.comp_ids[id(comp)]
        child_id = self.comp_ids[id(child)]
        self.edges.append(GraphEdge(
            _edge_id(RENDERS, parent_id, child_id, None, site.span),
            RENDERS, parent_id, child_id, site=site.span,
        ))
        for attr in site.attrs:
            self._link_attr_flow(attr, child)

    def _link_attr_flow(self, attr: AttrBinding,
                        child: ComponentDef) -> None:
        root = attr.root_binding
        if root is None:
            return
        if root.kind == "state":
            from_id = self.state_ids.get(id(root.state))
            flavor = "value"
        elif root.kind == "setter":
            from_id = self.state_ids.get(id(root.state))
            flavor = "setter"
        elif root.kind in ("prop", "props_rest"):
            from_id = self.prop_ids.get(id(root.prop))
            flavor = None  # inherited from whatever flows into the prop
        else:
            return
        if from_id is None:
            return
        target = child.prop_by_name(attr.name) or child.rest_prop
        if target is None:
            if child.props_escapes:
                # the child consumes its props bag opaquely; the value
                # may be used even though no declared prop matches
                self.nodes[from_id].flags.append("unknown_consumer")
            return
        to_id = self.prop_ids[id(target)]
        self.edges.append(GraphEdge(
            _edge_id(PROP_FLOW, from_id, to_id, attr.name, attr.span),
            PROP_FLOW, from_id, to_id, site=attr.span, label=attr.name,
            carries_value=(flavor == "value"),
            carries_setter=(flavor == "setter"),
        ))

    def _propagate_carries(self) -> None:
        """Push value/setter reachability through chained prop flows.

        A prop carries whatever any incoming flow can deliver; its own
        outgoing flows then carry the union. Iterate to a fixed point.
        """
        flows = [e for e in self.edges if e.kind == PROP_FLOW]
        carries: dict[str, tuple[bool, bool]] = {}
        for edge in flows:
            value, setter = carries.get(edge.to_node, (False, False))
            carries[edge.to_node] = (
                value or edge.carries_value, setter or edge.carries_setter)
        changed = True
        while changed:
            changed = False
            for edge in flows:
                src = self.nodes[edge.from_node]
                if src.kind != PROP:
                    continue
                in_value, in_setter = carries.get(edge.from_node,
                                                  (False, False))
                if in_value and not edge.carries_value:
                    edge.carries_value = True
                    changed = True
                if in_setter and not edge.carries_setter:
                    edge.carries_setter = True
                    changed = True
                out_value, out_setter = carries.get(edge.to_node,
                                                    (False, False))
                merged = (out_value or edge.carries_value,
                          out_setter or edge.carries_setter)
                if merged != (out_value, out_setter):
                    carries[edge.to_node] = merged
                    changed = True
        for node_id, (_, setter) in carries.items():
            if setter:
                self.nodes[node_id].flags.append("carries_setter")

    # -- effects -----------------------------------------------------------------

    def _link_effects(self) -> None:
        for fx in self.extractions:
            for comp in fx.components:
                for eff in comp.effects:
                    self._link_effect(eff)

    def _link_effect(self, eff: EffectDecl) -> None:
        effect_id = self.effect_ids[id(eff)]
        for dep in eff.deps or []:
            resolution = dep.resolution
            if resolution in ("State", "StateSetter"):
                from_id = self.state_ids.get(id(dep.binding.state))
            elif resolution == "Prop":
                from_id = self.prop_ids.get(id(dep.binding.prop))
            else:
                continue
            if from_id is None:
                continue
            self.edges.append(GraphEdge(
                _edge_id(EFFECT_DEP, from_id, effect_id, dep.raw_text,
                         dep.span),
                EFFECT_DEP, from_id, effect_id,
                site=dep.span, label=dep.raw_text,
            ))
        # one edge per reachable state; prefer the shortest hop chain
        targets: dict[str, tuple[tuple[str, ...], Span, str]] = {}
        for call in eff.sets:
            if call.binding.kind == "setter":
                state_id = self.state_ids.get(id(call.binding.state))
                if state_id is not None:
                    self._offer_target(
                        targets, state_id, (), call.span, call.written)
            elif call.binding.kind == "prop":
                prop_id = self.prop_ids.get(id(call.binding.prop))
                if prop_id is None:
                    continue
                for state_id, hops in self._setter_origins(prop_id, set()):
                    self._offer_target(
                        targets, state_id, hops, call.span, call.written)
        for state_id, (hops, span, written) in targets.items():
            self.edges.append(GraphEdge(
                _edge_id(EFFECT_SET, effect_id, state_id, written, span),
                EFFECT_SET, effect_id, state_id,
                site=span, label=written, hops=hops,
            ))

    @staticmethod
    def _offer_target(targets: dict, state_id: str, hops: tuple[str, ...],
                      span: Span, written: str) -> None:
        held = targets.get(state_id)
        if held is None or (len(hops), hops) < (len(held[0]), held[0]):
            targets[state_id] = (hops, span, written)

    def _setter_origins(self, prop_id: str, visited: set[str],
                        ) -> list[tuple[str, tuple[str, ...]]]:
        """Walk setter-carrying flows backward from a called prop.

        Returns (state node id, prop hop chain) pairs with the hop
        nearest the calling effect first.
        """
        visited = visited | {prop_id}
        found: list[tuple[str, tuple[str, ...]]] = []
        for edge in self.edges:
            if edge.kind != PROP_FLOW or edge.to_node != prop_id:
                continue
            if not edge.carries_setter:
                continue
            src = self.nodes[edge.from_node]
            if src.kind == STATE:
                found.append((edge.from_node, (prop_id,)))
            elif src.kind == PROP and edge.from_node not in visited:
                for state_id, hops in self._setter_origins(
                        edge.from_node, visited):
                    found.append((state_id, (prop_id,) + hops))
        return found

    # -- structure flags -----------------------------------------------------------

    def _flag_recursion(self) -> None:
        render_out: dict[str, set[str]] = {}
        for edge in self.edges:
            if edge.kind == RENDERS:
                render_out.setdefault(edge.from_node, set()).add(edge.to_node)
        for cid in self.components:
            stack = list(render_out.get(cid, ()))
            seen: set[str] = set()
            while stack:
                current = stack.pop()
                if current == cid:
                    self.nodes[cid].flags.append("recursive")
                    break
                if current in seen:
                    continue
                seen.add(current)
                stack.extend(render_out.get(current, ()))

    def _collect_downgrades(self) -> None:
        by_file_name: dict[tuple[str, str], list[str]] = {}
        for comp_id, comp in self.components.items():
            key = (self.file_of[id(comp)], comp.name)
            by_file_name.setdefault(key, []).append(comp_id)
        for diag in self.diagnostics:
            if diag.code not in DOWNGRADE_CODES or diag.component is None:
                continue
            file = self._diag_file(diag)
            if file is None:
                continue
            for comp_id in by_file_name.get((file, diag.component), []):
                self.downgraded.add(comp_id)

    def _diag_file(self, diag: Diagnostic) -> str | None:
        for f in self.snapshot.files:
            if f.file_id == diag.span.file_id:
                return f.relative_path
        return None


def build_graph(snapshot: ProjectSnapshot,
                extractions: list[FileExtract]) -> HookGraph:
    """Assemble the project graph from per-file extraction results.

    Render tags resolve to a component in the same file first, then to a
    unique project-wide name; ambiguity and misses become diagnostics,
    never errors.
    """
    return _Builder(snapshot, extractions).build()


def trace_provenance(graph: HookGraph, node_id: str,
                     ) -> list[ProvenancePath]:
    """Enumerate every maximal prop-flow chain leaving a state.

    The state's value and its setter are traced separately. Cycles are
    cut at the first repeated prop. A state that never flows anywhere
    yields one zero-hop path.
    """
    node = graph.nodes.get(node_id)
    if node is None or node.kind != STATE:
        raise NotAStateNode(node_id)
    out_flows = graph.outgoing(node_id, PROP_FLOW)
    if not out_flows:
        return [ProvenancePath(
            origin=node_id, root="value", hops=[],
            terminal_use=node.use_count > 0,
        )]
    paths: list[ProvenancePath] = []
    for flavor in ("value", "setter"):
        for edge in _distinct_targets(out_flows, flavor, set()):
            _walk(graph, node_id, flavor, edge, [], set(), paths)
    return paths


def _distinct_targets(edges: list[GraphEdge], flavor: str,
                      visited: set[str]) -> list[GraphEdge]:
    """Flavor-matching edges, one per destination.

    Parallel edges exist when the same value is passed at several render
    sites; per-definition provenance treats them as one flow.
    """
    seen: set[str] = set()
    picked: list[GraphEdge] = []
    for e in edges:
        if not _carries(e, flavor) or e.to_node in visited:
            continue
        if e.to_node in seen:
            continue
        seen.add(e.to_node)
        picked.append(e)
    return picked


def _carries(edge: GraphEdge, flavor: str) -> bool:
    return edge.carries_value if flavor == "value" else edge.carries_setter


def _walk(graph: HookGraph, origin: str, flavor: str, edge: GraphEdge,
          hops: list[PathHop], visited: set[str],
          paths: list[ProvenancePath]) -> None:
    prop = graph.nodes[edge.to_node]
    hop = PathHop(
        component_id=prop.parent_component or "",
        prop_id=prop.node_id,
        used_locally=prop.use_count > 0,
        forwarded=prop.forward_count > 0,
    )
    hops = hops + [hop]
    visited = visited | {prop.node_id}
    onward = _distinct_targets(
        graph.outgoing(prop.node_id, PROP_FLOW), flavor, visited)
    if not onward:
        paths.append(ProvenancePath(
            origin=origin, root=flavor, hops=hops,
            terminal_use=hop.used_locally,
        ))
        return
    for nxt in onward:
        _walk(graph, origin, flavor, nxt, hops, visited, paths)


def compute_metrics(graph: HookGraph, findings=()) -> ProjectMetrics:
    """Summarize the graph, folding in detector counts when available."""
    counts = {
        "UnreferencedStateOrProp": 0,
        "PropDrilling": 0,
        "EffectModifyingParentState": 0,
    }
    for finding in findings:
        if finding.kind in counts:
            counts[finding.kind] += 1
    return ProjectMetrics(
        jsx_file_count=graph.metrics.jsx_file_count,
        component_count=graph.metrics.component_count,
        total_loc=graph.metrics.total_loc,
        anti_pattern_counts=counts,
    )
