"""Extraction of components, hooks, props, and render sites.

One scoped walk over each file's normalized tree produces per-component
facts plus every resolved identifier reference, classified by where it
occurs: forwarded verbatim through a JSX attribute, referenced inside an
attribute expression, read inside an effect body, listed in a deps
array, or read anywhere else. The graph layer consumes these records
without revisiting the tree.

A component is a function (declaration, expression, or arrow bound to a
variable) whose name starts uppercase and that returns JSX: an element
or fragment appears under one of its return statements, or it is an
arrow whose expression body contains one. Hook calls are matched
against the file's import table: bare names, a local alias of the react
import, or a member access on a default or namespace react import. A
binding that shadows one of those names disables hook matching in that
scope.

Local aliases are resolved one level deep: ``const go = props.onGo`` or
``const v = stateVal`` makes later reads of the alias count against the
target. Deeper alias chains are left as ordinary locals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ingest import SourceFile
from .jsast import NodeKind, NormalizedAst, NormNode, Span

_K = NodeKind

# Diagnostic codes that downgrade findings touching the affected
# component from Definite to Suspect.
DOWNGRADE_CODES = frozenset({
    "parse_error",
    "unresolved_render",
    "ambiguous_component",
    "unresolved_dep",
    "unresolved_spread",
    "unresolved_state_shape",
    "non_literal_deps",
    "opaque_effect_body",
    "props_object_escape",
    "shadowed_binding",
})

# AttrBinding.value_kind values
IDENTIFIER_REF = "IdentifierRef"
MEMBER_REF = "MemberRef"
CALLBACK_WRAPPING = "CallbackWrapping"
LITERAL = "Literal"
COMPLEX_EXPR = "ComplexExpr"


@dataclass
class Diagnostic:
    code: str
    span: Span
    component: str | None
    message: str


@dataclass
class Binding:
    name: str
    kind: str  # prop|state|setter|props_object|props_rest|local|alias
    component: "ComponentDef | None"
    span: Span
    prop: "PropDecl | None" = None
    state: "StateDecl | None" = None
    alias_of: "Binding | None" = None
    reads: list["ReadRef"] = field(default_factory=list)
    calls: list["CallRef"] = field(default_factory=list)


@dataclass
class ReadRef:
    binding: Binding
    span: Span
    context: str  # forward|attr|effect|deps|spread|alias_decl|plain
    reader: "ComponentDef | None"
    attr: "AttrBinding | None" = None
    effect: "EffectDecl | None" = None
    via_alias: str | None = None


@dataclass
class CallRef:
    binding: Binding
    span: Span
    written: str
    reader: "ComponentDef | None"
    effect: "EffectDecl | None" = None


@dataclass
class PropDecl:
    name: str
    component: "ComponentDef"
    span: Span
    source: str  # DestructuredParam|PropsMemberAccess|SpreadRest
    local_name: str | None = None
    has_default: bool = False
    structural_use: bool = False  # nested destructuring consumes the value
    binding: Binding | None = None

    def use_count(self) -> int:
        n = sum(
            1 for r in self.binding.reads
            if r.context in ("attr", "effect", "deps", "plain")
        ) if self.binding else 0
        return n + (1 if self.structural_use else 0)

    def forward_count(self) -> int:
        if self.binding is None:
            return 0
        return sum(
            1 for r in self.binding.reads
            if r.context in ("forward", "spread")
        )


@dataclass
class StateDecl:
    name: str
    component: "ComponentDef"
    span: Span
    setter: str | None = None
    name_span: Span | None = None
    setter_span: Span | None = None
    synthesized: bool = False
    value_binding: Binding | None = None
    setter_binding: Binding | None = None

    def use_count(self) -> int:
        if self.value_binding is None:
            return 0
        return sum(
            1 for r in self.value_binding.reads
            if r.context in ("attr", "effect", "deps", "plain")
        )

    def forward_count(self) -> int:
        if self.value_binding is None:
            return 0
        return sum(
            1 for r in self.value_binding.reads
            if r.context in ("forward", "spread")
        )


@dataclass
class DepRef:
    name: str
    raw_text: str
    span: Span
    binding: Binding | None

    @property
    def resolution(self) -> str:
        if self.binding is None:
            return "Unresolved"
        return {
            "state": "State",
            "setter": "StateSetter",
            "prop": "Prop",
            "props_rest": "Prop",
        }.get(self.binding.kind, "LocalAlias")


@dataclass
class EffectDecl:
    component: "ComponentDef"
    span: Span
    body_span: Span | None = None
    deps: list[DepRef] | None = None
    deps_span: Span | None = None
    opaque_body: bool = False
    non_literal_deps: bool = False
    unresolved_deps: bool = False
    reads: list[ReadRef] = field(default_factory=list)
    sets: list[CallRef] = field(default_factory=list)


@dataclass
class AttrBinding:
    name: str
    span: Span
    site: "RenderSite"
    value_kind: str = LITERAL
    root_identifier: str | None = None
    root_binding: Binding | None = None
    expr: NormNode | None = None
    refs: list[ReadRef] = field(default_factory=list)
    calls: list[CallRef] = field(default_factory=list)

    @property
    def identity_ref(self) -> ReadRef | None:
        for r in self.refs:
            if r.context == "forward":
                return r
        return None


@dataclass
class SpreadBinding:
    span: Span
    site: "RenderSite"
    binding: Binding | None = None


@dataclass
class RenderSite:
    component: "ComponentDef | None"
    tag: str
    span: Span
    dom: bool
    attrs: list[AttrBinding] = field(default_factory=list)
    spreads: list[SpreadBinding] = field(default_factory=list)

    @property
    def has_spread(self) -> bool:
        return bool(self.spreads)


@dataclass
class ComponentDef:
    name: str
    file_id: int
    span: Span
    name_span: Span
    kind: str  # function|arrow
    node: NormNode
    lexical_parent: "ComponentDef | None" = None
    props: list[PropDecl] = field(default_factory=list)
    states: list[StateDecl] = field(default_factory=list)
    effects: list[EffectDecl] = field(default_factory=list)
    renders: list[RenderSite] = field(default_factory=list)
    aliases: list[tuple[str, Binding, Span]] = field(default_factory=list)
    props_param: Binding | None = None
    rest_prop: PropDecl | None = None
    props_escapes: list[ReadRef] = field(default_factory=list)
    _synth_count: int = 0

    def prop_by_name(self, name: str) -> PropDecl | None:
        for p in self.props:
            if p.name == name:
                return p
        return None

    def component_sites(self) -> list[RenderSite]:
        return [s for s in self.renders if not s.dom]


@dataclass
class FileExtract:
    file_id: int
    path: str
    components: list[ComponentDef]
    module_renders: list[RenderSite]
    diagnostics: list[Diagnostic]
    parse_failed: bool = False


def _is_upper(name: str | None) -> bool:
    return bool(name) and name[0].isupper()


def _returns_jsx(fn: NormNode) -> bool:
    body = fn.children[1] if len(fn.children) > 1 else None
    if body is None:
        return False
    if not (body.kind is _K.Other and body.tag == "Block"):
        # expression-bodied arrow
        return any(d.kind is _K.JsxElement for d in body.walk())
    for node in body.walk():
        if node.kind is _K.ReturnStmt:
            if any(d.kind is _K.JsxElement for d in node.walk()):
                return True
    return False


def _hook_aliases(ast: NormalizedAst, hook: str) -> tuple[set[str], set[str]]:
    """Names that call the hook directly, and react-object roots."""
    names = {hook}
    roots: set[str] = set()
    for b in ast.imports:
        if b.source != "react":
            continue
        if b.imported == hook:
            names.add(b.local)
        elif b.imported in ("default", "*"):
            roots.add(b.local)
    return names, roots


class _Extractor:
    def __init__(self, ast: NormalizedAst, file: SourceFile):
        self.ast = ast
        self.file = file
        self.source = file.content
        self.components: list[ComponentDef] = []
        self.module_renders: list[RenderSite] = []
        self.diagnostics: list[Diagnostic] = []
        self._comp_by_node: dict[int, ComponentDef] = {}
        self._scopes: list[dict[str, Binding]] = [{}]
        self._comps: list[ComponentDef | None] = [None]
        self._effects: list[EffectDecl] = []
        self._attrs: list[AttrBinding] = []
        self._state_names, self._react_roots = _hook_aliases(ast, "useState")
        self._effect_names, _ = _hook_aliases(ast, "useEffect")

    # -- scope helpers -------------------------------------------------------

    @property
    def _comp(self) -> ComponentDef | None:
        return self._comps[-1]

    def _resolve(self, name: str) -> Binding | None:
        for scope in reversed(self._scopes):
            if name in scope:
                return scope[name]
        return None

    def _bind(self, binding: Binding) -> Binding:
        shadowed = self._resolve(binding.name)
        if (
            shadowed is not None
            and shadowed.kind in ("prop", "state", "setter")
            and shadowed.component is self._comp
        ):
            self._diag(
                "shadowed_binding", binding.span,
                f"'{binding.name}' shadows a {shadowed.kind} of "
                f"{shadowed.component.name}",
            )
        self._scopes[-1][binding.name] = binding
        return binding

    def _diag(self, code: str, span: Span, message: str) -> None:
        comp = self._comp
        self.diagnostics.append(
            Diagnostic(code, span, comp.name if comp else None, message)
        )

    def _text(self, span: Span) -> str:
        data = self.source.encode("utf-8")
        return data[span.start_byte:span.end_byte].decode("utf-8", "replace")

    # -- component discovery ----------------------------------------------------

    def discover(self) -> None:
        self._discover_walk(self.ast.root, None)

    def _discover_walk(self, node: NormNode,
                       parent: ComponentDef | None) -> None:
        registered: ComponentDef | None = None
        if (
            node.kind is _K.FunctionDecl
            and not node.tag
            and _is_upper(node.name)
            and id(node) not in self._comp_by_node
        ):
            registered = self._register_component(
                node, node.name, node.span, "function", parent,
            )
        elif node.kind is _K.VariableDecl and len(node.children) >= 2:
            pattern, init = node.children[0], node.children[1]
            if (
                pattern.kind is _K.Identifier
                and _is_upper(pattern.name)
                and init.kind in (_K.ArrowFunction, _K.FunctionDecl)
                and id(init) not in self._comp_by_node
            ):
                kind = "arrow" if init.kind is _K.ArrowFunction else "function"
                registered = self._register_component(
                    init, pattern.name, pattern.span, kind, parent,
                )
        next_parent = registered if registered is not None else parent
        for child in node.children:
            child_parent = next_parent
            if registered is not None and child is not None:
                child_parent = registered if self._inside(
                    registered.node, child) else parent
            self._discover_walk(child, child_parent)

    @staticmethod
    def _inside(outer: NormNode, node: NormNode) -> bool:
        return node is outer or outer.span.contains(node.span)

    def _register_component(
        self,
        fn: NormNode,
        name: str,
        name_span: Span,
        kind: str,
        parent: ComponentDef | None,
    ) -> ComponentDef | None:
        if not _returns_jsx(fn):
            return None
        comp = ComponentDef(
            name=name, file_id=self.file.file_id, span=fn.span,
            name_span=name_span, kind=kind, node=fn, lexical_parent=parent,
        )
        self._comp_by_node[id(fn)] = comp
        self.components.append(comp)
        return comp

    # -- hook matching -------------------------------------------------------

    def _is_hook_call(self, call: NormNode, which: str) -> bool:
        if call.kind is not _K.CallExpr or not call.children:
            return False
        names = self._state_names if which == "useState" else self._effect_names
        callee = call.children[0]
        if callee.kind is _K.Identifier:
            if callee.name not in names:
                return False
            bound = self._resolve(callee.name)
            return bound is None  # rebinding the name disables matching
        if callee.kind is _K.MemberExpr and callee.name == which:
            root = callee.children[0] if callee.children else None
            if root is not None and root.kind is _K.Identifier:
                return (
                    root.name in self._react_roots
                    and self._resolve(root.name) is None
                )
        return False

    # -- main walk ----------------------------------------------------------------

    def run(self) -> FileExtract:
        self.discover()
        self._visit(self.ast.root)
        return FileExtract(
            file_id=self.file.file_id,
            path=self.file.relative_path,
            components=self.components,
            module_renders=self.module_renders,
            diagnostics=self.diagnostics,
            parse_failed=bool(self.ast.parse_diagnostics),
        )

    def _visit(self, node: NormNode) -> None:
        k = node.kind
        if k is _K.FunctionDecl or k is _K.ArrowFunction:
            self._enter_function(node)
        elif k is _K.Other and node.tag in ("GeneratorFunction", "Method"):
            self._enter_function(node)
        elif k is _K.VariableDecl:
            self._visit_variable_decl(node)
        elif k is _K.CallExpr:
            self._visit_call(node)
        elif k is _K.MemberExpr:
            self._visit_member(node)
        elif k is _K.Identifier:
            if not node.binding:
                self._read(node)
        elif k is _K.JsxElement:
            self._visit_jsx(node)
        elif k is _K.Other and node.tag in ("Block", "Module"):
            self._scopes.append({})
            self._hoist_functions(node)
            for c in node.children:
                self._visit(c)
            self._scopes.pop()
        else:
            for c in node.children:
                self._visit(c)

    def _hoist_functions(self, block: NormNode) -> None:
        for stmt in block.children:
            inner = stmt
            while inner.kind is _K.Other and inner.tag in (
                "Export", "ExportDefault", "Decorated"
            ) and inner.children:
                inner = inner.children[-1]
            if inner.kind is _K.FunctionDecl and inner.name and not inner.tag:
                if id(inner) in self._comp_by_node:
                    continue
                self._bind(Binding(inner.name, "local", self._comp,
                                   inner.span))

    def _enter_function(self, node: NormNode) -> None:
        comp = self._comp_by_node.get(id(node))
        params = node.children[0] if node.children else None
        body = node.children[1] if len(node.children) > 1 else None
        self._scopes.append({})
        if comp is not None:
            self._comps.append(comp)
        if params is not None and params.children:
            items = list(params.children)
            if comp is not None:
                self._bind_props(comp, items[0])
                items = items[1:]
            for item in items:
                self._bind_pattern(item, "local")
        if body is not None:
            self._visit(body)
        if comp is not None:
            self._comps.pop()
        self._scopes.pop()

    # -- props ------------------------------------------------------------------

    def _bind_props(self, comp: ComponentDef, pattern: NormNode) -> None:
        if pattern.kind is _K.Other and pattern.tag == "DefaultPattern":
            if len(pattern.children) > 1:
                self._visit(pattern.children[1])
            if pattern.children:
                self._bind_props(comp, pattern.children[0])
            return
        if pattern.kind is _K.Identifier:
            comp.props_param = self._bind(Binding(
                pattern.name, "props_object", comp, pattern.span,
            ))
            return
        if pattern.kind is _K.ObjectPattern:
            self._bind_props_pattern(comp, pattern)
            return
        # anything else is outside the supported props shapes
        self._bind_pattern(pattern, "local")

    def _bind_props_pattern(self, comp: ComponentDef,
                            pattern: NormNode) -> None:
        for child in pattern.children:
            if child.kind is _K.Identifier:
                self._add_prop(comp, child.name, child.name, child.span,
                               "DestructuredParam")
            elif child.kind is _K.Other and child.tag == "DefaultPattern":
                target = child.children[0]
                if len(child.children) > 1:
                    self._visit(child.children[1])
                if target.kind is _K.Identifier:
                    prop = self._add_prop(comp, target.name, target.name,
                                          target.span, "DestructuredParam")
                    prop.has_default = True
                else:
                    self._bind_pattern(target, "local")
            elif child.kind is _K.Other and child.tag == "KeyedPattern":
                self._bind_keyed_prop(comp, child)
            elif child.kind is _K.Other and child.tag == "RestPattern":
                target = child.children[0] if child.children else None
                if target is not None and target.kind is _K.Identifier:
                    prop = self._add_prop(
                        comp, "..." + target.name, target.name,
                        target.span, "SpreadRest", bind=False,
                    )
                    comp.rest_prop = prop
                    prop.binding = self._bind(Binding(
                        target.name, "props_rest", comp, target.span,
                        prop=prop,
                    ))
                else:
                    self._bind_pattern(child, "local")
            else:
                self._bind_pattern(child, "local")

    def _bind_keyed_prop(self, comp: ComponentDef, keyed: NormNode) -> None:
        if keyed.key is None:
            # computed destructuring key: prop identity unknown
            self._diag(
                "props_object_escape", keyed.span,
                f"computed props key in {comp.name}",
            )
            for c in keyed.children:
                self._bind_pattern(c, "local")
            return
        sub = keyed.children[-1]
        if sub.kind is _K.Other and sub.tag == "DefaultPattern":
            if len(sub.children) > 1:
                self._visit(sub.children[1])
            target = sub.children[0]
            if target.kind is _K.Identifier:
                prop = self._add_prop(comp, keyed.key, target.name,
                                      target.span, "DestructuredParam")
                prop.has_default = True
            else:
                prop = self._add_prop(comp, keyed.key, None, keyed.span,
                                      "DestructuredParam", bind=False)
                prop.structural_use = True
                self._bind_pattern(target, "local")
            return
        if sub.kind is _K.Identifier:
            self._add_prop(comp, keyed.key, sub.name, sub.span,
                           "DestructuredParam")
            return
        prop = self._add_prop(comp, keyed.key, None, keyed.span,
                              "DestructuredParam", bind=False)
        prop.structural_use = True
        self._bind_pattern(sub, "local")

    def _add_prop(
        self,
        comp: ComponentDef,
        name: str,
        local: str | None,
        span: Span,
        source: str,
        bind: bool = True,
    ) -> PropDecl:
        prop = PropDecl(name=name, component=comp, span=span, source=source,
                        local_name=local)
        comp.props.append(prop)
        if bind and local is not None:
            prop.binding = self._bind(Binding(local, "prop", comp, span,
                                              prop=prop))
        return prop

    def _member_prop(self, comp: ComponentDef, name: str,
                     span: Span) -> PropDecl:
        existing = comp.prop_by_name(name)
        if existing is not None:
            return existing
        prop = PropDecl(name=name, component=comp, span=span,
                        source="PropsMemberAccess", local_name=None)
        prop.binding = Binding(name, "prop", comp, span, prop=prop)
        comp.props.append(prop)
        return prop

    # -- patterns outside props ---------------------------------------------------

    def _bind_pattern(self, pattern: NormNode, kind: str) -> None:
        k = pattern.kind
        if k is _K.Identifier:
            self._bind(Binding(pattern.name, kind, self._comp, pattern.span))
        elif k is _K.ObjectPattern or k is _K.ArrayPattern:
            for c in pattern.children:
                self._bind_pattern(c, kind)
        elif k is _K.Other and pattern.tag == "KeyedPattern":
            # a computed key is an expression and must be visited as reads
            if pattern.key is None and len(pattern.children) > 1:
                self._visit(pattern.children[0])
            self._bind_pattern(pattern.children[-1], kind)
        elif k is _K.Other and pattern.tag == "DefaultPattern":
            if len(pattern.children) > 1:
                self._visit(pattern.children[1])
            self._bind_pattern(pattern.children[0], kind)
        elif k is _K.Other and pattern.tag == "RestPattern":
            for c in pattern.children:
                self._bind_pattern(c, kind)
        # holes and anything else bind nothing

    # -- declarations ----------------------------------------------------------

    def _visit_variable_decl(self, node: NormNode) -> None:
        pattern = node.children[0] if node.children else None
        init = node.children[1] if len(node.children) > 1 else None
        comp = self._comp
        if pattern is None:
            return

        if init is not None and comp is not None and \
                self._is_hook_call(init, "useState"):
            self._visit_state_decl(node, pattern, init, comp)
            return

        if init is not None and comp is not None \
                and pattern.kind is _K.ObjectPattern \
                and init.kind is _K.Identifier:
            bound = self._resolve(init.name)
            if bound is not None and bound.kind == "props_object" \
                    and bound.component is comp:
                self._bind_props_pattern(comp, pattern)
                return

        if pattern.kind is _K.Identifier and init is not None \
                and comp is not None and self._make_alias(pattern, init, comp):
            return

        if init is not None:
            self._visit(init)
        self._bind_pattern(pattern, "local")

    def _make_alias(self, pattern: NormNode, init: NormNode,
                    comp: ComponentDef) -> bool:
        """One-level alias: const x = <prop/state/setter or props.member>."""
        target: Binding | None = None
        if init.kind is _K.Identifier:
            bound = self._resolve(init.name)
            if bound is not None and bound.kind in ("prop", "state", "setter"):
                target = bound
        elif init.kind is _K.MemberExpr and init.tag != "computed" \
                and init.name is not None and init.children \
                and init.children[0].kind is _K.Identifier:
            root = self._resolve(init.children[0].name)
            if root is not None and root.kind == "props_object":
                prop = self._member_prop(root.component, init.name, init.span)
                target = prop.binding
        if target is None:
            return False
        target.reads.append(ReadRef(target, init.span, "alias_decl", comp))
        alias = self._bind(Binding(
            pattern.name, "alias", comp, pattern.span, alias_of=target,
        ))
        comp.aliases.append((pattern.name, target, alias.span))
        return True

    def _visit_state_decl(
        self,
        decl: NormNode,
        pattern: NormNode,
        call: NormNode,
        comp: ComponentDef,
    ) -> None:
        for arg in call.children[1:]:
            self._visit(arg)

        if pattern.kind is _K.ArrayPattern:
            elems = pattern.children
            value = elems[0] if len(elems) > 0 else None
            setter = elems[1] if len(elems) > 1 else None

            def unwrap(n: NormNode | None) -> NormNode | None:
                if n is None or (n.kind is _K.Other and n.tag == "Hole"):
                    return None
                if n.kind is _K.Other and n.tag == "DefaultPattern":
                    if len(n.children) > 1:
                        self._visit(n.children[1])
                    return n.children[0] if n.children else None
                return n

            value = unwrap(value)
            setter = unwrap(setter)
            value_ok = value is not None and value.kind is _K.Identifier
            setter_ok = setter is not None and setter.kind is _K.Identifier
            if not value_ok and not setter_ok:
                self._synth_state(decl, comp)
                self._bind_pattern(pattern, "local")
                return
            if value_ok:
                name = value.name
            else:
                name = f"_state_{comp._synth_count}"
                comp._synth_count += 1
            state = StateDecl(
                name=name, component=comp, span=decl.span,
                setter=setter.name if setter_ok else None,
                name_span=value.span if value_ok else None,
                setter_span=setter.span if setter_ok else None,
                synthesized=not value_ok,
            )
            comp.states.append(state)
            if value_ok:
                state.value_binding = self._bind(Binding(
                    value.name, "state", comp, value.span, state=state,
                ))
            if setter_ok:
                state.setter_binding = self._bind(Binding(
                    setter.name, "setter", comp, setter.span, state=state,
                ))
            if len(elems) > 2:
                self._diag(
                    "unresolved_state_shape", pattern.span,
                    f"extra state pattern elements in {comp.name}",
                )
            return

        if pattern.kind is _K.Identifier:
            # whole-pair binding: reads of it still count against the state
            state = self._synth_state(decl, comp)
            state.value_binding = self._bind(Binding(
                pattern.name, "state", comp, pattern.span, state=state,
            ))
            return

        self._synth_state(decl, comp)
        self._bind_pattern(pattern, "local")

    def _synth_state(self, at: NormNode, comp: ComponentDef) -> StateDecl:
        name = f"_state_{comp._synth_count}"
        comp._synth_count += 1
        state = StateDecl(name=name, component=comp, span=at.span,
                          synthesized=True)
        comp.states.append(state)
        self._diag(
            "unresolved_state_shape", at.span,
            f"state in {comp.name} is not destructured to a "
            f"[value, setter] pair; recorded as {name}",
        )
        return state

    # -- calls and effects ----------------------------------------------------

    def _visit_call(self, node: NormNode) -> None:
        callee = node.children[0] if node.children else None
        args = node.children[1:]
        comp = self._comp
        if callee is None:
            return

        if comp is not None and self._is_hook_call(node, "useEffect"):
            self._visit_effect(node, args, comp)
            return
        if comp is not None and self._is_hook_call(node, "useState"):
            # reachable only outside a variable declarator
            self._synth_state(node, comp)
            for arg in args:
                self._visit(arg)
            return

        if callee.kind is _K.Identifier:
            binding = self._read(callee)
            if binding is not None:
                self._record_call(binding, callee.span, callee.name)
            for arg in args:
                self._visit(arg)
            return

        if callee.kind is _K.MemberExpr and callee.tag != "computed" \
                and callee.name is not None and callee.children \
                and callee.children[0].kind is _K.Identifier:
            root = self._resolve(callee.children[0].name)
            if root is not None and root.kind == "props_object":
                binding = self._visit_member(callee)
                if binding is not None:
                    self._record_call(binding, callee.span, callee.name)
                for arg in args:
                    self._visit(arg)
                return

        self._visit(callee)
        for arg in args:
            self._visit(arg)

    def _record_call(self, binding: Binding, span: Span,
                     written: str) -> None:
        ref = CallRef(
            binding, span, written, self._comp,
            self._effects[-1] if self._effects else None,
        )
        binding.calls.append(ref)
        if self._attrs:
            self._attrs[-1].calls.append(ref)
        if ref.effect is not None and binding.kind in ("setter", "prop"):
            ref.effect.sets.append(ref)

    def _visit_effect(
        self, node: NormNode, args: list[NormNode], comp: ComponentDef
    ) -> None:
        effect = EffectDecl(component=comp, span=node.span)
        comp.effects.append(effect)

        callback = args[0] if args else None
        if callback is not None and callback.kind in (
            _K.ArrowFunction, _K.FunctionDecl
        ):
            effect.body_span = callback.span
            self._effects.append(effect)
            self._visit(callback)
            self._effects.pop()
        elif callback is not None:
            effect.opaque_body = True
            self._diag(
                "opaque_effect_body", callback.span,
                f"effect body in {comp.name} is not an inline function",
            )
            self._visit(callback)

        if len(args) >= 2:
            deps = args[1]
            effect.deps_span = deps.span
            if deps.kind is _K.Other and deps.tag == "ArrayLiteral":
                effect.deps = []
                for el in deps.children:
                    self._visit_dep(effect, el)
            else:
                effect.non_literal_deps = True
                self._diag(
                    "non_literal_deps", deps.span,
                    f"effect deps in {comp.name} are not an array literal",
                )
                self._visit(deps)
        for extra in args[2:]:
            self._visit(extra)

    def _visit_dep(self, effect: EffectDecl, el: NormNode) -> None:
        if el.kind is _K.Identifier:
            binding = self._read(el, context="deps")
            effect.deps.append(
                DepRef(el.name, self._text(el.span), el.span, binding))
            return
        if el.kind is _K.MemberExpr:
            root = el.member_root()
            if root is not None and root.kind is _K.Identifier:
                binding = self._visit_member(el, context="deps")
                effect.deps.append(
                    DepRef(root.name, self._text(el.span), el.span, binding))
                return
        effect.unresolved_deps = True
        self._diag(
            "unresolved_dep", el.span,
            f"effect dependency in {effect.component.name} is not a "
            "name or member chain",
        )
        self._visit(el)

    # -- reads -----------------------------------------------------------------

    def _classify(self, node: NormNode, context: str | None,
                  ) -> tuple[str, "AttrBinding | None", "EffectDecl | None"]:
        attr = self._attrs[-1] if self._attrs else None
        effect = self._effects[-1] if self._effects else None
        if context is None:
            if attr is not None:
                context = "forward" if attr.expr is node else "attr"
            elif effect is not None:
                context = "effect"
            else:
                context = "plain"
        return (
            context,
            attr if context in ("forward", "attr") else None,
            effect,
        )

    def _record_read(self, binding: Binding, node: NormNode,
                     context: str | None,
                     via_alias: str | None = None) -> Binding:
        context, attr, effect = self._classify(node, context)
        ref = ReadRef(binding, node.span, context, self._comp,
                      attr=attr, effect=effect, via_alias=via_alias)
        binding.reads.append(ref)
        if attr is not None:
            attr.refs.append(ref)
        if effect is not None and context == "effect":
            effect.reads.append(ref)
        return binding

    def _read(self, node: NormNode,
              context: str | None = None) -> Binding | None:
        binding = self._resolve(node.name)
        if binding is None:
            return None
        via = None
        if binding.kind == "alias" and binding.alias_of is not None:
            via = binding.name
            binding = binding.alias_of
        if binding.kind == "props_object":
            owner = binding.component
            if owner is not None:
                context2, _, _ = self._classify(node, context)
                ref = ReadRef(binding, node.span, context2, self._comp)
                binding.reads.append(ref)
                owner.props_escapes.append(ref)
                self._diag(
                    "props_object_escape", node.span,
                    f"props object of {owner.name} used as a value",
                )
            return binding
        return self._record_read(binding, node, context, via)

    def _visit_member(
        self, node: NormNode, context: str | None = None
    ) -> Binding | None:
        if node.tag == "computed":
            result = None
            obj = node.children[0] if node.children else None
            if obj is not None:
                if obj.kind is _K.Identifier:
                    result = self._read(obj, context=context)
                elif obj.kind is _K.MemberExpr:
                    result = self._visit_member(obj, context=context)
                else:
                    self._visit(obj)
            for idx in node.children[1:]:
                self._visit(idx)
            return result
        obj = node.children[0] if node.children else None
        if obj is None:
            return None
        if obj.kind is _K.Identifier:
            binding = self._resolve(obj.name)
            if (
                binding is not None
                and binding.kind == "props_object"
                and node.name is not None
            ):
                prop = self._member_prop(binding.component, node.name,
                                         node.span)
                return self._record_read(prop.binding, node, context)
            return self._read(obj, context=context)
        if obj.kind is _K.MemberExpr:
            return self._visit_member(obj, context=context)
        self._visit(obj)
        return None

    # -- JSX -----------------------------------------------------------------

    def _visit_jsx(self, node: NormNode) -> None:
        name = node.name
        comp = self._comp
        site: RenderSite | None = None
        if name is not None:
            site = RenderSite(component=comp, tag=name, span=node.span,
                              dom=not _is_upper(name))
            if comp is not None:
                comp.renders.append(site)
            else:
                self.module_renders.append(site)

        for child in node.children:
            if child.kind is _K.JsxAttribute and site is not None:
                if site.dom:
                    for vc in child.children:
                        self._visit(vc)
                    continue
                self._visit_attr(site, child)
            elif child.kind is _K.JsxSpreadAttribute and site is not None \
                    and not site.dom:
                self._visit_spread(site, child)
            else:
                self._visit(child)

    def _visit_attr(self, site: RenderSite, attr_node: NormNode) -> None:
        value = attr_node.children[0] if attr_node.children else None
        ab = AttrBinding(name=attr_node.name, span=attr_node.span, site=site)
        site.attrs.append(ab)
        if value is None:
            return  # bare attribute: boolean literal
        expr: NormNode | None = None
        if value.kind is _K.JsxExpressionContainer:
            expr = value.children[0] if value.children else None
        elif value.kind is _K.JsxElement:
            expr = value
        if expr is None:
            return  # string or empty value: literal
        ab.expr = expr
        self._attrs.append(ab)
        self._visit(expr)
        self._attrs.pop()
        self._classify_attr(ab, expr)

    def _classify_attr(self, ab: AttrBinding, expr: NormNode) -> None:
        k = expr.kind
        if k is _K.Identifier:
            ab.value_kind = IDENTIFIER_REF
            ab.root_identifier = expr.name
            ref = ab.identity_ref
            ab.root_binding = ref.binding if ref is not None else None
            return
        if k is _K.MemberExpr:
            root = expr.member_root()
            if root is not None and root.kind is _K.Identifier:
                ab.value_kind = MEMBER_REF
                ab.root_identifier = root.name
                # the chain's recorded read starts where the chain starts;
                # index-expression reads inside computed access start later
                start = expr.span.start_byte
                ab.root_binding = next(
                    (r.binding for r in ab.refs
                     if r.span.start_byte == start), None,
                )
                return
            ab.value_kind = COMPLEX_EXPR
            return
        if k in (_K.ArrowFunction, _K.FunctionDecl):
            if ab.calls:
                ab.value_kind = CALLBACK_WRAPPING
                ab.root_identifier = ab.calls[0].written
                ab.root_binding = ab.calls[0].binding
            elif ab.refs:
                ab.value_kind = CALLBACK_WRAPPING
                ab.root_identifier = self._text(ab.refs[0].span)
                ab.root_binding = ab.refs[0].binding
            else:
                ab.value_kind = COMPLEX_EXPR
            return
        if k is _K.Other and expr.tag in (
            "Literal", "StringLiteral", "TemplateLiteral",
        ) and not ab.refs:
            ab.value_kind = LITERAL
            return
        ab.value_kind = COMPLEX_EXPR

    def _visit_spread(self, site: RenderSite, spread_node: NormNode) -> None:
        expr = spread_node.children[0] if spread_node.children else None
        sb = SpreadBinding(span=spread_node.span, site=site)
        site.spreads.append(sb)
        owner = site.component.name if site.component else "module scope"
        self._diag(
            "unresolved_spread", spread_node.span,
            f"spread into <{site.tag}> from {owner} hides which props flow",
        )
        if expr is None:
            return
        if expr.kind is _K.Identifier:
            sb.binding = self._read(expr, context="spread")
        else:
            self._visit(expr)


def extract_file(ast: NormalizedAst, file: SourceFile) -> FileExtract:
    """Extract all component facts from one parsed file."""
    if ast.parse_diagnostics:
        diags = [
            Diagnostic("parse_error", span, None, message)
            for span, message in ast.parse_diagnostics
        ]
        return FileExtract(
            file_id=file.file_id, path=file.relative_path,
            components=[], module_renders=[], diagnostics=diags,
            parse_failed=True,
        )
    return _Extractor(ast, file).run()
