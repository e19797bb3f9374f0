"""Extraction behavior: components, props, state, effects, render sites.

Expected counts in these tests are hand-traced from the inline sources.
"""

import textwrap

from hookgraph.extract import (
    CALLBACK_WRAPPING,
    COMPLEX_EXPR,
    IDENTIFIER_REF,
    LITERAL,
    MEMBER_REF,
    extract_file,
)
from hookgraph.ingest import SourceFile
from hookgraph.jsast import parse_source


def extract(src: str, path: str = "App.jsx"):
    src = textwrap.dedent(src)
    sf = SourceFile.from_content(0, path, src)
    ast = parse_source(src, file_id=0)
    assert not ast.parse_diagnostics, ast.parse_diagnostics
    return extract_file(ast, sf)


def comp(fx, name: str):
    for c in fx.components:
        if c.name == name:
            return c
    raise AssertionError(f"no component {name!r} in {[c.name for c in fx.components]}")


def codes(fx):
    return sorted(d.code for d in fx.diagnostics)


class TestDiscovery:
    def test_function_declaration(self):
        fx = extract("""
            function App() {
              return <div />;
            }
        """)
        assert [c.name for c in fx.components] == ["App"]
        assert fx.components[0].kind == "function"
        assert fx.components[0].lexical_parent is None

    def test_arrow_and_function_expression(self):
        fx = extract("""
            const Card = () => <section />;
            const Badge = function () {
              return <b />;
            };
        """)
        assert [c.name for c in fx.components] == ["Card", "Badge"]
        assert comp(fx, "Card").kind == "arrow"
        assert comp(fx, "Badge").kind == "function"

    def test_export_default(self):
        fx = extract("""
            export default function Page() {
              return <main />;
            }
        """)
        assert [c.name for c in fx.components] == ["Page"]

    def test_lowercase_not_component(self):
        fx = extract("""
            function makeRow() {
              return <tr />;
            }
        """)
        assert fx.components == []

    def test_no_jsx_not_component(self):
        fx = extract("""
            function Sum(a, b) {
              return a + b;
            }
            const Config = () => ({ mode: "strict" });
        """)
        assert fx.components == []

    def test_jsx_outside_return_not_component(self):
        fx = extract("""
            function Builder() {
              const tpl = <div />;
              registry.add(tpl);
              return registry;
            }
        """)
        assert fx.components == []

    def test_jsx_inside_returned_callback_counts(self):
        fx = extract("""
            function List({ items }) {
              return items.map((i) => <li key={i}>{i}</li>);
            }
        """)
        assert [c.name for c in fx.components] == ["List"]

    def test_nested_component(self):
        fx = extract("""
            function Outer() {
              function Inner() {
                return <em />;
              }
              return <Inner />;
            }
        """)
        assert [c.name for c in fx.components] == ["Outer", "Inner"]
        outer = comp(fx, "Outer")
        inner = comp(fx, "Inner")
        assert inner.lexical_parent is outer
        assert [s.tag for s in outer.renders] == ["Inner"]
        assert [s.tag for s in inner.renders] == ["em"]

    def test_named_callback_expression_not_component(self):
        fx = extract("""
            function List({ items }) {
              return <ul>{items.map(function Row(i) { return <li>{i}</li>; })}</ul>;
            }
        """)
        assert [c.name for c in fx.components] == ["List"]


class TestProps:
    def test_destructured(self):
        fx = extract("""
            function Badge({ label, tone }) {
              return <span className={tone}>{label}</span>;
            }
        """)
        badge = comp(fx, "Badge")
        assert [(p.name, p.source) for p in badge.props] == [
            ("label", "DestructuredParam"), ("tone", "DestructuredParam"),
        ]
        assert all(p.binding is not None for p in badge.props)

    def test_alias_and_default(self):
        fx = extract("""
            function Badge({ label: text, size = 2 }) {
              return <span data-n={size}>{text}</span>;
            }
        """)
        badge = comp(fx, "Badge")
        by_name = {p.name: p for p in badge.props}
        assert by_name["label"].local_name == "text"
        assert by_name["size"].has_default
        assert not by_name["label"].has_default

    def test_rest(self):
        fx = extract("""
            function Button({ kind, ...rest }) {
              return <button className={kind} {...rest} />;
            }
        """)
        btn = comp(fx, "Button")
        assert btn.rest_prop is not None
        assert btn.rest_prop.name == "...rest"
        assert btn.rest_prop.local_name == "rest"
        assert btn.rest_prop.source == "SpreadRest"

    def test_member_access(self):
        fx = extract("""
            function Panel(props) {
              return <div title={props.title}>{props.body}</div>;
            }
        """)
        panel = comp(fx, "Panel")
        assert [(p.name, p.source) for p in panel.props] == [
            ("title", "PropsMemberAccess"), ("body", "PropsMemberAccess"),
        ]
        # accessing members is not an escape
        assert panel.props_escapes == []
        assert "props_object_escape" not in codes(fx)

    def test_repeated_member_access_single_prop(self):
        fx = extract("""
            function Panel(props) {
              return <div>{props.x}{props.x}</div>;
            }
        """)
        panel = comp(fx, "Panel")
        assert len(panel.props) == 1
        assert len(panel.props[0].binding.reads) == 2

    def test_body_destructuring(self):
        fx = extract("""
            function Panel(props) {
              const { title, body: text } = props;
              return <div title={title}>{text}</div>;
            }
        """)
        panel = comp(fx, "Panel")
        assert [(p.name, p.local_name) for p in panel.props] == [
            ("title", "title"), ("body", "text"),
        ]
        assert "props_object_escape" not in codes(fx)

    def test_props_escape(self):
        fx = extract("""
            function Relay(props) {
              console.log(props);
              return <div />;
            }
        """)
        relay = comp(fx, "Relay")
        assert len(relay.props_escapes) == 1
        assert codes(fx) == ["props_object_escape"]

    def test_nested_pattern_prop(self):
        fx = extract("""
            function Avatar({ user: { photo } }) {
              return <img src={photo} />;
            }
        """)
        avatar = comp(fx, "Avatar")
        assert [(p.name, p.source) for p in avatar.props] == [
            ("user", "DestructuredParam"),
        ]
        assert avatar.props[0].structural_use
        assert avatar.props[0].use_count() == 1


class TestAliases:
    def test_member_alias(self):
        fx = extract("""
            function Panel(props) {
              const go = props.onGo;
              return <button onClick={go} />;
            }
        """)
        panel = comp(fx, "Panel")
        on_go = panel.prop_by_name("onGo")
        assert on_go is not None
        contexts = sorted(r.context for r in on_go.binding.reads)
        assert contexts == ["alias_decl", "plain"]
        assert on_go.binding.reads[-1].via_alias == "go"
        # the alias declaration itself is not a use
        assert on_go.use_count() == 1

    def test_state_alias(self):
        fx = extract("""
            import { useState } from "react";
            function Meter() {
              const [level, setLevel] = useState(0);
              const v = level;
              return <i>{v}</i>;
            }
        """)
        meter = comp(fx, "Meter")
        st = meter.states[0]
        assert st.use_count() == 1
        contexts = sorted(r.context for r in st.value_binding.reads)
        assert contexts == ["alias_decl", "plain"]

    def test_setter_alias_called(self):
        fx = extract("""
            import { useEffect, useState } from "react";
            function Sync({ on }) {
              const [v, setV] = useState(0);
              const update = setV;
              useEffect(() => {
                update(on);
              }, [on]);
              return <i>{v}</i>;
            }
        """)
        sync = comp(fx, "Sync")
        eff = sync.effects[0]
        assert [c.binding.name for c in eff.sets] == ["setV"]
        assert eff.sets[0].written == "update"

    def test_alias_of_alias_not_followed(self):
        fx = extract("""
            import { useState } from "react";
            function Chain() {
              const [n, setN] = useState(0);
              const a = n;
              const b = a;
              return <i>{b}</i>;
            }
        """)
        chain = comp(fx, "Chain")
        st = chain.states[0]
        # alias_decl for a, plain read redirected from `const b = a`;
        # `b` itself is an ordinary local, so {b} attributes nowhere
        contexts = sorted(r.context for r in st.value_binding.reads)
        assert contexts == ["alias_decl", "plain"]

    def test_alias_recorded_on_component(self):
        fx = extract("""
            import { useState } from "react";
            function Meter() {
              const [level, setLevel] = useState(0);
              const v = level;
              return <i>{v}</i>;
            }
        """)
        meter = comp(fx, "Meter")
        assert [(name, target.name) for name, target, _ in meter.aliases] == [
            ("v", "level"),
        ]


class TestState:
    def test_pair(self):
        fx = extract("""
            import { useState } from "react";
            function Counter() {
              const [n, setN] = useState(0);
              return <span>{n}</span>;
            }
        """)
        counter = comp(fx, "Counter")
        assert [(s.name, s.setter) for s in counter.states] == [("n", "setN")]
        st = counter.states[0]
        assert st.value_binding.kind == "state"
        assert st.setter_binding.kind == "setter"
        assert not st.synthesized

    def test_value_only(self):
        fx = extract("""
            import { useState } from "react";
            function Snapshot() {
              const [frozen] = useState(window.innerWidth);
              return <i>{frozen}</i>;
            }
        """)
        snap = comp(fx, "Snapshot")
        assert [(s.name, s.setter) for s in snap.states] == [("frozen", None)]
        assert codes(fx) == []

    def test_whole_pair_synthesized(self):
        fx = extract("""
            import { useState } from "react";
            function Odd() {
              const pair = useState(1);
              return <span>{pair[0]}</span>;
            }
        """)
        odd = comp(fx, "Odd")
        assert [(s.name, s.synthesized) for s in odd.states] == [
            ("_state_0", True),
        ]
        assert codes(fx) == ["unresolved_state_shape"]
        # reads of the whole pair still count against the state
        assert odd.states[0].use_count() == 1

    def test_bare_call_synthesized(self):
        fx = extract("""
            import { useState } from "react";
            function Weird() {
              useState(0);
              return <s />;
            }
        """)
        weird = comp(fx, "Weird")
        assert [(s.name, s.synthesized) for s in weird.states] == [
            ("_state_0", True),
        ]
        assert codes(fx) == ["unresolved_state_shape"]

    def test_aliased_import(self):
        fx = extract("""
            import { useState as useBox } from "react";
            function Cell() {
              const [v, setV] = useBox("");
              return <td>{v}</td>;
            }
        """)
        assert [(s.name, s.setter) for s in comp(fx, "Cell").states] == [
            ("v", "setV"),
        ]

    def test_react_member_call(self):
        fx = extract("""
            import React from "react";
            function Clock() {
              const [t, setT] = React.useState(Date.now());
              return <time>{t}</time>;
            }
        """)
        assert [(s.name, s.setter) for s in comp(fx, "Clock").states] == [
            ("t", "setT"),
        ]

    def test_namespace_member_call(self):
        fx = extract("""
            import * as R from "react";
            function Clock() {
              const [t, setT] = R.useState(0);
              return <time>{t}</time>;
            }
        """)
        assert len(comp(fx, "Clock").states) == 1

    def test_shadowed_hook_not_matched(self):
        fx = extract("""
            function Fake() {
              const useState = (x) => [x, null];
              const [v] = useState(3);
              return <p>{v}</p>;
            }
        """)
        assert comp(fx, "Fake").states == []

    def test_setter_only(self):
        fx = extract("""
            import { useState } from "react";
            function Ticker() {
              const [, force] = useState(0);
              return <button onClick={() => force((x) => x + 1)}>go</button>;
            }
        """)
        ticker = comp(fx, "Ticker")
        assert [(s.name, s.setter) for s in ticker.states] == [
            ("_state_0", "force"),
        ]
        assert ticker.states[0].value_binding is None
        assert ticker.states[0].synthesized
        # an unnamed value slot is valid shape, not a diagnostic
        assert codes(fx) == []

    def test_hook_in_plain_function_ignored(self):
        fx = extract("""
            import { useState } from "react";
            function useCounter() {
              const [n, setN] = useState(0);
              return [n, setN];
            }
            function Display() {
              const [n] = useCounter();
              return <b>{n}</b>;
            }
        """)
        display = comp(fx, "Display")
        assert display.states == []
        assert codes(fx) == []


class TestEffects:
    def test_reads_and_sets(self):
        fx = extract("""
            import { useEffect, useState } from "react";
            function Sync({ query }) {
              const [hits, setHits] = useState(0);
              useEffect(() => {
                setHits(query.length);
              }, [query]);
              return <i>{hits}</i>;
            }
        """)
        sync = comp(fx, "Sync")
        assert len(sync.effects) == 1
        eff = sync.effects[0]
        assert [c.binding.name for c in eff.sets] == ["setHits"]
        assert [r.binding.name for r in eff.reads] == ["setHits", "query"]
        assert [d.name for d in eff.deps] == ["query"]
        assert eff.deps[0].binding.kind == "prop"
        assert eff.deps[0].resolution == "Prop"

    def test_no_deps_argument(self):
        fx = extract("""
            import { useEffect } from "react";
            function Beacon() {
              useEffect(() => {
                ping();
              });
              return <s />;
            }
        """)
        eff = comp(fx, "Beacon").effects[0]
        assert eff.deps is None
        assert not eff.non_literal_deps

    def test_empty_deps(self):
        fx = extract("""
            import { useEffect } from "react";
            function Once() {
              useEffect(() => {
                boot();
              }, []);
              return <s />;
            }
        """)
        eff = comp(fx, "Once").effects[0]
        assert eff.deps == []

    def test_member_dep(self):
        fx = extract("""
            import { useEffect } from "react";
            function Watcher({ user }) {
              useEffect(() => {
                track(user.id);
              }, [user.id]);
              return <s />;
            }
        """)
        eff = comp(fx, "Watcher").effects[0]
        assert [(d.name, d.raw_text) for d in eff.deps] == [("user", "user.id")]
        assert eff.deps[0].resolution == "Prop"

    def test_unresolved_dep_resolution(self):
        fx = extract("""
            import { useEffect } from "react";
            function Global() {
              useEffect(() => {
                run();
              }, [config]);
              return <s />;
            }
        """)
        eff = comp(fx, "Global").effects[0]
        assert eff.deps[0].resolution == "Unresolved"
        assert eff.deps[0].binding is None

    def test_non_literal_deps(self):
        fx = extract("""
            import { useEffect } from "react";
            function Loose({ deps }) {
              useEffect(() => {
                run();
              }, deps);
              return <s />;
            }
        """)
        eff = comp(fx, "Loose").effects[0]
        assert eff.non_literal_deps
        assert eff.deps is None
        assert "non_literal_deps" in codes(fx)

    def test_opaque_body(self):
        fx = extract("""
            import { useEffect } from "react";
            function Defer({ onTick }) {
              useEffect(onTick, []);
              return <s />;
            }
        """)
        eff = comp(fx, "Defer").effects[0]
        assert eff.opaque_body
        assert "opaque_effect_body" in codes(fx)
        # the handler reference itself still counts as a read
        on_tick = comp(fx, "Defer").prop_by_name("onTick")
        assert len(on_tick.binding.reads) == 1

    def test_unresolved_dep_entry(self):
        fx = extract("""
            import { useEffect } from "react";
            function Odd({ n }) {
              useEffect(() => {
                run(n);
              }, [n + 1]);
              return <s />;
            }
        """)
        eff = comp(fx, "Odd").effects[0]
        assert eff.unresolved_deps
        assert "unresolved_dep" in codes(fx)

    def test_prop_called_in_effect(self):
        fx = extract("""
            import { useEffect } from "react";
            function Child({ onDone }) {
              useEffect(() => {
                onDone(true);
              }, [onDone]);
              return <s />;
            }
        """)
        eff = comp(fx, "Child").effects[0]
        assert [c.binding.name for c in eff.sets] == ["onDone"]
        assert eff.sets[0].binding.kind == "prop"

    def test_props_member_called_in_effect(self):
        fx = extract("""
            import { useEffect } from "react";
            function Child(props) {
              useEffect(() => {
                props.onDone(true);
              }, []);
              return <s />;
            }
        """)
        child = comp(fx, "Child")
        eff = child.effects[0]
        assert [c.binding.name for c in eff.sets] == ["onDone"]
        assert "props_object_escape" not in codes(fx)

    def test_setter_outside_effect_not_in_sets(self):
        fx = extract("""
            import { useState } from "react";
            function Toggle() {
              const [on, setOn] = useState(false);
              return <button onClick={() => setOn(!on)}>{String(on)}</button>;
            }
        """)
        toggle = comp(fx, "Toggle")
        setter = toggle.states[0].setter_binding
        assert len(setter.calls) == 1
        assert setter.calls[0].effect is None


class TestRenderSites:
    def test_dom_vs_component(self):
        fx = extract("""
            function App() {
              return <div><Widget /><my-element /><UI.Button /></div>;
            }
            function Widget() {
              return <hr />;
            }
        """)
        app = comp(fx, "App")
        flags = [(s.tag, s.dom) for s in app.renders]
        assert flags == [
            ("div", True), ("Widget", False), ("my-element", True),
            ("UI.Button", False),
        ]
        assert [s.tag for s in app.component_sites()] == [
            "Widget", "UI.Button",
        ]

    def test_attr_kinds(self):
        fx = extract("""
            import { useState } from "react";
            function App() {
              const [x, setX] = useState(1);
              const user = { name: "z" };
              return (
                <Child
                  a={x}
                  b="s"
                  c
                  d={user.name}
                  e={() => setX(2)}
                  f={x + 1}
                  g={7}
                  icon={<Gear />}
                />
              );
            }
        """)
        app = comp(fx, "App")
        site = app.renders[0]
        kinds = {a.name: a.value_kind for a in site.attrs}
        assert kinds == {
            "a": IDENTIFIER_REF,
            "b": LITERAL,
            "c": LITERAL,
            "d": MEMBER_REF,
            "e": CALLBACK_WRAPPING,
            "f": COMPLEX_EXPR,
            "g": LITERAL,
            "icon": COMPLEX_EXPR,
        }
        roots = {a.name: a.root_identifier for a in site.attrs}
        assert roots["a"] == "x"
        assert roots["d"] == "user"
        assert roots["e"] == "setX"
        assert roots["f"] is None
        by_name = {a.name: a for a in site.attrs}
        assert by_name["a"].root_binding.kind == "state"
        assert by_name["d"].root_binding.kind == "local"
        assert by_name["e"].root_binding.kind == "setter"

    def test_member_ref_on_props_object(self):
        fx = extract("""
            function Shell(props) {
              return <Inner title={props.title} />;
            }
        """)
        shell = comp(fx, "Shell")
        attr = shell.renders[0].attrs[0]
        assert attr.value_kind == MEMBER_REF
        assert attr.root_binding.kind == "prop"
        assert attr.root_binding.prop.name == "title"
        # forwarding the whole member is an identity forward
        assert attr.identity_ref is not None

    def test_identity_forward(self):
        fx = extract("""
            import { useState } from "react";
            function App() {
              const [n, setN] = useState(0);
              return <Child count={n} bump={() => setN(n + 1)} />;
            }
        """)
        app = comp(fx, "App")
        site = app.renders[0]
        count_attr = next(a for a in site.attrs if a.name == "count")
        bump_attr = next(a for a in site.attrs if a.name == "bump")
        assert count_attr.identity_ref is not None
        assert count_attr.identity_ref.binding.name == "n"
        # wrapped in an arrow: references, but no identity forward
        assert bump_attr.identity_ref is None
        assert sorted(r.binding.name for r in bump_attr.refs) == ["n", "setN"]

    def test_alias_identity_forward(self):
        fx = extract("""
            import { useState } from "react";
            function App() {
              const [n, setN] = useState(0);
              const total = n;
              return <Child count={total} />;
            }
        """)
        app = comp(fx, "App")
        attr = app.renders[0].attrs[0]
        assert attr.value_kind == IDENTIFIER_REF
        assert attr.root_identifier == "total"
        assert attr.root_binding.kind == "state"
        assert attr.identity_ref.via_alias == "total"

    def test_spread(self):
        fx = extract("""
            function Shell({ title, ...rest }) {
              return <Inner {...rest} header={title} />;
            }
        """)
        shell = comp(fx, "Shell")
        site = shell.renders[0]
        assert site.has_spread
        assert site.spreads[0].binding.kind == "props_rest"
        assert "unresolved_spread" in codes(fx)

    def test_module_level_render(self):
        fx = extract("""
            function App() {
              return <p />;
            }
            const tree = <App />;
        """)
        assert [s.tag for s in fx.module_renders] == ["App"]


class TestReadClassification:
    SRC = """
        import { useEffect, useState } from "react";
        function App({ seed }) {
          const [n, setN] = useState(seed);
          useEffect(() => {
            log(n);
          }, [n, seed]);
          return (
            <div onClick={() => setN(n + 1)}>
              <Child value={n} label={n + seed} />
              {n}
            </div>
          );
        }
    """

    def test_contexts(self):
        fx = extract(self.SRC)
        app = comp(fx, "App")
        n = app.states[0].value_binding
        ctx = sorted(r.context for r in n.reads)
        # effect body, deps entry, dom handler (plain), identity forward,
        # derived attr expression, jsx child (plain)
        assert ctx == ["attr", "deps", "effect", "forward", "plain", "plain"]
        assert app.states[0].use_count() == 5
        assert app.states[0].forward_count() == 1

        seed = app.prop_by_name("seed").binding
        # useState(seed) is plain, deps entry, derived attr expression
        assert sorted(r.context for r in seed.reads) == ["attr", "deps", "plain"]

    def test_shadowing_diagnostic(self):
        fx = extract("""
            function App({ mode }) {
              const render = (mode) => <i>{mode}</i>;
              return <div>{render("x")}{mode}</div>;
            }
        """)
        assert "shadowed_binding" in codes(fx)
        app = comp(fx, "App")
        # the shadowed parameter read does not count against the prop
        assert len(app.prop_by_name("mode").binding.reads) == 1


class TestParseFailure:
    def test_parse_failed_extract(self):
        src = "function App( {"
        sf = SourceFile.from_content(0, "Broken.jsx", src)
        ast = parse_source(src, file_id=0)
        fx = extract_file(ast, sf)
        assert fx.parse_failed
        assert fx.components == []
        assert [d.code for d in fx.diagnostics] == ["parse_error"]
