"""Detector behavior on hand-traced projects."""

from hookgraph.detectors import (
    DEFINITE,
    EFFECT_PARENT_MUTATION,
    PROP_DRILLING,
    SUSPECT,
    UNREFERENCED,
    detect_all,
    detect_effect_parent_mutation,
    detect_prop_drilling,
    detect_unreferenced,
)

from test_graph import build, node


def names(graph, finding):
    return [graph.nodes[n].name for n in finding.node_ids]


class TestUnreferenced:
    def test_dead_prop(self):
        g = build({"App.jsx": """
            function Badge({ label, tone }) {
              return <b>{label}</b>;
            }
        """})
        (f,) = detect_unreferenced(g)
        assert f.kind == UNREFERENCED
        assert f.confidence == DEFINITE
        assert names(g, f) == ["tone"]
        assert "never used" in f.message

    def test_used_state_clean(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function App() {
              const [n, setN] = useState(0);
              return <i>{n}</i>;
            }
        """})
        assert detect_unreferenced(g) == []

    def test_dead_chain_one_finding_per_node(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              return <B p={s} />;
            }
            function B({ p }) {
              return <C q={p} />;
            }
            function C({ q }) {
              return <p />;
            }
        """})
        found = detect_unreferenced(g)
        assert sorted(names(g, f)[0] for f in found) == ["p", "q", "s"]
        assert all(f.confidence == DEFINITE for f in found)
        chain_msgs = {names(g, f)[0]: f.message for f in found}
        assert "also unreferenced" in chain_msgs["s"]
        assert "also unreferenced" in chain_msgs["p"]
        assert "also unreferenced" not in chain_msgs["q"]

    def test_live_tail_rescues_chain(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              return <B p={s} />;
            }
            function B({ p }) {
              return <C q={p} />;
            }
            function C({ q }) {
              return <i>{q}</i>;
            }
        """})
        assert detect_unreferenced(g) == []

    def test_setter_only_state_flagged_with_note(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function Ticker() {
              const [, force] = useState(0);
              return <button onClick={() => force((x) => x + 1)} />;
            }
        """})
        (f,) = detect_unreferenced(g)
        assert "its setter is called" in f.message

    def test_setter_called_downstream_noted(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [v, setV] = useState(0);
              return <B set={setV} />;
            }
            function B({ set }) {
              return <button onClick={set} />;
            }
        """})
        found = detect_unreferenced(g)
        flagged = {names(g, f)[0]: f for f in found}
        # the value is dead; the setter prop itself is used in B
        assert set(flagged) == {"v"}
        assert "its setter is called" in flagged["v"].message

    def test_dead_setter_prop_flagged(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [v, setV] = useState(0);
              return <B v={v} set={setV} />;
            }
            function B({ v, set }) {
              return <i>{v}</i>;
            }
        """})
        found = detect_unreferenced(g)
        assert sorted(names(g, f)[0] for f in found) == ["set"]

    def test_unresolved_consumer_suspect(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function Parent() {
              const [v, setV] = useState(0);
              return <Relay payload={v} />;
            }
            function Relay(props) {
              send(props);
              return <p />;
            }
        """})
        found = detect_unreferenced(g)
        by_name = {names(g, f)[0]: f for f in found}
        assert by_name["v"].confidence == SUSPECT

    def test_suspicion_propagates_up_chain(self):
        g = build({
            "App.jsx": """
                import { useState } from "react";
                function A() {
                  const [s, setS] = useState(0);
                  return <B p={s} />;
                }
                function B({ p }) {
                  return <Mystery q={p} />;
                }
            """,
        })
        found = detect_unreferenced(g)
        by_name = {names(g, f)[0]: f for f in found}
        # B renders an unresolvable tag, so B's own prop is Suspect,
        # and A's state inherits the doubt through the chain
        assert by_name["p"].confidence == SUSPECT
        assert by_name["s"].confidence == SUSPECT


class TestPropDrilling:
    DRILL3 = {"App.jsx": """
        import { useState } from "react";
        function A() {
          const [s, setS] = useState(0);
          return <B p={s} />;
        }
        function B({ p }) {
          return <C q={p} />;
        }
        function C({ q }) {
          return <i>{q}</i>;
        }
    """}

    def test_three_component_drill(self):
        g = build(self.DRILL3)
        (f,) = detect_prop_drilling(g, 1)
        assert f.kind == PROP_DRILLING
        assert names(g, f) == ["s", "p", "q"]
        assert "passes through 1 component(s)" in f.message

    def test_used_and_forwarded_hop_not_drilling(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              return <B p={s} />;
            }
            function B({ p }) {
              return <div title={p}><C q={p} /></div>;
            }
            function C({ q }) {
              return <i>{q}</i>;
            }
        """})
        assert detect_prop_drilling(g, 1) == []

    def test_threshold_two_and_three(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              return <B p={s} />;
            }
            function B({ p }) {
              return <C q={p} />;
            }
            function C({ q }) {
              return <D r={q} />;
            }
            function D({ r }) {
              return <i>{r}</i>;
            }
        """})
        (f,) = detect_prop_drilling(g, 2)
        assert names(g, f) == ["s", "p", "q", "r"]
        assert detect_prop_drilling(g, 3) == []

    def test_setter_drilling_traced(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              return <B push={setS} show={s} />;
            }
            function B({ push, show }) {
              return <C fire={push}>{show}</C>;
            }
            function C({ fire }) {
              return <button onClick={fire} />;
            }
        """})
        (f,) = detect_prop_drilling(g, 1)
        assert names(g, f) == ["s", "push", "fire"]
        assert "setter of state 's'" in f.message

    def test_dead_terminal_no_drilling(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              return <B p={s} />;
            }
            function B({ p }) {
              return <C q={p} />;
            }
            function C({ q }) {
              return <p />;
            }
        """})
        assert detect_prop_drilling(g, 1) == []

    def test_branching_paths_separate_findings(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              return <B p={s} />;
            }
            function B({ p }) {
              return <div><C q={p} /><D r={p} /></div>;
            }
            function C({ q }) {
              return <i>{q}</i>;
            }
            function D({ r }) {
              return <i>{r}</i>;
            }
        """})
        found = detect_prop_drilling(g, 1)
        assert sorted(names(g, f)[-1] for f in found) == ["q", "r"]

    def test_monotone_in_threshold(self):
        g = build(self.DRILL3)
        counts = [len(detect_prop_drilling(g, t)) for t in (1, 2, 3)]
        assert counts == sorted(counts, reverse=True)


class TestEffectParentMutation:
    def test_direct_parent(self):
        g = build({"App.jsx": """
            import { useEffect, useState } from "react";
            function Parent() {
              const [v, setV] = useState(0);
              return <Child onChange={setV} current={v} />;
            }
            function Child({ onChange, current }) {
              useEffect(() => {
                onChange(current + 1);
              }, [current, onChange]);
              return <i>{current}</i>;
            }
        """})
        (f,) = detect_effect_parent_mutation(g)
        assert f.kind == EFFECT_PARENT_MUTATION
        assert names(g, f) == ["useEffect#1", "onChange", "v"]
        assert "ancestor Parent" in f.message

    def test_own_state_not_flagged(self):
        g = build({"App.jsx": """
            import { useEffect, useState } from "react";
            function App() {
              const [v, setV] = useState(0);
              useEffect(() => {
                setV(1);
              }, []);
              return <i>{v}</i>;
            }
        """})
        assert detect_effect_parent_mutation(g) == []

    def test_grandparent_chain(self):
        g = build({"App.jsx": """
            import { useEffect, useState } from "react";
            function Top() {
              const [v, setV] = useState(0);
              return <Mid push={setV} n={v} />;
            }
            function Mid({ push, n }) {
              return <Leaf fire={push} m={n} />;
            }
            function Leaf({ fire, m }) {
              useEffect(() => {
                fire(m + 1);
              }, [m, fire]);
              return <i>{m}</i>;
            }
        """})
        (f,) = detect_effect_parent_mutation(g)
        assert names(g, f) == ["useEffect#1", "fire", "push", "v"]

    def test_spans_parallel_node_ids(self):
        g = build({"App.jsx": """
            import { useEffect, useState } from "react";
            function Parent() {
              const [v, setV] = useState(0);
              return <Child onChange={setV} show={v} />;
            }
            function Child({ onChange, show }) {
              useEffect(() => {
                onChange(1);
              }, [onChange]);
              return <i>{show}</i>;
            }
        """})
        (f,) = detect_effect_parent_mutation(g)
        assert len(f.spans) == len(f.node_ids)
        for nid, span in zip(f.node_ids, f.spans):
            assert g.nodes[nid].span == span


class TestCombined:
    def test_disjointness(self):
        g = build({"App.jsx": """
            import { useState } from "react";
            function A() {
              const [s, setS] = useState(0);
              const [dead, setDead] = useState(1);
              return <B p={s} z={dead} />;
            }
            function B({ p, z }) {
              return <C q={p} />;
            }
            function C({ q }) {
              return <i>{q}</i>;
            }
        """})
        unref = {f.node_ids[0] for f in detect_unreferenced(g)}
        for f in detect_prop_drilling(g, 1):
            for hop in f.node_ids[1:-1]:
                assert hop not in unref

    def test_detect_all_sorted(self):
        g = build({
            "b/App.jsx": """
                import { useState } from "react";
                function A() {
                  const [s, setS] = useState(0);
                  return <B p={s} />;
                }
                function B({ p }) {
                  return <C q={p} />;
                }
                function C({ q }) {
                  return <i>{q}</i>;
                }
            """,
            "a/Dead.jsx": """
                export function Dead({ unused }) {
                  return <p />;
                }
            """,
        })
        found = detect_all(g)
        files = [g.nodes[f.node_ids[0]].file for f in found]
        assert files == sorted(files)
        assert [f.kind for f in found] == [UNREFERENCED, PROP_DRILLING]

    def test_finding_ids_stable(self):
        g1 = build(TestPropDrilling.DRILL3)
        g2 = build(TestPropDrilling.DRILL3)
        ids1 = [f.finding_id for f in detect_all(g1)]
        ids2 = [f.finding_id for f in detect_all(g2)]
        assert ids1 == ids2
        assert len(set(ids1)) == len(ids1)
