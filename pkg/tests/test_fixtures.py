"""Every labeled fixture must reproduce its ground truth exactly."""
import pytest

from fixture_utils import (
    analyze_fixture,
    expected_triples,
    finding_triples,
    fixture_names,
    load_expected,
    node_label,
)

NAMES = fixture_names()


def test_corpus_size():
    assert len(NAMES) >= 12


@pytest.mark.parametrize("name", NAMES)
def test_component_range(name):
    report = analyze_fixture(name)
    count = report.metrics.component_count
    assert 3 <= count <= 8
    assert count == load_expected(name)["components"]


@pytest.mark.parametrize("name", NAMES)
def test_findings_match(name):
    report = analyze_fixture(name)
    assert finding_triples(report) == expected_triples(load_expected(name))


@pytest.mark.parametrize("name", NAMES)
def test_messages(name):
    expected = load_expected(name)
    want = {
        (e["kind"], tuple(e["path"])): e["message_contains"]
        for e in expected["findings"]
        if "message_contains" in e
    }
    if not want:
        pytest.skip("no message expectations")
    report = analyze_fixture(name)
    for finding in report.findings:
        path = tuple(node_label(report.graph, n) for n in finding.node_ids)
        fragment = want.pop((finding.kind, path), None)
        if fragment is not None:
            assert fragment in finding.message
    assert not want


@pytest.mark.parametrize("name", NAMES)
def test_diagnostic_codes(name):
    report = analyze_fixture(name)
    got = sorted({d.code for d in report.diagnostics})
    assert got == load_expected(name)["diagnostics"]


@pytest.mark.parametrize("name", NAMES)
def test_threshold_counts(name):
    expected = load_expected(name)
    counts = expected.get("threshold_counts")
    if counts is None:
        pytest.skip("no threshold expectations")
    for threshold, want in counts.items():
        report = analyze_fixture(name, drill_threshold=int(threshold))
        got = sum(1 for f in report.findings if f.kind == "PropDrilling")
        assert got == want, f"threshold {threshold}"
