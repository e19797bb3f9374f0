"""Analysis pipeline driver and canonical report serialization.

The report is the single contract shared by the CLI and the HTTP API.
Serialization is canonical: keys sorted, every array in a fixed order,
so identical inputs produce byte-identical output.
"""

import csv
import io
import json
from dataclasses import dataclass

from .detectors import Finding, detect_all
from .extract import Diagnostic, extract_file
from .graph import HookGraph, ProjectMetrics, build_graph, compute_metrics
from .ingest import AnalysisConfig, ProjectSnapshot, scan_project
from .jsast import Span, parse_source

SCHEMA_VERSION = "1.0"


@dataclass
class AnalysisReport:
    schema_version: str
    generated_from: dict
    metrics: ProjectMetrics
    graph: HookGraph
    findings: list[Finding]
    diagnostics: list[Diagnostic]
    snapshot: ProjectSnapshot

    def to_json_dict(self) -> dict:
        files = {f.file_id: f.relative_path for f in self.snapshot.files}
        return {
            "schema_version": self.schema_version,
            "generated_from": self.generated_from,
            "metrics": {
                "jsx_file_count": self.metrics.jsx_file_count,
                "component_count": self.metrics.component_count,
                "total_loc": self.metrics.total_loc,
                "anti_pattern_counts": dict(self.metrics.anti_pattern_counts),
            },
            "graph": {
                "nodes": [_node_json(n) for n in _sorted_nodes(self.graph)],
                "edges": [_edge_json(e) for e in _sorted_edges(self.graph)],
            },
            "findings": [_finding_json(f) for f in self.findings],
            "diagnostics": [
                _diagnostic_json(d, files) for d in _sorted_diags(
                    self.diagnostics, files)
            ],
        }

    def to_bytes(self) -> bytes:
        text = json.dumps(self.to_json_dict(), sort_keys=True, indent=2)
        return (text + "\n").encode("utf-8")

    def to_csv(self) -> str:
        """Findings only, one row each, for spreadsheet triage."""
        files = {f.file_id: f.relative_path for f in self.snapshot.files}
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([
            "id", "kind", "confidence", "file", "line", "col",
            "node_ids", "message",
        ])
        for f in self.findings:
            first = f.spans[0]
            writer.writerow([
                f.finding_id, f.kind, f.confidence,
                files.get(first.file_id, "?"),
                first.start_line, first.start_col,
                " ".join(f.node_ids), f.message,
            ])
        return buf.getvalue()

    def definite_count(self) -> int:
        return sum(1 for f in self.findings if f.confidence == "Definite")


def _span_json(span: Span) -> dict:
    return {
        "sl": span.start_line, "sc": span.start_col,
        "el": span.end_line, "ec": span.end_col,
    }


def _node_json(node) -> dict:
    return {
        "id": node.node_id,
        "kind": node.kind,
        "name": node.name,
        "file": node.file,
        "span": _span_json(node.span),
        "parent_component": node.parent_component,
        "flags": list(node.flags),
    }


def _edge_json(edge) -> dict:
    out = {
        "id": edge.edge_id,
        "kind": edge.kind,
        "from": edge.from_node,
        "to": edge.to_node,
    }
    if edge.label is not None:
        out["label"] = edge.label
    if edge.site is not None:
        out["site"] = _span_json(edge.site)
    return out


def _finding_json(finding: Finding) -> dict:
    return {
        "id": finding.finding_id,
        "kind": finding.kind,
        "confidence": finding.confidence,
        "node_ids": list(finding.node_ids),
        "spans": [_span_json(s) for s in finding.spans],
        "message": finding.message,
    }


def _diagnostic_json(diag: Diagnostic, files: dict[int, str]) -> dict:
    return {
        "code": diag.code,
        "file": files.get(diag.span.file_id, "?"),
        "span": _span_json(diag.span),
        "component": diag.component,
        "message": diag.message,
    }


def _sorted_nodes(graph: HookGraph):
    return sorted(
        graph.nodes.values(),
        key=lambda n: (n.file, n.span.start_line, n.span.start_col,
                       n.kind, n.name),
    )


def _sorted_edges(graph: HookGraph):
    def key(e):
        site = ((e.site.start_line, e.site.start_col)
                if e.site is not None else (0, 0))
        return (e.kind, e.from_node, e.to_node, e.label or "", site)
    return sorted(graph.edges, key=key)


def _sorted_diags(diags: list[Diagnostic], files: dict[int, str]):
    return sorted(
        diags,
        key=lambda d: (files.get(d.span.file_id, "?"),
                       d.span.start_line, d.span.start_col,
                       d.code, d.message),
    )


def analyze_snapshot(snapshot: ProjectSnapshot) -> AnalysisReport:
    """Run parse → extract → link → detect over an in-memory snapshot."""
    extractions = [
        extract_file(parse_source(f.content, file_id=f.file_id), f)
        for f in snapshot.files
    ]
    graph = build_graph(snapshot, extractions)
    findings = detect_all(graph, snapshot.config.drill_threshold)
    metrics = compute_metrics(graph, findings)
    return AnalysisReport(
        schema_version=SCHEMA_VERSION,
        generated_from={
            "root": str(snapshot.config.root_path),
            "digest": snapshot.digest(),
        },
        metrics=metrics,
        graph=graph,
        findings=findings,
        diagnostics=graph.diagnostics,
        snapshot=snapshot,
    )


def run_analyze(config: AnalysisConfig) -> AnalysisReport:
    """Scan the configured root and produce the full analysis report.

    Raises RootNotFound / RootNotDirectory / ConfigError for setup
    problems; parse failures inside the tree only reduce coverage.
    """
    return analyze_snapshot(scan_project(config))
