"""Static analysis of React component and hook dependency graphs."""

from __future__ import annotations

from .detectors import (
    Finding,
    detect_all,
    detect_effect_parent_mutation,
    detect_prop_drilling,
    detect_unreferenced,
)
from .extract import (
    ComponentDef,
    Diagnostic,
    EffectDecl,
    FileExtract,
    PropDecl,
    RenderSite,
    StateDecl,
    extract_file,
)
from .graph import (
    GraphEdge,
    GraphNode,
    HookGraph,
    NotAStateNode,
    ProjectMetrics,
    ProvenancePath,
    build_graph,
    compute_metrics,
    trace_provenance,
)
from .ingest import (
    AnalysisConfig,
    ConfigError,
    ProjectSnapshot,
    RootNotDirectory,
    RootNotFound,
    SourceFile,
    scan_project,
)
from .jsast import (
    ImportBinding,
    NodeKind,
    NormNode,
    NormalizedAst,
    Span,
    estree_to_ast,
    parse_file,
    parse_source,
)
from .report import AnalysisReport, analyze_snapshot, run_analyze

__all__ = [
    "AnalysisConfig",
    "AnalysisReport",
    "ComponentDef",
    "ConfigError",
    "Diagnostic",
    "EffectDecl",
    "FileExtract",
    "Finding",
    "GraphEdge",
    "GraphNode",
    "HookGraph",
    "ImportBinding",
    "NodeKind",
    "NormNode",
    "NormalizedAst",
    "NotAStateNode",
    "ProjectMetrics",
    "PropDecl",
    "ProjectSnapshot",
    "ProvenancePath",
    "RenderSite",
    "RootNotDirectory",
    "RootNotFound",
    "SourceFile",
    "Span",
    "StateDecl",
    "analyze_snapshot",
    "build_graph",
    "compute_metrics",
    "detect_all",
    "detect_effect_parent_mutation",
    "detect_prop_drilling",
    "detect_unreferenced",
    "estree_to_ast",
    "extract_file",
    "parse_file",
    "parse_source",
    "run_analyze",
    "scan_project",
    "trace_provenance",
]

__version__ = "0.1.0"
