"""Parsing layer: source text (or ESTree JSON) to normalized trees."""

from __future__ import annotations

from ..ingest import SourceFile
from .estree import estree_to_ast
from .lexer import LineMap
from .nodes import ImportBinding, NodeKind, NormalizedAst, NormNode, Span
from .parser import ParseError, parse_source

__all__ = [
    "ImportBinding",
    "LineMap",
    "NodeKind",
    "NormNode",
    "NormalizedAst",
    "ParseError",
    "Span",
    "estree_to_ast",
    "parse_file",
    "parse_source",
]


def parse_file(source_file: SourceFile) -> NormalizedAst:
    """Parse one project file; never raises on malformed source."""
    return parse_source(source_file.content, source_file.file_id)
