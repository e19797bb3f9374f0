"""Normalized syntax tree model.

The parser reduces ECMAScript + JSX source to a small node vocabulary: the
constructs the extractor actually inspects keep dedicated kinds, everything
else collapses to ``Other`` nodes that still carry their identifier
descendants, so reference counting sees reads inside unmodeled constructs.

Shape conventions produced by the parser (and the ESTree importer):

- ``FunctionDecl`` / ``ArrowFunction``: children are ``[params, body]``
  where ``params`` is an ``Other`` node tagged ``Params`` holding one child
  per parameter, and ``body`` is either a ``Block``-tagged ``Other`` node or
  a bare expression (arrow shorthand). Function *expressions* use kind
  ``FunctionDecl`` with ``tag="expr"``.
- ``VariableDecl``: one node per declarator, children ``[pattern]`` or
  ``[pattern, init]``; ``tag`` is the declaration keyword. Multi-declarator
  statements group them under an ``Other`` node tagged ``VarGroup``.
- Binding positions mark their identifiers with ``binding=True``; every
  other ``Identifier`` is a value read. Member property names, object keys
  and JSX names are stored as strings, never as ``Identifier`` nodes.
- ``ObjectPattern`` children: ``Identifier`` (shorthand), ``Other`` tagged
  ``KeyedPattern`` (``key`` holds the prop name, children the sub-pattern),
  ``DefaultPattern`` (children ``[target, default-expr]``) or
  ``RestPattern``.
- ``MemberExpr``: static access has ``name`` set and children
  ``[object]``; computed access has ``tag="computed"`` and children
  ``[object, index]``.
- ``JsxElement``: ``name`` is the raw tag text (``None`` for fragments),
  children are the attribute nodes followed by child nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator


class NodeKind(Enum):
    FunctionDecl = "FunctionDecl"
    ArrowFunction = "ArrowFunction"
    VariableDecl = "VariableDecl"
    CallExpr = "CallExpr"
    Identifier = "Identifier"
    MemberExpr = "MemberExpr"
    JsxElement = "JsxElement"
    JsxAttribute = "JsxAttribute"
    JsxSpreadAttribute = "JsxSpreadAttribute"
    JsxExpressionContainer = "JsxExpressionContainer"
    ObjectPattern = "ObjectPattern"
    ArrayPattern = "ArrayPattern"
    ReturnStmt = "ReturnStmt"
    AssignmentExpr = "AssignmentExpr"
    Other = "Other"


@dataclass(frozen=True)
class Span:
    file_id: int
    start_byte: int
    end_byte: int
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def contains(self, other: "Span") -> bool:
        return (
            self.file_id == other.file_id
            and self.start_byte <= other.start_byte
            and other.end_byte <= self.end_byte
        )

    def key(self) -> tuple[int, int, int]:
        return (self.file_id, self.start_byte, self.end_byte)


@dataclass
class NormNode:
    kind: NodeKind
    span: Span
    children: list["NormNode"] = field(default_factory=list)
    name: str | None = None
    text: str | None = None
    tag: str | None = None
    key: str | None = None
    binding: bool = False

    def walk(self) -> Iterator["NormNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def identifiers(self) -> Iterator["NormNode"]:
        for node in self.walk():
            if node.kind is NodeKind.Identifier:
                yield node

    def member_root(self) -> "NormNode | None":
        """Leftmost node of a member-access chain (self if not a member)."""
        node = self
        while node.kind is NodeKind.MemberExpr and node.children:
            node = node.children[0]
        return node


@dataclass(frozen=True)
class ImportBinding:
    local: str
    imported: str  # original exported name, or "default" / "*"
    source: str
    span: Span


@dataclass
class NormalizedAst:
    file_id: int
    root: NormNode
    parse_diagnostics: list[tuple[Span, str]] = field(default_factory=list)
    imports: tuple[ImportBinding, ...] = ()
