"""ESTree JSON ingestion.

Converts a parsed ESTree document (the `acorn`/`babel` JSON shape, with
JSX node types) into the same normalized tree the built-in parser
produces, so a caller can run analysis from an external parse instead of
raw source.

Positions: byte offsets come from ``range`` (or ``start``/``end``) and
line/column pairs from ``loc``; ESTree columns are 0-based and are
shifted to 1-based here. Offsets in the source document are code-unit
based, which matches byte offsets for ASCII sources.
"""

from __future__ import annotations

from typing import Any

from .nodes import ImportBinding, NodeKind, NormalizedAst, NormNode, Span

_K = NodeKind

_SKIP_KEYS = frozenset({
    "type", "loc", "range", "start", "end", "comments",
    "leadingComments", "trailingComments", "innerComments",
    "typeAnnotation", "typeParameters", "typeArguments",
    "returnType", "superTypeParameters",
})

_UNWRAP_TYPES = frozenset({
    "ExpressionStatement", "ChainExpression", "ParenthesizedExpression",
    "TSAsExpression", "TSNonNullExpression", "TSSatisfiesExpression",
    "TSTypeAssertion", "TSInstantiationExpression",
})


def _is_node(value: Any) -> bool:
    return isinstance(value, dict) and isinstance(value.get("type"), str)


class _Converter:
    def __init__(self, file_id: int):
        self.file_id = file_id
        self.imports: list[ImportBinding] = []

    def span(self, node: dict) -> Span:
        rng = node.get("range")
        if isinstance(rng, list) and len(rng) == 2:
            start, end = int(rng[0]), int(rng[1])
        else:
            start = int(node.get("start", 0) or 0)
            end = int(node.get("end", start) or start)
        sl = sc = el = ec = 0
        loc = node.get("loc")
        if isinstance(loc, dict):
            s, e = loc.get("start") or {}, loc.get("end") or {}
            sl = int(s.get("line", 0) or 0)
            sc = int(s.get("column", -1)) + 1
            el = int(e.get("line", 0) or 0)
            ec = int(e.get("column", -1)) + 1
        return Span(self.file_id, start, end, sl, sc, el, ec)

    # -- helpers ---------------------------------------------------------

    def _children(self, values: list, binding: bool = False) -> list[NormNode]:
        out = []
        for v in values:
            if v is None:
                continue
            out.append(self.convert(v, binding=binding))
        return out

    def _generic_children(self, node: dict) -> list[NormNode]:
        out: list[NormNode] = []
        for key, value in node.items():
            if key in _SKIP_KEYS:
                continue
            if _is_node(value):
                out.append(self.convert(value))
            elif isinstance(value, list):
                for item in value:
                    if _is_node(item):
                        out.append(self.convert(item))
        return out

    def _params_node(self, node: dict) -> NormNode:
        params = self._children(node.get("params") or [], binding=True)
        return NormNode(_K.Other, self.span(node), params, tag="Params")

    def _jsx_name(self, node: dict | None) -> str | None:
        if not _is_node(node):
            return None
        t = node["type"]
        if t == "JSXIdentifier" or t == "Identifier":
            return node.get("name")
        if t == "JSXMemberExpression":
            left = self._jsx_name(node.get("object"))
            right = self._jsx_name(node.get("property"))
            return f"{left}.{right}"
        if t == "JSXNamespacedName":
            left = self._jsx_name(node.get("namespace"))
            right = self._jsx_name(node.get("name"))
            return f"{left}:{right}"
        return None

    def _prop_key(self, node: dict) -> tuple[str | None, NormNode | None]:
        key = node.get("key")
        if not _is_node(key):
            return None, None
        if not node.get("computed") and key["type"] in (
            "Identifier", "JSXIdentifier", "PrivateIdentifier"
        ):
            return key.get("name"), None
        if not node.get("computed") and key["type"] == "Literal":
            return str(key.get("value")), None
        return None, self.convert(key)

    # -- conversion ---------------------------------------------------------

    def convert(self, node: dict, binding: bool = False) -> NormNode:
        t = node.get("type", "")
        span = self.span(node)

        if t in _UNWRAP_TYPES and _is_node(node.get("expression")):
            return self.convert(node["expression"], binding=binding)

        if t == "Program":
            return NormNode(_K.Other, span,
                            self._children(node.get("body") or []),
                            tag="Module")
        if t == "BlockStatement":
            return NormNode(_K.Other, span,
                            self._children(node.get("body") or []),
                            tag="Block")
        if t in ("Identifier", "JSXIdentifier"):
            return NormNode(_K.Identifier, span, name=node.get("name"),
                            binding=binding)
        if t == "PrivateIdentifier":
            return NormNode(_K.Other, span, tag="PrivateName",
                            text=node.get("name"))
        if t in ("FunctionDeclaration", "FunctionExpression"):
            ident = node.get("id")
            name = ident.get("name") if _is_node(ident) else None
            body = node.get("body")
            kids = [self._params_node(node)]
            if _is_node(body):
                kids.append(self.convert(body))
            if node.get("generator"):
                return NormNode(_K.Other, span, kids,
                                tag="GeneratorFunction", name=name)
            tag = "expr" if t == "FunctionExpression" else None
            return NormNode(_K.FunctionDecl, span, kids, name=name, tag=tag)
        if t == "ArrowFunctionExpression":
            kids = [self._params_node(node)]
            body = node.get("body")
            if _is_node(body):
                kids.append(self.convert(body))
            return NormNode(_K.ArrowFunction, span, kids,
                            tag="async" if node.get("async") else None)
        if t == "VariableDeclaration":
            kind = node.get("kind", "var")
            decls = []
            for d in node.get("declarations") or []:
                if not _is_node(d):
                    continue
                kids = []
                if _is_node(d.get("id")):
                    kids.append(self.convert(d["id"], binding=True))
                if _is_node(d.get("init")):
                    kids.append(self.convert(d["init"]))
                decls.append(NormNode(_K.VariableDecl, self.span(d), kids,
                                      tag=kind))
            if len(decls) == 1:
                return decls[0]
            return NormNode(_K.Other, span, decls, tag="VarGroup")
        if t == "CallExpression" or t == "OptionalCallExpression":
            kids = []
            if _is_node(node.get("callee")):
                kids.append(self.convert(node["callee"]))
            kids.extend(self._children(node.get("arguments") or []))
            return NormNode(_K.CallExpr, span, kids)
        if t == "NewExpression":
            kids = []
            if _is_node(node.get("callee")):
                kids.append(self.convert(node["callee"]))
            kids.extend(self._children(node.get("arguments") or []))
            return NormNode(_K.Other, span, kids, tag="New")
        if t in ("MemberExpression", "OptionalMemberExpression"):
            obj = node.get("object")
            prop = node.get("property")
            kids = [self.convert(obj)] if _is_node(obj) else []
            if node.get("computed"):
                if _is_node(prop):
                    kids.append(self.convert(prop))
                return NormNode(_K.MemberExpr, span, kids, tag="computed")
            name = prop.get("name") if _is_node(prop) else None
            return NormNode(_K.MemberExpr, span, kids, name=name)
        if t == "ReturnStatement":
            arg = node.get("argument")
            kids = [self.convert(arg)] if _is_node(arg) else []
            return NormNode(_K.ReturnStmt, span, kids)
        if t == "AssignmentExpression":
            kids = self._children([node.get("left"), node.get("right")])
            return NormNode(_K.AssignmentExpr, span, kids,
                            tag=node.get("operator"))
        if t == "AssignmentPattern":
            kids = []
            if _is_node(node.get("left")):
                kids.append(self.convert(node["left"], binding=binding))
            if _is_node(node.get("right")):
                kids.append(self.convert(node["right"]))
            return NormNode(_K.Other, span, kids, tag="DefaultPattern")
        if t == "RestElement" or t == "SpreadElement":
            arg = node.get("argument")
            kids = [self.convert(arg, binding=binding and t == "RestElement")]\
                if _is_node(arg) else []
            tag = "RestPattern" if t == "RestElement" else "Spread"
            return NormNode(_K.Other, span, kids, tag=tag)
        if t == "ObjectPattern":
            props = []
            for p in node.get("properties") or []:
                if not _is_node(p):
                    continue
                if p["type"] in ("RestElement", "SpreadElement"):
                    props.append(self.convert(
                        {**p, "type": "RestElement"}, binding=True
                    ))
                    continue
                key, key_expr = self._prop_key(p)
                value = p.get("value")
                if p.get("shorthand") and _is_node(value):
                    props.append(self.convert(value, binding=True))
                    continue
                kids = [key_expr] if key_expr is not None else []
                if _is_node(value):
                    kids.append(self.convert(value, binding=True))
                props.append(NormNode(_K.Other, self.span(p), kids,
                                      tag="KeyedPattern", key=key))
            return NormNode(_K.ObjectPattern, span, props)
        if t == "ArrayPattern":
            elems = []
            for e in node.get("elements") or []:
                if e is None:
                    elems.append(NormNode(_K.Other, span, tag="Hole"))
                elif _is_node(e):
                    elems.append(self.convert(e, binding=True))
            return NormNode(_K.ArrayPattern, span, elems)
        if t == "ObjectExpression":
            props = []
            for p in node.get("properties") or []:
                if not _is_node(p):
                    continue
                if p["type"] == "SpreadElement":
                    props.append(self.convert(p))
                    continue
                key, key_expr = self._prop_key(p)
                kids = [key_expr] if key_expr is not None else []
                value = p.get("value")
                if _is_node(value):
                    kids.append(self.convert(value))
                tag = "Method" if p.get("method") else "Property"
                props.append(NormNode(_K.Other, self.span(p), kids,
                                      tag=tag, key=key))
            return NormNode(_K.Other, span, props, tag="ObjectLiteral")
        if t == "Literal" or t == "StringLiteral":
            value = node.get("value")
            if isinstance(value, str):
                return NormNode(_K.Other, span, tag="StringLiteral",
                                text=value)
            return NormNode(_K.Other, span, tag="Literal",
                            text=node.get("raw"))
        if t == "TemplateLiteral":
            kids = self._children(node.get("expressions") or [])
            return NormNode(_K.Other, span, kids, tag="TemplateLiteral")
        if t == "JSXElement":
            opening = node.get("openingElement") or {}
            name = self._jsx_name(opening.get("name"))
            kids = self._children(opening.get("attributes") or [])
            kids.extend(self._children(node.get("children") or []))
            return NormNode(_K.JsxElement, span, kids, name=name)
        if t == "JSXFragment":
            kids = self._children(node.get("children") or [])
            return NormNode(_K.JsxElement, span, kids, tag="fragment")
        if t == "JSXAttribute":
            name = self._jsx_name(node.get("name"))
            value = node.get("value")
            kids = [self.convert(value)] if _is_node(value) else []
            return NormNode(_K.JsxAttribute, span, kids, name=name)
        if t == "JSXSpreadAttribute":
            arg = node.get("argument")
            kids = [self.convert(arg)] if _is_node(arg) else []
            return NormNode(_K.JsxSpreadAttribute, span, kids)
        if t == "JSXExpressionContainer":
            expr = node.get("expression")
            if _is_node(expr) and expr["type"] != "JSXEmptyExpression":
                return NormNode(_K.JsxExpressionContainer, span,
                                [self.convert(expr)])
            return NormNode(_K.JsxExpressionContainer, span, [])
        if t == "JSXText":
            return NormNode(_K.Other, span, tag="JsxText",
                            text=node.get("value"))
        if t == "ImportDeclaration":
            source = node.get("source") or {}
            src = source.get("value") if isinstance(source, dict) else None
            if isinstance(src, str) and not (
                node.get("importKind") == "type"
            ):
                for spec in node.get("specifiers") or []:
                    if not _is_node(spec):
                        continue
                    local = spec.get("local") or {}
                    local_name = (local.get("name")
                                  if isinstance(local, dict) else None)
                    if not local_name:
                        continue
                    st = spec["type"]
                    if st == "ImportDefaultSpecifier":
                        imported = "default"
                    elif st == "ImportNamespaceSpecifier":
                        imported = "*"
                    else:
                        if spec.get("importKind") == "type":
                            continue
                        imp = spec.get("imported") or {}
                        imported = (imp.get("name") or imp.get("value")
                                    or local_name)
                    self.imports.append(ImportBinding(
                        local_name, imported, src,
                        self.span(local if isinstance(local, dict) else node),
                    ))
            return NormNode(_K.Other, span, tag="ImportDecl")
        if t == "ExportDefaultDeclaration":
            decl = node.get("declaration")
            kids = [self.convert(decl)] if _is_node(decl) else []
            return NormNode(_K.Other, span, kids, tag="ExportDefault")
        if t == "ExportNamedDeclaration":
            decl = node.get("declaration")
            if _is_node(decl):
                return NormNode(_K.Other, span, [self.convert(decl)],
                                tag="Export")
            return NormNode(_K.Other, span, tag="ExportNamed")

        # Fallback: keep identifier descendants, tag with the source type.
        return NormNode(_K.Other, span, self._generic_children(node),
                        tag=t or "Unknown")


def estree_to_ast(document: dict, file_id: int) -> NormalizedAst:
    """Convert one ESTree ``Program`` document into a normalized tree."""
    conv = _Converter(file_id)
    if not _is_node(document):
        raise ValueError("not an ESTree document: missing 'type'")
    root = conv.convert(document)
    if root.tag != "Module":
        root = NormNode(_K.Other, conv.span(document), [root], tag="Module")
    return NormalizedAst(file_id, root, [], tuple(conv.imports))
