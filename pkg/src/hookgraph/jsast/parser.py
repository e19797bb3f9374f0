"""Recursive-descent parser producing the normalized tree.

Covers modern ECMAScript modules plus JSX, with enough TypeScript
tolerance (annotations, generics, interfaces, casts) to read .ts/.tsx
sources: type positions are skipped structurally, never modeled.

Design points that matter to callers:

- The token lookahead is lazy. JSX child text is scanned raw, so the
  parser must never tokenize past a consumed token until the grammar
  decides the next region is ordinary code.
- Template interpolations are re-parsed in place from the recorded
  ranges, so sub-expression spans stay absolute.
- Any syntax or lexer error aborts the file: ``parse_file`` returns an
  empty module plus a diagnostic instead of raising.
"""

from __future__ import annotations

import sys

from .lexer import LexError, Lexer, LineMap, Token
from .nodes import ImportBinding, NodeKind, NormalizedAst, NormNode, Span

_K = NodeKind


class ParseError(Exception):
    def __init__(self, message: str, pos: int):
        super().__init__(message)
        self.message = message
        self.pos = pos


_ASSIGN_OPS = frozenset(
    "= += -= *= /= %= **= <<= >>= >>>= &= |= ^= &&= ||= ??=".split()
)

_BINARY_PREC = {
    "??": 1, "||": 2, "&&": 3, "|": 4, "^": 5, "&": 6,
    "==": 7, "!=": 7, "===": 7, "!==": 7,
    "<": 8, ">": 8, "<=": 8, ">=": 8, "in": 8, "instanceof": 8,
    "<<": 9, ">>": 9, ">>>": 9,
    "+": 10, "-": 10,
    "*": 11, "/": 11, "%": 11,
    "**": 12,
}

_UNARY_PUNCTS = frozenset({"!", "~", "+", "-", "++", "--"})
_UNARY_KEYWORDS = frozenset({"typeof", "void", "delete", "await"})

# Keywords that can never begin an expression operand.
_RESERVED_IN_EXPR = frozenset(
    "if else for while do switch case default try catch finally throw "
    "return break continue const var extends in instanceof with "
    "debugger enum export".split()
)

_TS_PARAM_MODIFIERS = frozenset({"public", "private", "protected", "readonly"})
_TS_MEMBER_MODIFIERS = frozenset(
    {"static", "public", "private", "protected", "readonly", "abstract",
     "override", "declare", "accessor"}
)

_TYPE_PREFIX_KEYWORDS = frozenset(
    {"typeof", "keyof", "readonly", "infer", "new", "abstract", "asserts",
     "unique"}
)

_MAX_TYPE_TOKENS = 800

# Combined statement/expression nesting cap. Each level costs several
# interpreter frames, so this must stay well under the recursion limit.
_MAX_DEPTH = 300


def _can_start_expression(tok: Token) -> bool:
    if tok.kind in ("num", "str", "template", "regex"):
        return True
    if tok.kind == "ident":
        return tok.value not in _RESERVED_IN_EXPR
    if tok.kind == "punct":
        return tok.value in ("(", "[", "{", "<", "!", "~", "+", "-", "++",
                             "--", "...", "@", "/")
    return False


class Parser:
    def __init__(
        self,
        source: str,
        file_id: int,
        line_map: LineMap,
        start: int = 0,
        limit: int | None = None,
    ):
        self.lexer = Lexer(source, start, limit)
        self.file_id = file_id
        self.lm = line_map
        self.imports: list[ImportBinding] = []
        self._tok: Token | None = None
        self.last_end = start
        self._depth = 0

    # -- token plumbing ----------------------------------------------------

    @property
    def tok(self) -> Token:
        if self._tok is None:
            self._tok = self.lexer.next_token()
        return self._tok

    def _advance(self) -> Token:
        t = self.tok
        self._tok = None
        if t.kind != "eof":
            self.last_end = t.end
        return t

    def _save(self):
        return (self.lexer.state(), self._tok, self.last_end)

    def _restore(self, state) -> None:
        self.lexer.restore(state[0])
        self._tok = state[1]
        self.last_end = state[2]

    def _at(self, punct: str) -> bool:
        return self.tok.is_punct(punct)

    def _at_ident(self, value: str) -> bool:
        return self.tok.is_ident(value)

    def _eat(self, punct: str) -> bool:
        if self._at(punct):
            self._advance()
            return True
        return False

    def _eat_ident(self, value: str) -> bool:
        if self._at_ident(value):
            self._advance()
            return True
        return False

    def _expect(self, punct: str) -> Token:
        if not self._at(punct):
            raise ParseError(
                f"expected {punct!r} but found {self.tok.value!r}",
                self.tok.start,
            )
        return self._advance()

    def _expect_ident(self) -> Token:
        if self.tok.kind != "ident":
            raise ParseError(
                f"expected identifier but found {self.tok.value!r}",
                self.tok.start,
            )
        return self._advance()

    def _expect_member_name(self) -> str:
        # Keywords are valid property names after `.`
        if self.tok.kind != "ident":
            raise ParseError(
                f"expected property name but found {self.tok.value!r}",
                self.tok.start,
            )
        return self._advance().value

    def _semicolon(self) -> None:
        if self._eat(";"):
            return
        t = self.tok
        if t.kind == "eof" or t.is_punct("}") or t.nl_before:
            return
        raise ParseError(f"expected ';' but found {t.value!r}", t.start)

    # -- spans ---------------------------------------------------------------

    def _span(self, start_cp: int, end_cp: int) -> Span:
        sl, sc = self.lm.line_col(start_cp)
        el, ec = self.lm.line_col(end_cp)
        return Span(
            self.file_id,
            self.lm.to_byte(start_cp),
            self.lm.to_byte(end_cp),
            sl, sc, el, ec,
        )

    def _node(
        self,
        kind: NodeKind,
        start_cp: int,
        children: list[NormNode] | None = None,
        **extra,
    ) -> NormNode:
        return NormNode(
            kind,
            self._span(start_cp, max(self.last_end, start_cp)),
            children or [],
            **extra,
        )

    def _ident_node(self, tok: Token, binding: bool = False) -> NormNode:
        return NormNode(
            _K.Identifier,
            self._span(tok.start, tok.end),
            name=tok.value,
            binding=binding,
        )

    def _cover(
        self,
        kind: NodeKind,
        first: NormNode,
        children: list[NormNode],
        **extra,
    ) -> NormNode:
        """Node spanning from an existing node to the last consumed token."""
        s = first.span
        el, ec = self.lm.line_col(self.last_end)
        span = Span(
            self.file_id, s.start_byte, self.lm.to_byte(self.last_end),
            s.start_line, s.start_col, el, ec,
        )
        return NormNode(kind, span, children, **extra)

    # -- module / statements -------------------------------------------------

    def parse_module(self) -> NormNode:
        start = self.lexer.pos
        stmts: list[NormNode] = []
        while self.tok.kind != "eof":
            stmts.append(self.parse_statement())
        span = self._span(start, self.lexer.limit)
        return NormNode(_K.Other, span, stmts, tag="Module")

    def parse_statement(self) -> NormNode:
        self._depth += 1
        try:
            if self._depth > _MAX_DEPTH:
                raise ParseError("nesting too deep", self.tok.start)
            return self._parse_statement_inner()
        finally:
            self._depth -= 1

    def _parse_statement_inner(self) -> NormNode:
        t = self.tok
        if t.kind == "punct":
            if t.value == ";":
                tok = self._advance()
                return self._node(_K.Other, tok.start, tag="Empty")
            if t.value == "{":
                return self.parse_block()
            if t.value == "@":
                return self._parse_decorated()
            return self._parse_expression_statement()
        if t.kind != "ident":
            return self._parse_expression_statement()

        v = t.value
        if v in ("const", "let", "var"):
            return self._dispatch_var(v)
        if v == "function":
            return self.parse_function(is_decl=True, is_async=False)
        if v == "async":
            state = self._save()
            start = self._advance().start
            if self._at_ident("function") and not self.tok.nl_before:
                return self.parse_function(is_decl=True, is_async=True,
                                           start=start)
            self._restore(state)
            return self._parse_expression_statement()
        if v == "class":
            return self.parse_class(is_decl=True)
        if v == "abstract":
            state = self._save()
            start = self._advance().start
            if self._at_ident("class"):
                node = self.parse_class(is_decl=True, start=start)
                node.tag = "Class"
                return node
            self._restore(state)
            return self._parse_expression_statement()
        if v == "if":
            return self._parse_if()
        if v == "for":
            return self._parse_for()
        if v == "while":
            return self._parse_while()
        if v == "do":
            return self._parse_do_while()
        if v == "switch":
            return self._parse_switch()
        if v == "try":
            return self._parse_try()
        if v == "return":
            return self._parse_return()
        if v == "throw":
            start = self._advance().start
            arg = self.parse_expression()
            self._semicolon()
            return self._node(_K.Other, start, [arg], tag="Throw")
        if v in ("break", "continue"):
            start = self._advance().start
            if self.tok.kind == "ident" and not self.tok.nl_before:
                self._advance()  # label, not a value read
            self._semicolon()
            return self._node(_K.Other, start, tag=v.capitalize())
        if v == "debugger":
            start = self._advance().start
            self._semicolon()
            return self._node(_K.Other, start, tag="Debugger")
        if v == "import":
            state = self._save()
            self._advance()
            if self._at("(") or self._at("."):
                self._restore(state)
                return self._parse_expression_statement()
            self._restore(state)
            return self._parse_import()
        if v == "export":
            return self._parse_export()
        if v == "interface":
            state = self._save()
            start = self._advance().start
            if self.tok.kind == "ident":
                return self._parse_ts_interface(start)
            self._restore(state)
            return self._parse_expression_statement()
        if v == "type":
            state = self._save()
            start = self._advance().start
            if self.tok.kind == "ident":
                self._advance()
                if self._at("=") or self._at("<"):
                    return self._parse_ts_type_alias(start)
            self._restore(state)
            return self._parse_expression_statement()
        if v == "enum":
            state = self._save()
            start = self._advance().start
            if self.tok.kind == "ident":
                return self._parse_ts_enum(start)
            self._restore(state)
            return self._parse_expression_statement()
        if v == "declare":
            state = self._save()
            start = self._advance().start
            if self.tok.kind == "ident" and not self.tok.nl_before:
                self._skip_ambient_statement()
                return self._node(_K.Other, start, tag="TsDeclare")
            self._restore(state)
            return self._parse_expression_statement()
        if v in ("namespace", "module"):
            state = self._save()
            start = self._advance().start
            if self.tok.kind in ("ident", "str"):
                self._advance()
                while self._eat("."):
                    self._expect_ident()
                if self._at("{"):
                    self._skip_balanced()
                    return self._node(_K.Other, start, tag="TsNamespace")
            self._restore(state)
            return self._parse_expression_statement()

        # Labeled statement: identifier directly followed by ':'
        state = self._save()
        self._advance()
        if self._at(":"):
            self._advance()
            body = self.parse_statement()
            return self._node(_K.Other, t.start, [body], tag="Labeled")
        self._restore(state)
        return self._parse_expression_statement()

    def _dispatch_var(self, kw: str) -> NormNode:
        if kw == "const":
            state = self._save()
            start = self._advance().start
            if self._at_ident("enum"):
                self._advance()
                if self.tok.kind == "ident":
                    return self._parse_ts_enum(start)
            self._restore(state)
            return self.parse_var_statement(kw)
        if kw == "var":
            return self.parse_var_statement(kw)
        # `let` is only a keyword when a binding form follows
        state = self._save()
        self._advance()
        starts_binding = self.tok.kind == "ident" or self._at("[") or self._at("{")
        self._restore(state)
        if starts_binding:
            return self.parse_var_statement(kw)
        return self._parse_expression_statement()

    def _parse_expression_statement(self) -> NormNode:
        expr = self.parse_expression()
        self._semicolon()
        return expr

    def parse_block(self) -> NormNode:
        start = self._expect("{").start
        stmts: list[NormNode] = []
        while not self._at("}"):
            if self.tok.kind == "eof":
                raise ParseError("unterminated block", self.tok.start)
            stmts.append(self.parse_statement())
        self._expect("}")
        return self._node(_K.Other, start, stmts, tag="Block")

    def _parse_decorated(self) -> NormNode:
        start = self.tok.start
        decorators = self._parse_decorators()
        if self._at_ident("export"):
            inner = self._parse_export()
        elif self._at_ident("class") or self._at_ident("abstract"):
            inner = self.parse_statement()
        else:
            raise ParseError("decorator must precede a class", self.tok.start)
        return self._node(_K.Other, start, decorators + [inner],
                          tag="Decorated")

    def _parse_decorators(self) -> list[NormNode]:
        out: list[NormNode] = []
        while self._at("@"):
            start = self._advance().start
            expr = self.parse_call_chain(self.parse_primary())
            out.append(self._node(_K.Other, start, [expr], tag="Decorator"))
        return out

    # -- control flow ---------------------------------------------------------

    def _parse_if(self) -> NormNode:
        start = self._advance().start
        self._expect("(")
        test = self.parse_expression()
        self._expect(")")
        then = self.parse_statement()
        children = [test, then]
        if self._eat_ident("else"):
            children.append(self.parse_statement())
        return self._node(_K.Other, start, children, tag="If")

    def _parse_while(self) -> NormNode:
        start = self._advance().start
        self._expect("(")
        test = self.parse_expression()
        self._expect(")")
        body = self.parse_statement()
        return self._node(_K.Other, start, [test, body], tag="While")

    def _parse_do_while(self) -> NormNode:
        start = self._advance().start
        body = self.parse_statement()
        if not self._eat_ident("while"):
            raise ParseError("expected 'while'", self.tok.start)
        self._expect("(")
        test = self.parse_expression()
        self._expect(")")
        self._semicolon()
        return self._node(_K.Other, start, [body, test], tag="DoWhile")

    def _parse_for(self) -> NormNode:
        start = self._advance().start
        self._eat_ident("await")
        self._expect("(")
        children: list[NormNode] = []

        if self._eat(";"):
            init = None
        elif (
            self._at_ident("const")
            or self._at_ident("var")
            or self._at_ident("let")
        ):
            kw = self._advance().value
            decl_start = self.tok.start
            pattern = self.parse_binding_pattern()
            if self._at_ident("of") or self._at_ident("in"):
                op = self._advance().value
                left = self._node(_K.VariableDecl, decl_start, [pattern],
                                  tag=kw)
                right = (self.parse_assign() if op == "of"
                         else self.parse_expression())
                self._expect(")")
                body = self.parse_statement()
                return self._node(
                    _K.Other, start, [left, right, body],
                    tag="ForOf" if op == "of" else "ForIn",
                )
            init = self._finish_var_statement(kw, decl_start, pattern,
                                              consume_semi=False)
            self._expect(";")
        else:
            expr = self.parse_expression(no_in=True)
            if self._at_ident("of") or self._at_ident("in"):
                op = self._advance().value
                right = (self.parse_assign() if op == "of"
                         else self.parse_expression())
                self._expect(")")
                body = self.parse_statement()
                return self._node(
                    _K.Other, start, [expr, right, body],
                    tag="ForOf" if op == "of" else "ForIn",
                )
            init = expr
            self._expect(";")

        if init is not None:
            children.append(init)
        if not self._at(";"):
            children.append(self.parse_expression())
        self._expect(";")
        if not self._at(")"):
            children.append(self.parse_expression())
        self._expect(")")
        children.append(self.parse_statement())
        return self._node(_K.Other, start, children, tag="For")

    def _parse_switch(self) -> NormNode:
        start = self._advance().start
        self._expect("(")
        disc = self.parse_expression()
        self._expect(")")
        self._expect("{")
        cases: list[NormNode] = []
        while not self._at("}"):
            case_start = self.tok.start
            kids: list[NormNode] = []
            if self._eat_ident("case"):
                kids.append(self.parse_expression())
            elif not self._eat_ident("default"):
                raise ParseError("expected 'case' or 'default'",
                                 self.tok.start)
            self._expect(":")
            while not (
                self._at("}")
                or self._at_ident("case")
                or self._at_ident("default")
            ):
                if self.tok.kind == "eof":
                    raise ParseError("unterminated switch", self.tok.start)
                kids.append(self.parse_statement())
            cases.append(self._node(_K.Other, case_start, kids, tag="Case"))
        self._expect("}")
        return self._node(_K.Other, start, [disc] + cases, tag="Switch")

    def _parse_try(self) -> NormNode:
        start = self._advance().start
        children = [self.parse_block()]
        if self._eat_ident("catch"):
            catch_start = self.last_end
            kids: list[NormNode] = []
            if self._eat("("):
                kids.append(self.parse_binding_pattern())
                if self._at(":"):
                    self._advance()
                    self._skip_type()
                self._expect(")")
            kids.append(self.parse_block())
            children.append(self._node(_K.Other, catch_start, kids,
                                       tag="Catch"))
        if self._eat_ident("finally"):
            children.append(self.parse_block())
        return self._node(_K.Other, start, children, tag="Try")

    def _parse_return(self) -> NormNode:
        start = self._advance().start
        children: list[NormNode] = []
        t = self.tok
        if not t.nl_before and _can_start_expression(t):
            children.append(self.parse_expression())
        self._semicolon()
        return self._node(_K.ReturnStmt, start, children)

    # -- declarations -----------------------------------------------------------

    def parse_var_statement(self, kw: str, consume_semi: bool = True) -> NormNode:
        self._advance()  # keyword
        decl_start = self.tok.start
        pattern = self.parse_binding_pattern()
        return self._finish_var_statement(kw, decl_start, pattern, consume_semi)

    def _finish_var_statement(
        self,
        kw: str,
        first_start: int,
        first_pattern: NormNode,
        consume_semi: bool,
    ) -> NormNode:
        decls = [self._finish_declarator(kw, first_start, first_pattern)]
        while self._eat(","):
            start = self.tok.start
            pattern = self.parse_binding_pattern()
            decls.append(self._finish_declarator(kw, start, pattern))
        if consume_semi:
            self._semicolon()
        if len(decls) == 1:
            return decls[0]
        return self._cover(_K.Other, decls[0], decls, tag="VarGroup")

    def _finish_declarator(
        self, kw: str, start: int, pattern: NormNode
    ) -> NormNode:
        self._eat("!")  # definite-assignment assertion
        if self._at(":"):
            self._advance()
            self._skip_type()
        children = [pattern]
        if self._eat("="):
            children.append(self.parse_assign())
        return self._node(_K.VariableDecl, start, children, tag=kw)

    def parse_binding_pattern(self) -> NormNode:
        t = self.tok
        if t.kind == "ident":
            if t.value in _RESERVED_IN_EXPR:
                raise ParseError(
                    f"cannot bind reserved word {t.value!r}", t.start
                )
            return self._ident_node(self._advance(), binding=True)
        if t.is_punct("{"):
            return self._parse_object_pattern()
        if t.is_punct("["):
            return self._parse_array_pattern()
        raise ParseError(f"expected binding but found {t.value!r}", t.start)

    def _parse_object_pattern(self) -> NormNode:
        start = self._expect("{").start
        props: list[NormNode] = []
        while not self._at("}"):
            if self._at("..."):
                rest_start = self._advance().start
                target = self.parse_binding_pattern()
                props.append(self._node(_K.Other, rest_start, [target],
                                        tag="RestPattern"))
            else:
                props.append(self._parse_object_pattern_prop())
            if not self._eat(","):
                break
        self._expect("}")
        return self._node(_K.ObjectPattern, start, props)

    def _parse_object_pattern_prop(self) -> NormNode:
        t = self.tok
        key_expr: NormNode | None = None
        key: str | None = None
        if t.is_punct("["):
            self._advance()
            key_expr = self.parse_assign()
            self._expect("]")
        elif t.kind == "str":
            key = t.value[1:-1]
            self._advance()
        elif t.kind == "num":
            key = t.value
            self._advance()
        elif t.kind == "ident":
            key = t.value
            self._advance()
        else:
            raise ParseError(f"bad destructuring key {t.value!r}", t.start)

        if self._eat(":"):
            sub = self.parse_binding_pattern()
            if self._eat("="):
                default = self.parse_assign()
                sub = self._cover(_K.Other, sub, [sub, default],
                                  tag="DefaultPattern")
            kids = ([key_expr, sub] if key_expr is not None else [sub])
            return self._node(_K.Other, t.start, kids, tag="KeyedPattern",
                              key=key)
        if key_expr is not None or key is None:
            raise ParseError("computed key requires a target pattern",
                             t.start)
        ident = NormNode(_K.Identifier, self._span(t.start, t.end),
                         name=key, binding=True)
        if self._eat("="):
            default = self.parse_assign()
            return self._node(_K.Other, t.start, [ident, default],
                              tag="DefaultPattern")
        return ident

    def _parse_array_pattern(self) -> NormNode:
        start = self._expect("[").start
        elems: list[NormNode] = []
        while not self._at("]"):
            if self._at(","):
                hole = self._advance()
                elems.append(NormNode(
                    _K.Other, self._span(hole.start, hole.start), tag="Hole"
                ))
                continue
            if self._at("..."):
                rest_start = self._advance().start
                target = self.parse_binding_pattern()
                elems.append(self._node(_K.Other, rest_start, [target],
                                        tag="RestPattern"))
            else:
                elem_start = self.tok.start
                pat = self.parse_binding_pattern()
                if self._at(":"):
                    self._advance()
                    self._skip_type()
                if self._eat("="):
                    default = self.parse_assign()
                    pat = self._node(_K.Other, elem_start, [pat, default],
                                     tag="DefaultPattern")
                elems.append(pat)
            if not self._eat(","):
                break
        self._expect("]")
        return self._node(_K.ArrayPattern, start, elems)

    def parse_function(
        self, is_decl: bool, is_async: bool, start: int | None = None
    ) -> NormNode:
        if start is None:
            start = self.tok.start
        self._advance()  # 'function'
        is_gen = self._eat("*")
        name = None
        if self.tok.kind == "ident":
            name = self._advance().value
        if self._at("<"):
            self._skip_angles()
        params = self.parse_params()
        if self._at(":"):
            self._advance()
            self._skip_type()
        if not self._at("{"):
            # ambient declaration / overload signature: no body
            self._semicolon()
            return self._node(_K.Other, start, [params],
                              tag="AmbientFunction", name=name)
        body = self.parse_block()
        if is_gen:
            return self._node(_K.Other, start, [params, body],
                              tag="GeneratorFunction", name=name)
        return self._node(
            _K.FunctionDecl, start, [params, body],
            name=name, tag=None if is_decl else "expr",
        )

    def parse_params(self) -> NormNode:
        start = self._expect("(").start
        items: list[NormNode] = []
        while not self._at(")"):
            if self._at("..."):
                rest_start = self._advance().start
                target = self.parse_binding_pattern()
                if self._at(":"):
                    self._advance()
                    self._skip_type()
                items.append(self._node(_K.Other, rest_start, [target],
                                        tag="RestPattern"))
            else:
                while (
                    self.tok.kind == "ident"
                    and self.tok.value in _TS_PARAM_MODIFIERS
                    and self._ident_follows()
                ):
                    self._advance()
                if self._at_ident("this"):
                    this_start = self._advance().start
                    if self._at(":"):
                        self._advance()
                        self._skip_type()
                    items.append(self._node(_K.Other, this_start,
                                            tag="ThisParam"))
                else:
                    param_start = self.tok.start
                    pat = self.parse_binding_pattern()
                    self._eat("?")
                    if self._at(":"):
                        self._advance()
                        self._skip_type()
                    if self._eat("="):
                        default = self.parse_assign()
                        pat = self._node(_K.Other, param_start,
                                         [pat, default], tag="DefaultPattern")
                    items.append(pat)
            if not self._eat(","):
                break
        self._expect(")")
        return self._node(_K.Other, start, items, tag="Params")

    def _ident_follows(self) -> bool:
        state = self._save()
        self._advance()
        ok = self.tok.kind == "ident" or self._at("{") or self._at("[")
        self._restore(state)
        return ok

    def parse_class(self, is_decl: bool, start: int | None = None) -> NormNode:
        if start is None:
            start = self.tok.start
        self._advance()  # 'class'
        name = None
        if self.tok.kind == "ident" and self.tok.value not in (
            "extends", "implements"
        ):
            name = self._advance().value
        if self._at("<"):
            self._skip_angles()
        children: list[NormNode] = []
        if self._eat_ident("extends"):
            base = self.parse_call_chain(self.parse_primary())
            if self._at("<"):
                self._skip_angles()
            children.append(base)
        if self._eat_ident("implements"):
            self._skip_type()
            while self._eat(","):
                self._skip_type()
        self._expect("{")
        while not self._at("}"):
            if self.tok.kind == "eof":
                raise ParseError("unterminated class body", self.tok.start)
            if self._eat(";"):
                continue
            children.append(self._parse_class_member())
        self._expect("}")
        return self._node(_K.Other, start, children, tag="Class", name=name)

    def _parse_class_member(self) -> NormNode:
        start = self.tok.start
        decorators = self._parse_decorators()

        while (
            self.tok.kind == "ident"
            and self.tok.value in _TS_MEMBER_MODIFIERS
            and self._member_key_follows()
        ):
            self._advance()
        is_accessor = False
        if (
            self.tok.kind == "ident"
            and self.tok.value in ("get", "set", "async")
            and self._member_key_follows()
        ):
            self._advance()
            is_accessor = True
        self._eat("*")

        key_expr: NormNode | None = None
        key: str | None = None
        t = self.tok
        if t.is_punct("#"):
            self._advance()
            key = "#" + self._expect_ident().value
        elif t.is_punct("["):
            self._advance()
            key_expr = self.parse_assign()
            self._expect("]")
        elif t.kind in ("str", "num"):
            key = t.value
            self._advance()
        elif t.kind == "ident":
            key = self._advance().value
        else:
            raise ParseError(f"bad class member {t.value!r}", t.start)

        if self._at("<"):
            self._skip_angles()
        if self._at("(") or is_accessor:
            params = self.parse_params()
            if self._at(":"):
                self._advance()
                self._skip_type()
            kids = decorators + ([key_expr] if key_expr else [])
            kids.append(params)
            if self._at("{"):
                kids.append(self.parse_block())
            else:
                self._semicolon()  # overload signature
            return self._node(_K.Other, start, kids, tag="Method", key=key)

        self._eat("?")
        self._eat("!")
        if self._at(":"):
            self._advance()
            self._skip_type()
        kids = decorators + ([key_expr] if key_expr else [])
        if self._eat("="):
            kids.append(self.parse_assign())
        self._semicolon()
        return self._node(_K.Other, start, kids, tag="Field", key=key)

    def _member_key_follows(self) -> bool:
        state = self._save()
        self._advance()
        t = self.tok
        ok = (
            t.kind in ("ident", "str", "num")
            or t.is_punct("[")
            or t.is_punct("*")
            or t.is_punct("#")
        )
        self._restore(state)
        return ok

    # -- imports / exports ----------------------------------------------------

    def _unquote(self, raw: str) -> str:
        return raw[1:-1]

    def _parse_import(self) -> NormNode:
        start = self._advance().start  # 'import'
        if self.tok.kind == "str":
            self._advance()
            self._semicolon()
            return self._node(_K.Other, start, tag="ImportDecl")

        type_only = False
        if self._at_ident("type"):
            state = self._save()
            self._advance()
            if self._at_ident("from") or self._at("="):
                self._restore(state)
            else:
                type_only = True

        pending: list[tuple[str, str, Span]] = []  # (local, imported, span)
        if self.tok.kind == "ident" and not self._at("*"):
            deft = self._advance()
            pending.append((deft.value, "default",
                            self._span(deft.start, deft.end)))
            if not self._eat(","):
                self._finish_import(start, pending, type_only)
                return self._node(_K.Other, start, tag="ImportDecl")

        if self._at("*"):
            self._advance()
            if not self._eat_ident("as"):
                raise ParseError("expected 'as'", self.tok.start)
            loc = self._expect_ident()
            pending.append((loc.value, "*", self._span(loc.start, loc.end)))
        elif self._at("{"):
            self._advance()
            while not self._at("}"):
                spec_type_only = False
                if self._at_ident("type"):
                    state = self._save()
                    self._advance()
                    if self.tok.kind in ("ident", "str") and not self._at_ident("as"):
                        spec_type_only = True
                    elif self._at_ident("as") and not (
                        self._peek_after_as_is_ident()
                    ):
                        self._restore(state)
                    else:
                        self._restore(state)
                if self.tok.kind == "str":
                    spec_tok = self._advance()
                    imported = self._unquote(spec_tok.value)
                elif self.tok.kind == "ident":
                    spec_tok = self._advance()
                    imported = spec_tok.value
                else:
                    raise ParseError("bad import specifier", self.tok.start)
                local = imported
                local_span = self._span(spec_tok.start, spec_tok.end)
                if self._eat_ident("as"):
                    loc = self._expect_ident()
                    local = loc.value
                    local_span = self._span(loc.start, loc.end)
                if not (type_only or spec_type_only):
                    pending.append((local, imported, local_span))
                if not self._eat(","):
                    break
            self._expect("}")

        self._finish_import(start, pending, type_only)
        return self._node(_K.Other, start, tag="ImportDecl")

    def _peek_after_as_is_ident(self) -> bool:
        state = self._save()
        self._advance()  # 'as'
        ok = self.tok.kind == "ident"
        self._restore(state)
        return ok

    def _finish_import(
        self,
        start: int,
        pending: list[tuple[str, str, Span]],
        type_only: bool,
    ) -> None:
        if not self._eat_ident("from"):
            raise ParseError("expected 'from'", self.tok.start)
        if self.tok.kind != "str":
            raise ParseError("expected module source string", self.tok.start)
        source = self._unquote(self._advance().value)
        self._semicolon()
        if not type_only:
            for local, imported, span in pending:
                self.imports.append(
                    ImportBinding(local, imported, source, span)
                )

    def _parse_export(self) -> NormNode:
        start = self._advance().start  # 'export'
        if self._eat_ident("default"):
            if (
                self._at_ident("function")
                or self._at_ident("class")
                or (self._at_ident("async") and self._async_function_follows())
            ):
                inner = self.parse_statement()
            else:
                inner = self.parse_assign()
                self._semicolon()
            return self._node(_K.Other, start, [inner], tag="ExportDefault")
        if self._at("*"):
            self._advance()
            if self._eat_ident("as"):
                self._expect_ident()
            if not self._eat_ident("from"):
                raise ParseError("expected 'from'", self.tok.start)
            if self.tok.kind != "str":
                raise ParseError("expected module source string",
                                 self.tok.start)
            self._advance()
            self._semicolon()
            return self._node(_K.Other, start, tag="ExportAll")
        if self._at("{") or (
            self._at_ident("type") and self._brace_follows()
        ):
            self._eat_ident("type")
            self._expect("{")
            while not self._at("}"):
                if self.tok.kind not in ("ident", "str"):
                    raise ParseError("bad export specifier", self.tok.start)
                self._advance()
                if self._eat_ident("as"):
                    if self.tok.kind not in ("ident", "str"):
                        raise ParseError("bad export alias", self.tok.start)
                    self._advance()
                if not self._eat(","):
                    break
            self._expect("}")
            if self._eat_ident("from"):
                if self.tok.kind != "str":
                    raise ParseError("expected module source string",
                                     self.tok.start)
                self._advance()
            self._semicolon()
            return self._node(_K.Other, start, tag="ExportNamed")
        inner = self.parse_statement()
        return self._node(_K.Other, start, [inner], tag="Export")

    def _async_function_follows(self) -> bool:
        state = self._save()
        self._advance()
        ok = self._at_ident("function") and not self.tok.nl_before
        self._restore(state)
        return ok

    def _brace_follows(self) -> bool:
        state = self._save()
        self._advance()
        ok = self._at("{")
        self._restore(state)
        return ok

    # -- TypeScript skips -------------------------------------------------------

    def _parse_ts_interface(self, start: int) -> NormNode:
        self._expect_ident()  # name
        if self._at("<"):
            self._skip_angles()
        if self._eat_ident("extends"):
            self._skip_type()
            while self._eat(","):
                self._skip_type()
        if not self._at("{"):
            raise ParseError("expected interface body", self.tok.start)
        self._skip_balanced()
        return self._node(_K.Other, start, tag="TsInterface")

    def _parse_ts_type_alias(self, start: int) -> NormNode:
        # name already consumed by the dispatcher
        if self._at("<"):
            self._skip_angles()
        self._expect("=")
        self._skip_type()
        self._semicolon()
        return self._node(_K.Other, start, tag="TsTypeAlias")

    def _parse_ts_enum(self, start: int) -> NormNode:
        self._expect_ident()  # name
        if not self._at("{"):
            raise ParseError("expected enum body", self.tok.start)
        self._skip_balanced()
        self._semicolon()
        return self._node(_K.Other, start, tag="TsEnum")

    def _skip_ambient_statement(self) -> None:
        # consume a `declare ...` tail: balanced brackets, stop at `;`
        # or a newline while outside every bracket
        guard = 0
        while True:
            guard += 1
            if guard > _MAX_TYPE_TOKENS:
                raise ParseError("ambient declaration too long",
                                 self.tok.start)
            t = self.tok
            if t.kind == "eof":
                return
            if t.is_punct(";"):
                self._advance()
                return
            if t.nl_before and guard > 1 and not (
                t.is_punct("{") or t.is_punct("(") or t.is_punct("<")
                or t.is_punct(".") or t.is_punct("=")
            ):
                return
            if t.is_punct("{") or t.is_punct("(") or t.is_punct("["):
                self._skip_balanced()
                continue
            self._advance()

    def _skip_balanced(self) -> None:
        pairs = {"(": ")", "[": "]", "{": "}"}
        t = self.tok
        if t.kind != "punct" or t.value not in pairs:
            raise ParseError(f"expected bracket but found {t.value!r}",
                             t.start)
        stack = [pairs[t.value]]
        self._advance()
        while stack:
            t = self.tok
            if t.kind == "eof":
                raise ParseError("unbalanced brackets", t.start)
            if t.kind == "punct":
                if t.value in pairs:
                    stack.append(pairs[t.value])
                elif t.value in (")", "]", "}"):
                    want = stack.pop()
                    if t.value != want:
                        raise ParseError(
                            f"mismatched bracket {t.value!r}", t.start
                        )
            self._advance()

    def _skip_angles(self) -> None:
        self._expect("<")
        depth = 1
        guard = 0
        while depth > 0:
            guard += 1
            if guard > _MAX_TYPE_TOKENS:
                raise ParseError("type arguments too long", self.tok.start)
            t = self.tok
            if t.kind == "eof":
                raise ParseError("unterminated type arguments", t.start)
            if t.kind == "punct":
                if t.value in ("(", "[", "{"):
                    self._skip_balanced()
                    continue
                if t.value == "<":
                    depth += 1
                elif t.value == ">":
                    depth -= 1
                elif t.value == ">>":
                    depth -= 2
                elif t.value == ">>>":
                    depth -= 3
                elif t.value in (")", "]", "}", ";"):
                    raise ParseError("unterminated type arguments", t.start)
            if depth < 0:
                raise ParseError("unbalanced type arguments", t.start)
            self._advance()

    def _skip_type(self) -> None:
        self._skip_type_unit()
        while True:
            if self._at("|") or self._at("&"):
                self._advance()
                self._skip_type_unit()
                continue
            if self._at_ident("extends"):
                self._advance()
                self._skip_type()
                self._expect("?")
                self._skip_type()
                self._expect(":")
                self._skip_type()
                continue
            if self._at("?") :
                # optional marker inside tuple types
                state = self._save()
                self._advance()
                if self._at(",") or self._at("]") or self._at(")"):
                    continue
                self._restore(state)
            break

    def _skip_type_unit(self) -> None:
        while self._at("|") or self._at("&"):
            self._advance()
        t = self.tok
        if t.is_punct("("):
            self._skip_balanced()
            if self._eat("=>"):
                self._skip_type()
        elif t.is_punct("{") or t.is_punct("["):
            self._skip_balanced()
        elif t.kind in ("str", "num", "template"):
            self._advance()
        elif t.is_punct("-"):
            self._advance()
            if self.tok.kind != "num":
                raise ParseError("expected numeric literal type",
                                 self.tok.start)
            self._advance()
        elif t.kind == "ident":
            v = t.value
            self._advance()
            if v in _TYPE_PREFIX_KEYWORDS:
                self._skip_type_unit()
            else:
                while self._at("."):
                    self._advance()
                    self._expect_member_name()
                if self._at_ident("is") and not self.tok.nl_before:
                    self._advance()
                    self._skip_type()
                    return
        else:
            raise ParseError(f"expected type but found {t.value!r}", t.start)
        while True:
            if self._at("[") :
                self._skip_balanced()
                continue
            if self._at("<"):
                self._skip_angles()
                continue
            if self._at("."):
                self._advance()
                self._expect_member_name()
                continue
            break

    # -- expressions ---------------------------------------------------------

    def parse_expression(self, no_in: bool = False) -> NormNode:
        first = self.parse_assign(no_in)
        if not self._at(","):
            return first
        items = [first]
        while self._eat(","):
            items.append(self.parse_assign(no_in))
        return self._cover(_K.Other, first, items, tag="Sequence")

    def parse_assign(self, no_in: bool = False) -> NormNode:
        self._depth += 1
        try:
            if self._depth > _MAX_DEPTH:
                raise ParseError("nesting too deep", self.tok.start)
            return self._parse_assign_inner(no_in)
        finally:
            self._depth -= 1

    def _parse_assign_inner(self, no_in: bool) -> NormNode:
        if self._at_ident("yield"):
            state = self._save()
            start = self._advance().start
            if self._at("*"):
                self._advance()
                arg = self.parse_assign(no_in)
                return self._node(_K.Other, start, [arg], tag="Yield")
            if not self.tok.nl_before and _can_start_expression(self.tok):
                arg = self.parse_assign(no_in)
                return self._node(_K.Other, start, [arg], tag="Yield")
            if (
                self.tok.kind == "eof"
                or self.tok.is_punct(")")
                or self.tok.is_punct("]")
                or self.tok.is_punct("}")
                or self.tok.is_punct(",")
                or self.tok.is_punct(";")
                or self.tok.nl_before
            ):
                return self._node(_K.Other, start, tag="Yield")
            self._restore(state)

        arrow = self._try_parse_arrow(no_in)
        if arrow is not None:
            return arrow

        left = self.parse_conditional(no_in)
        t = self.tok
        if t.kind == "punct" and t.value in _ASSIGN_OPS:
            op = self._advance().value
            right = self.parse_assign(no_in)
            return self._cover(_K.AssignmentExpr, left, [left, right],
                               tag=op)
        return left

    def _try_parse_arrow(self, no_in: bool) -> NormNode | None:
        t = self.tok
        outer = self._save()
        start = t.start
        is_async = False
        if t.is_ident("async"):
            self._advance()
            nxt = self.tok
            if nxt.nl_before or not (nxt.kind == "ident" or nxt.is_punct("(")):
                self._restore(outer)
            else:
                is_async = True

        t = self.tok
        if t.kind == "ident" and t.value not in _RESERVED_IN_EXPR:
            state = self._save()
            ident = self._advance()
            if self._at("=>") and not self.tok.nl_before:
                self._advance()
                param = self._ident_node(ident, binding=True)
                params = NormNode(
                    _K.Other, self._span(ident.start, ident.end),
                    [param], tag="Params",
                )
                body = self._parse_arrow_body(no_in)
                return self._node(
                    _K.ArrowFunction, start, [params, body],
                    tag="async" if is_async else None,
                )
            self._restore(state)
            if is_async:
                self._restore(outer)
            return None

        if (
            t.is_punct("(")
            and self._paren_starts_pattern()
            and self._arrow_ahead()
        ):
            params = self.parse_params()
            if self._at(":"):
                self._advance()
                self._skip_type()
            self._expect("=>")
            body = self._parse_arrow_body(no_in)
            return self._node(
                _K.ArrowFunction, start, [params, body],
                tag="async" if is_async else None,
            )
        if is_async:
            self._restore(outer)
        return None

    def _paren_starts_pattern(self) -> bool:
        """Cheap pre-check: can the token after `(` begin a parameter?

        Skipping the full probe when it cannot keeps deeply nested
        parenthesized expressions linear.
        """
        state = self._save()
        try:
            self._advance()
            t = self.tok
            return (
                (t.kind == "ident" and t.value not in _RESERVED_IN_EXPR)
                or t.is_punct("{")
                or t.is_punct("[")
                or t.is_punct(")")
                or t.is_punct("...")
            )
        except LexError:
            return False
        finally:
            self._restore(state)

    def _arrow_ahead(self) -> bool:
        # Tentative token scan; raw JSX behind the parens can defeat the
        # tokenizer, which simply means this is not an arrow head.
        state = self._save()
        depth = 0
        guard = 0
        try:
            while True:
                guard += 1
                if guard > 2000 or self.tok.kind == "eof":
                    return False
                if self._at("("):
                    depth += 1
                elif self._at(")"):
                    depth -= 1
                self._advance()
                if depth == 0:
                    break
            if self._at("=>"):
                return True
            if self._at(":"):
                self._advance()
                self._skip_type()
                return self._at("=>")
            return False
        except (ParseError, LexError):
            return False
        finally:
            self._restore(state)

    def _parse_arrow_body(self, no_in: bool) -> NormNode:
        if self._at("{"):
            return self.parse_block()
        return self.parse_assign(no_in)

    def parse_conditional(self, no_in: bool = False) -> NormNode:
        expr = self.parse_binary(1, no_in)
        if self._at("?"):
            self._advance()
            consequent = self.parse_assign()
            self._expect(":")
            alternate = self.parse_assign(no_in)
            return self._cover(_K.Other, expr,
                               [expr, consequent, alternate],
                               tag="Conditional")
        return expr

    def parse_binary(self, min_prec: int, no_in: bool) -> NormNode:
        left = self.parse_unary(no_in)
        while True:
            t = self.tok
            op: str | None = None
            if t.kind == "punct" and t.value in _BINARY_PREC:
                op = t.value
            elif t.kind == "ident" and t.value in ("in", "instanceof"):
                if t.value == "in" and no_in:
                    break
                op = t.value
            elif (
                t.kind == "ident"
                and t.value in ("as", "satisfies")
                and not t.nl_before
            ):
                self._advance()
                if self._at_ident("const"):
                    self._advance()
                else:
                    self._skip_type()
                continue
            else:
                break
            prec = _BINARY_PREC[op]
            if prec < min_prec:
                break
            self._advance()
            next_min = prec if op == "**" else prec + 1
            right = self.parse_binary(next_min, no_in)
            left = self._cover(_K.Other, left, [left, right], tag=op)
        return left

    def parse_unary(self, no_in: bool = False) -> NormNode:
        t = self.tok
        if t.kind == "punct" and t.value in _UNARY_PUNCTS:
            op = self._advance()
            arg = self.parse_unary(no_in)
            tag = "Update" if op.value in ("++", "--") else op.value
            return self._node(_K.Other, op.start, [arg], tag=tag)
        if t.kind == "ident" and t.value in _UNARY_KEYWORDS:
            op = self._advance()
            arg = self.parse_unary(no_in)
            return self._node(_K.Other, op.start, [arg], tag=op.value)
        expr = self.parse_call_chain(self.parse_primary())
        while (
            self.tok.kind == "punct"
            and self.tok.value in ("++", "--")
            and not self.tok.nl_before
        ):
            self._advance()
            expr = self._cover(_K.Other, expr, [expr], tag="Update")
        return expr

    def parse_call_chain(self, base: NormNode) -> NormNode:
        while True:
            t = self.tok
            if t.is_punct("."):
                self._advance()
                if self._at("#"):
                    self._advance()
                    name = "#" + self._expect_ident().value
                else:
                    name = self._expect_member_name()
                base = self._cover(_K.MemberExpr, base, [base], name=name)
            elif t.is_punct("?."):
                self._advance()
                if self._at("("):
                    args = self.parse_args()
                    base = self._cover(_K.CallExpr, base, [base] + args)
                elif self._at("["):
                    self._advance()
                    idx = self.parse_expression()
                    self._expect("]")
                    base = self._cover(_K.MemberExpr, base, [base, idx],
                                       tag="computed")
                else:
                    name = self._expect_member_name()
                    base = self._cover(_K.MemberExpr, base, [base],
                                       name=name)
            elif t.is_punct("["):
                self._advance()
                idx = self.parse_expression()
                self._expect("]")
                base = self._cover(_K.MemberExpr, base, [base, idx],
                                   tag="computed")
            elif t.is_punct("("):
                args = self.parse_args()
                base = self._cover(_K.CallExpr, base, [base] + args)
            elif t.kind == "template":
                tmpl = self.parse_template_token()
                base = self._cover(_K.Other, base, [base, tmpl],
                                   tag="TaggedTemplate")
            elif t.is_punct("!") and not t.nl_before:
                self._advance()  # TS non-null assertion
            elif t.is_punct("<"):
                if self._try_type_args():
                    continue
                break
            else:
                break
        return base

    def _try_type_args(self) -> bool:
        state = self._save()
        try:
            self._skip_angles()
            if self._at("(") or self.tok.kind == "template":
                return True
        except (ParseError, LexError):
            pass
        self._restore(state)
        return False

    def parse_args(self) -> list[NormNode]:
        self._expect("(")
        args: list[NormNode] = []
        while not self._at(")"):
            if self._at("..."):
                spread_start = self._advance().start
                expr = self.parse_assign()
                args.append(self._node(_K.Other, spread_start, [expr],
                                       tag="Spread"))
            else:
                args.append(self.parse_assign())
            if not self._eat(","):
                break
        self._expect(")")
        return args

    def _parse_new(self) -> NormNode:
        start = self._advance().start  # 'new'
        if self._eat("."):
            self._expect_ident()  # new.target
            return self._node(_K.Other, start, tag="NewTarget")
        callee = self.parse_primary()
        # member accesses bind tighter than the construct call
        while True:
            if self._at("."):
                self._advance()
                name = self._expect_member_name()
                callee = self._node(_K.MemberExpr, start, [callee], name=name)
            elif self._at("["):
                self._advance()
                idx = self.parse_expression()
                self._expect("]")
                callee = self._node(_K.MemberExpr, start, [callee, idx],
                                    tag="computed")
            else:
                break
        if self._at("<") and not self._try_type_args():
            pass
        args = self.parse_args() if self._at("(") else []
        return self._node(_K.Other, start, [callee] + args, tag="New")

    def parse_template_token(self) -> NormNode:
        t = self._advance()
        children: list[NormNode] = []
        for (s, e) in t.interps:
            sub = Parser(self.lexer.source, self.file_id, self.lm,
                         start=s, limit=e)
            expr = sub.parse_expression()
            if sub.tok.kind != "eof":
                raise ParseError("bad template interpolation", s)
            children.append(expr)
        return NormNode(
            _K.Other, self._span(t.start, t.end), children,
            tag="TemplateLiteral",
        )

    def parse_primary(self) -> NormNode:
        t = self.tok
        if t.kind == "ident":
            v = t.value
            if v == "function":
                return self.parse_function(is_decl=False, is_async=False)
            if v == "async":
                state = self._save()
                start = self._advance().start
                if self._at_ident("function") and not self.tok.nl_before:
                    return self.parse_function(is_decl=False, is_async=True,
                                               start=start)
                self._restore(state)
                tok = self._advance()
                return self._ident_node(tok)
            if v == "class":
                return self.parse_class(is_decl=False)
            if v == "new":
                return self._parse_new()
            if v in ("this", "super"):
                tok = self._advance()
                return self._node(_K.Other, tok.start, tag="This", text=v)
            if v in ("true", "false", "null"):
                tok = self._advance()
                return self._node(_K.Other, tok.start, tag="Literal", text=v)
            if v == "import":
                start = self._advance().start
                if self._at("("):
                    args = self.parse_args()
                    return self._node(_K.Other, start, args,
                                      tag="DynamicImport")
                self._expect(".")
                self._expect_ident()
                return self._node(_K.Other, start, tag="ImportMeta")
            if v in _RESERVED_IN_EXPR:
                raise ParseError(f"unexpected keyword {v!r}", t.start)
            return self._ident_node(self._advance())
        if t.kind == "num" or t.kind == "regex":
            tok = self._advance()
            return self._node(_K.Other, tok.start, tag="Literal",
                              text=tok.value)
        if t.kind == "str":
            tok = self._advance()
            return self._node(_K.Other, tok.start, tag="StringLiteral",
                              text=self._unquote(tok.value))
        if t.kind == "template":
            return self.parse_template_token()
        if t.is_punct("("):
            self._advance()
            expr = self.parse_expression()
            self._expect(")")
            return expr
        if t.is_punct("["):
            return self._parse_array_literal()
        if t.is_punct("{"):
            return self._parse_object_literal()
        if t.is_punct("<"):
            return self.parse_jsx()
        if t.is_punct("@"):
            start = t.start
            decorators = self._parse_decorators()
            if not self._at_ident("class"):
                raise ParseError("decorator must precede a class", t.start)
            cls = self.parse_class(is_decl=False)
            return self._node(_K.Other, start, decorators + [cls],
                              tag="Decorated")
        raise ParseError(f"unexpected token {t.value!r}", t.start)

    def _parse_array_literal(self) -> NormNode:
        start = self._expect("[").start
        elems: list[NormNode] = []
        while not self._at("]"):
            if self._at(","):
                self._advance()
                continue
            if self._at("..."):
                spread_start = self._advance().start
                expr = self.parse_assign()
                elems.append(self._node(_K.Other, spread_start, [expr],
                                        tag="Spread"))
            else:
                elems.append(self.parse_assign())
            if not self._eat(","):
                break
        self._expect("]")
        return self._node(_K.Other, start, elems, tag="ArrayLiteral")

    def _parse_object_literal(self) -> NormNode:
        start = self._expect("{").start
        props: list[NormNode] = []
        while not self._at("}"):
            props.append(self._parse_object_member())
            if not self._eat(","):
                break
        self._expect("}")
        return self._node(_K.Other, start, props, tag="ObjectLiteral")

    def _parse_object_member(self) -> NormNode:
        start = self.tok.start
        if self._at("..."):
            self._advance()
            expr = self.parse_assign()
            return self._node(_K.Other, start, [expr], tag="Spread")

        if (
            self.tok.kind == "ident"
            and self.tok.value in ("get", "set", "async")
            and self._member_key_follows()
        ):
            self._advance()
        self._eat("*")

        key_expr: NormNode | None = None
        key: str | None = None
        t = self.tok
        if t.is_punct("["):
            self._advance()
            key_expr = self.parse_assign()
            self._expect("]")
        elif t.kind == "str":
            key = self._unquote(t.value)
            self._advance()
        elif t.kind == "num":
            key = t.value
            self._advance()
        elif t.kind == "ident":
            key = self._advance().value
        else:
            raise ParseError(f"bad object member {t.value!r}", t.start)

        if self._at("<"):
            self._skip_angles()
        if self._at("("):
            params = self.parse_params()
            if self._at(":"):
                self._advance()
                self._skip_type()
            body = self.parse_block()
            kids = ([key_expr] if key_expr else []) + [params, body]
            return self._node(_K.Other, start, kids, tag="Method", key=key)
        if self._eat(":"):
            value = self.parse_assign()
            kids = ([key_expr] if key_expr else []) + [value]
            return self._node(_K.Other, start, kids, tag="Property", key=key)
        if key is None:
            raise ParseError("computed key requires a value", t.start)
        ident = NormNode(_K.Identifier, self._span(t.start, t.end), name=key)
        if self._eat("="):
            # only valid when re-interpreted as a destructuring target
            default = self.parse_assign()
            return self._node(_K.Other, start, [ident, default],
                              tag="Property", key=key)
        return self._node(_K.Other, start, [ident], tag="Property", key=key)

    # -- JSX -----------------------------------------------------------------

    def parse_jsx(self) -> NormNode:
        start = self._expect("<").start
        if self._at(">"):
            self._advance()
            children = self._parse_jsx_children()
            self._expect(">")
            return self._node(_K.JsxElement, start, children,
                              tag="fragment")
        name = self._parse_jsx_name()
        if self._at("<"):
            self._skip_angles()
        attrs: list[NormNode] = []
        while True:
            t = self.tok
            if t.is_punct(">") or t.is_punct("/"):
                break
            if t.is_punct("{"):
                spread_start = self._advance().start
                self._expect("...")
                expr = self.parse_assign()
                self._expect("}")
                attrs.append(self._node(
                    _K.JsxSpreadAttribute, spread_start, [expr]
                ))
            elif t.kind == "ident":
                attrs.append(self._parse_jsx_attribute())
            else:
                raise ParseError(
                    f"unexpected token {t.value!r} in JSX tag", t.start
                )
        if self._eat("/"):
            self._expect(">")
            return self._node(_K.JsxElement, start, attrs, name=name)
        self._expect(">")
        children = self._parse_jsx_children()
        closing = self._parse_jsx_name()
        if closing != name:
            raise ParseError(
                f"mismatched closing tag </{closing}> for <{name}>",
                self.tok.start,
            )
        self._expect(">")
        return self._node(_K.JsxElement, start, attrs + children, name=name)

    def _parse_jsx_name(self) -> str:
        first = self._expect_ident()
        parts = [first.value]
        while (
            self.tok.kind == "punct"
            and self.tok.value in (".", ":", "-")
            and self.tok.start == self.last_end
        ):
            sep = self._advance()
            parts.append(sep.value)
            if self.tok.kind == "ident" and self.tok.start == self.last_end:
                parts.append(self._advance().value)
            elif self.tok.kind == "num" and self.tok.start == self.last_end:
                parts.append(self._advance().value)
            else:
                raise ParseError("bad JSX name", self.tok.start)
        return "".join(parts)

    def _parse_jsx_attribute(self) -> NormNode:
        start = self.tok.start
        name = self._parse_jsx_name()
        children: list[NormNode] = []
        if self._eat("="):
            t = self.tok
            if t.kind == "str":
                tok = self._advance()
                children.append(self._node(
                    _K.Other, tok.start, tag="StringLiteral",
                    text=self._unquote(tok.value),
                ))
            elif t.is_punct("{"):
                c_start = self._advance().start
                expr = self.parse_assign()
                self._expect("}")
                children.append(self._node(
                    _K.JsxExpressionContainer, c_start, [expr]
                ))
            elif t.is_punct("<"):
                children.append(self.parse_jsx())
            else:
                raise ParseError(
                    f"bad JSX attribute value {t.value!r}", t.start
                )
        return self._node(_K.JsxAttribute, start, children, name=name)

    def _parse_jsx_children(self) -> list[NormNode]:
        # entered directly after a consumed '>' or '}' token, so the
        # lookahead is empty and the lexer sits on raw child text
        kids: list[NormNode] = []
        while True:
            assert self._tok is None
            text_start = self.lexer.pos
            text, pos = self.lexer.scan_jsx_text(text_start)
            if text.strip():
                kids.append(NormNode(
                    _K.Other, self._span(text_start, pos),
                    tag="JsxText", text=text,
                ))
            self.lexer.set_pos(pos)
            self.last_end = pos
            if pos >= self.lexer.limit:
                raise ParseError("unterminated JSX element", pos)
            if self.lexer.source[pos] == "{":
                c_start = self._advance().start  # '{'
                if self._at("}"):
                    container_kids: list[NormNode] = []
                elif self._at("..."):
                    spread_start = self._advance().start
                    expr = self.parse_assign()
                    container_kids = [self._node(
                        _K.Other, spread_start, [expr], tag="Spread"
                    )]
                else:
                    container_kids = [self.parse_expression()]
                self._expect("}")
                kids.append(self._node(
                    _K.JsxExpressionContainer, c_start, container_kids
                ))
            else:
                # raw check: `</` must not reach the tokenizer, which
                # would try to scan the '/' as a regex
                if (
                    pos + 1 < self.lexer.limit
                    and self.lexer.source[pos + 1] == "/"
                ):
                    self.lexer.set_pos(pos + 2)
                    self.last_end = pos + 2
                    return kids
                kids.append(self.parse_jsx())


def parse_source(
    content: str, file_id: int, line_map: LineMap | None = None
) -> NormalizedAst:
    """Parse one module; syntax errors yield an empty tree + diagnostic."""
    lm = line_map or LineMap(content)
    parser = Parser(content, file_id, lm)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 8000))
    try:
        root = parser.parse_module()
        return NormalizedAst(file_id, root, [], tuple(parser.imports))
    except (ParseError, LexError) as exc:
        pos = min(exc.pos, len(content))
        sl, sc = lm.line_col(pos)
        span = Span(file_id, lm.to_byte(pos), lm.to_byte(pos), sl, sc, sl, sc)
        whole = Span(file_id, 0, lm.to_byte(len(content)), 1, 1,
                     *lm.line_col(len(content)))
        empty = NormNode(_K.Other, whole, tag="Module")
        return NormalizedAst(
            file_id, empty,
            [(span, f"parse_error: {exc.message}")], (),
        )
    except RecursionError:
        whole = Span(file_id, 0, lm.to_byte(len(content)), 1, 1,
                     *lm.line_col(len(content)))
        empty = NormNode(_K.Other, whole, tag="Module")
        return NormalizedAst(
            file_id, empty,
            [(whole, "parse_error: nesting too deep")], (),
        )
    finally:
        sys.setrecursionlimit(old_limit)
