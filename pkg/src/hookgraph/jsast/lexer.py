"""Tokenizer for the ECMAScript + JSX subset the parser consumes.

Offsets in tokens are codepoint indices into the source string; the parser
turns them into byte/line/column spans through :class:`LineMap`. Template
literals come back as a single token whose ``interps`` lists the codepoint
ranges of each ``${...}`` body, which the parser re-parses in place so the
sub-expression spans stay absolute.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass, field


class LexError(Exception):
    def __init__(self, message: str, pos: int):
        super().__init__(message)
        self.message = message
        self.pos = pos


class LineMap:
    """Codepoint offset -> (byte offset, 1-based line, 1-based column)."""

    def __init__(self, content: str):
        self.content = content
        starts = [0]
        idx = content.find("\n")
        while idx != -1:
            starts.append(idx + 1)
            idx = content.find("\n", idx + 1)
        self._line_starts = starts
        self._ascii = content.isascii()
        self._byte_prefix: list[int] | None = None

    def to_byte(self, cp: int) -> int:
        if self._ascii:
            return cp
        if self._byte_prefix is None:
            prefix = [0] * (len(self.content) + 1)
            total = 0
            for i, ch in enumerate(self.content):
                total += len(ch.encode("utf-8"))
                prefix[i + 1] = total
            self._byte_prefix = prefix
        return self._byte_prefix[cp]

    def line_col(self, cp: int) -> tuple[int, int]:
        line = bisect_right(self._line_starts, cp)
        return line, cp - self._line_starts[line - 1] + 1


TOKEN_KINDS = ("ident", "num", "str", "template", "regex", "punct", "eof")


@dataclass
class Token:
    kind: str
    value: str
    start: int
    end: int
    nl_before: bool = False
    interps: list[tuple[int, int]] = field(default_factory=list)

    def is_punct(self, value: str) -> bool:
        return self.kind == "punct" and self.value == value

    def is_ident(self, value: str) -> bool:
        return self.kind == "ident" and self.value == value


_PUNCTS = sorted(
    [
        ">>>=",
        "===", "!==", "**=", "<<=", ">>=", "...", "&&=", "||=", "??=", ">>>",
        "=>", "==", "!=", "<=", ">=", "&&", "||", "??", "?.", "++", "--",
        "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "**",
        "+", "-", "*", "/", "%", "=", "<", ">", "!", "?", ":", ";", ",",
        ".", "(", ")", "[", "]", "{", "}", "&", "|", "^", "~", "@", "#",
    ],
    key=len,
    reverse=True,
)

_IDENT_RE = re.compile(r"[$_A-Za-z-\U0010ffff][$\w-\U0010ffff]*")

_NUM_RES = (
    re.compile(r"0[xX][0-9a-fA-F][0-9a-fA-F_]*n?"),
    re.compile(r"0[oO][0-7][0-7_]*n?"),
    re.compile(r"0[bB][01][01_]*n?"),
    re.compile(r"(?:\d[\d_]*(?:\.[\d_]*)?|\.\d[\d_]*)(?:[eE][+-]?\d+)?n?"),
)

# After these keywords an operand is expected, so `/` starts a regex.
_REGEX_AFTER_KEYWORD = frozenset(
    "return typeof instanceof in of new delete void throw case do else "
    "yield await".split()
)

# Punctuators after which `/` must be division. Treating `}` as an
# operand end loses regex-after-block statements (rare) but makes the
# `/>` after a JSX expression container lex as punctuation.
_DIV_AFTER_PUNCT = frozenset({")", "]", "}", "++", "--"})


class Lexer:
    def __init__(self, source: str, pos: int = 0, limit: int | None = None):
        self.source = source
        self.pos = pos
        self.limit = len(source) if limit is None else limit
        self._prev: Token | None = None

    def state(self) -> tuple[int, Token | None]:
        return (self.pos, self._prev)

    def restore(self, state: tuple[int, Token | None]) -> None:
        self.pos, self._prev = state

    def set_pos(self, pos: int) -> None:
        self.pos = pos
        self._prev = None

    def _skip_trivia(self) -> bool:
        src, limit = self.source, self.limit
        saw_newline = False
        while self.pos < limit:
            ch = src[self.pos]
            if ch == "\n":
                saw_newline = True
                self.pos += 1
            elif ch.isspace():
                self.pos += 1
            elif ch == "/" and self.pos + 1 < limit and src[self.pos + 1] == "/":
                end = src.find("\n", self.pos, limit)
                self.pos = limit if end == -1 else end
            elif ch == "/" and self.pos + 1 < limit and src[self.pos + 1] == "*":
                end = src.find("*/", self.pos + 2, limit)
                if end == -1:
                    raise LexError("unterminated block comment", self.pos)
                if "\n" in src[self.pos : end]:
                    saw_newline = True
                self.pos = end + 2
            else:
                break
        return saw_newline

    def next_token(self) -> Token:
        nl = self._skip_trivia()
        start = self.pos
        src, limit = self.source, self.limit
        if start >= limit:
            tok = Token("eof", "", start, start, nl)
            self._prev = tok
            return tok
        ch = src[start]

        if ch in "\"'":
            end = self._scan_string(start, ch)
            tok = Token("str", src[start:end], start, end, nl)
        elif ch == "`":
            end, interps = self._scan_template(start)
            tok = Token("template", src[start:end], start, end, nl, interps)
        elif ch == "/" and self._regex_allowed():
            end = self._scan_regex(start)
            tok = Token("regex", src[start:end], start, end, nl)
        else:
            m = _IDENT_RE.match(src, start)
            if m and m.end() <= limit:
                tok = Token("ident", m.group(), start, m.end(), nl)
            else:
                tok = self._scan_number_or_punct(start, nl)
        self.pos = tok.end
        self._prev = tok
        return tok

    def _scan_number_or_punct(self, start: int, nl: bool) -> Token:
        src, limit = self.source, self.limit
        ch = src[start]
        if ch.isdigit() or (
            ch == "." and start + 1 < limit and src[start + 1].isdigit()
        ):
            for pattern in _NUM_RES:
                m = pattern.match(src, start)
                if m and m.end() <= limit:
                    return Token("num", m.group(), start, m.end(), nl)
        for p in _PUNCTS:
            if src.startswith(p, start) and start + len(p) <= limit:
                return Token("punct", p, start, start + len(p), nl)
        raise LexError(f"unexpected character {ch!r}", start)

    def _regex_allowed(self) -> bool:
        prev = self._prev
        if prev is None:
            return True
        if prev.kind in ("num", "str", "regex", "template"):
            return False
        if prev.kind == "ident":
            return prev.value in _REGEX_AFTER_KEYWORD
        if prev.kind == "punct":
            return prev.value not in _DIV_AFTER_PUNCT
        return True

    def _scan_string(self, start: int, quote: str) -> int:
        # Raw newlines are tolerated: JSX attribute strings allow them.
        src, limit = self.source, self.limit
        i = start + 1
        while i < limit:
            ch = src[i]
            if ch == "\\":
                i += 2
            elif ch == quote:
                return i + 1
            else:
                i += 1
        raise LexError("unterminated string literal", start)

    def _scan_regex(self, start: int) -> int:
        src, limit = self.source, self.limit
        i = start + 1
        in_class = False
        while i < limit:
            ch = src[i]
            if ch == "\\":
                i += 2
                continue
            if ch == "\n":
                raise LexError("unterminated regular expression", start)
            if ch == "[":
                in_class = True
            elif ch == "]":
                in_class = False
            elif ch == "/" and not in_class:
                i += 1
                while i < limit and _IDENT_RE.match(src[i]):
                    i += 1
                return i
            i += 1
        raise LexError("unterminated regular expression", start)

    def _scan_template(self, start: int) -> tuple[int, list[tuple[int, int]]]:
        src, limit = self.source, self.limit
        interps: list[tuple[int, int]] = []
        i = start + 1
        while i < limit:
            ch = src[i]
            if ch == "\\":
                i += 2
            elif ch == "`":
                return i + 1, interps
            elif ch == "$" and i + 1 < limit and src[i + 1] == "{":
                body_start = i + 2
                i = self._scan_balanced_braces(body_start)
                interps.append((body_start, i))
                i += 1  # past the closing brace
            else:
                i += 1
        raise LexError("unterminated template literal", start)

    def _scan_balanced_braces(self, start: int) -> int:
        """Return index of the `}` matching depth 0, starting inside `${`."""
        src, limit = self.source, self.limit
        depth = 0
        i = start
        while i < limit:
            ch = src[i]
            if ch == "\\":
                i += 2
            elif ch in "\"'":
                i = self._scan_string(i, ch)
            elif ch == "`":
                i, _ = self._scan_template(i)
            elif ch == "/" and i + 1 < limit and src[i + 1] == "/":
                nl = src.find("\n", i, limit)
                i = limit if nl == -1 else nl
            elif ch == "/" and i + 1 < limit and src[i + 1] == "*":
                end = src.find("*/", i + 2, limit)
                if end == -1:
                    raise LexError("unterminated block comment", i)
                i = end + 2
            elif ch == "{":
                depth += 1
                i += 1
            elif ch == "}":
                if depth == 0:
                    return i
                depth -= 1
                i += 1
            else:
                i += 1
        raise LexError("unterminated template interpolation", start)

    def scan_jsx_text(self, start: int) -> tuple[str, int]:
        """Raw child text from `start` up to the next `<` or `{`."""
        src, limit = self.source, self.limit
        i = start
        while i < limit and src[i] not in "<{":
            i += 1
        return src[start:i], i
