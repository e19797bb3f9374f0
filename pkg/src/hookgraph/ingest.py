"""Project ingestion: discover and load the analyzable source files.

Scanning walks a local directory, applies gitignore-style include/exclude
globs, and loads every matching file into an immutable ``ProjectSnapshot``.
Files are sorted by relative path so the snapshot (and everything derived
from it) is independent of filesystem enumeration order.
"""

from __future__ import annotations

import hashlib
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_INCLUDE = ("**/*.jsx", "**/*.tsx", "**/*.js", "**/*.ts")
DEFAULT_EXCLUDE = ("**/node_modules/**", "**/dist/**", "**/build/**")
DEFAULT_MAX_FILE_BYTES = 1024 * 1024


class ConfigError(ValueError):
    """Invalid analysis configuration."""


class RootNotFound(ConfigError):
    """The configured root path does not exist."""


class RootNotDirectory(ConfigError):
    """The configured root path is not a directory."""


@dataclass(frozen=True)
class AnalysisConfig:
    root_path: Path
    include_globs: tuple[str, ...] = DEFAULT_INCLUDE
    exclude_globs: tuple[str, ...] = DEFAULT_EXCLUDE
    drill_threshold: int = 1
    fail_on_findings: bool = False
    max_file_bytes: int = DEFAULT_MAX_FILE_BYTES

    def __post_init__(self) -> None:
        object.__setattr__(self, "root_path", Path(self.root_path))
        object.__setattr__(self, "include_globs", tuple(self.include_globs))
        object.__setattr__(self, "exclude_globs", tuple(self.exclude_globs))
        if self.drill_threshold < 1:
            raise ConfigError(f"drill_threshold must be >= 1, got {self.drill_threshold}")
        if not self.include_globs:
            raise ConfigError("include_globs must be non-empty")
        if self.max_file_bytes < 1:
            raise ConfigError(f"max_file_bytes must be positive, got {self.max_file_bytes}")


@dataclass(frozen=True)
class SourceFile:
    file_id: int
    relative_path: str
    content: str
    line_offsets: tuple[int, ...]

    @staticmethod
    def from_content(file_id: int, relative_path: str, content: str) -> "SourceFile":
        data = content.encode("utf-8")
        offsets = [0]
        start = 0
        while True:
            nl = data.find(b"\n", start)
            if nl < 0:
                break
            offsets.append(nl + 1)
            start = nl + 1
        return SourceFile(file_id, relative_path, content, tuple(offsets))

    @property
    def line_count(self) -> int:
        if not self.content:
            return 0
        n = self.content.count("\n")
        return n if self.content.endswith("\n") else n + 1

    def byte_to_line_col(self, byte_offset: int) -> tuple[int, int]:
        """Map a byte offset to a 1-based (line, column) pair.

        Columns count Unicode characters, matching what editors display.
        """
        lo, hi = 0, len(self.line_offsets) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.line_offsets[mid] <= byte_offset:
                lo = mid
            else:
                hi = mid - 1
        line_start = self.line_offsets[lo]
        prefix = self.content.encode("utf-8")[line_start:byte_offset]
        return lo + 1, len(prefix.decode("utf-8", errors="replace")) + 1


@dataclass(frozen=True)
class ProjectSnapshot:
    config: AnalysisConfig
    files: tuple[SourceFile, ...]
    skipped: tuple[tuple[str, str], ...]

    def file_by_path(self, relative_path: str) -> SourceFile | None:
        for f in self.files:
            if f.relative_path == relative_path:
                return f
        return None

    def digest(self) -> str:
        """Content hash over every loaded file, stable across rescans."""
        h = hashlib.sha256()
        for f in self.files:
            h.update(f.relative_path.encode("utf-8"))
            h.update(b"\x00")
            h.update(f.content.encode("utf-8"))
            h.update(b"\x00")
        return h.hexdigest()


def glob_to_regex(pattern: str) -> re.Pattern[str]:
    """Translate a gitignore-style glob into a regex over posix relpaths.

    ``**`` crosses directory separators, ``*`` and ``?`` do not, and
    character classes pass through (with ``!`` negation).
    """
    out: list[str] = []
    i = 0
    n = len(pattern)
    while i < n:
        c = pattern[i]
        if c == "*":
            if pattern[i : i + 2] == "**":
                if pattern[i + 2 : i + 3] == "/":
                    out.append("(?:[^/]*/)*")
                    i += 3
                else:
                    out.append(".*")
                    i += 2
            else:
                out.append("[^/]*")
                i += 1
        elif c == "?":
            out.append("[^/]")
            i += 1
        elif c == "[":
            j = i + 1
            if j < n and pattern[j] in "!^":
                j += 1
            if j < n and pattern[j] == "]":
                j += 1
            while j < n and pattern[j] != "]":
                j += 1
            if j >= n:
                out.append(re.escape("["))
                i += 1
            else:
                body = pattern[i + 1 : j]
                if body.startswith("!"):
                    body = "^" + body[1:]
                out.append("[" + body + "]")
                i = j + 1
        else:
            out.append(re.escape(c))
            i += 1
    return re.compile("^" + "".join(out) + "$")


class GlobSet:
    def __init__(self, patterns: tuple[str, ...]) -> None:
        self._regexes = [glob_to_regex(p) for p in patterns]

    def matches(self, relpath: str) -> bool:
        return any(r.match(relpath) for r in self._regexes)


# Sentinel child path used to decide whether a whole directory can be pruned:
# it contains a separator, so only patterns whose tail crosses directories
# (a trailing "**") can match it.
_PRUNE_PROBE = "\x00/\x00"


def scan_project(config: AnalysisConfig) -> ProjectSnapshot:
    """Scan ``config.root_path`` and load matching files into a snapshot.

    Every path matching the include globs lands in exactly one of: the
    snapshot's ``files``, its ``skipped`` list (with a machine-readable
    reason), or nowhere when an exclude glob filters it. Individual file
    failures never abort the scan.
    """
    root = Path(config.root_path)
    if not root.exists():
        raise RootNotFound(f"root path does not exist: {root}")
    if not root.is_dir():
        raise RootNotDirectory(f"root path is not a directory: {root}")

    include = GlobSet(config.include_globs)
    exclude = GlobSet(config.exclude_globs)

    selected: list[str] = []
    skipped: list[tuple[str, str]] = []

    for dirpath, dirnames, filenames in os.walk(root, followlinks=False):
        rel_dir = Path(dirpath).relative_to(root).as_posix()
        prefix = "" if rel_dir == "." else rel_dir + "/"
        dirnames[:] = sorted(
            d for d in dirnames if not exclude.matches(prefix + d + "/" + _PRUNE_PROBE)
        )
        for name in filenames:
            rel = prefix + name
            if not include.matches(rel) or exclude.matches(rel):
                continue
            full = Path(dirpath) / name
            if full.is_symlink():
                skipped.append((rel, "symlink"))
                continue
            try:
                size = full.stat().st_size
            except OSError:
                skipped.append((rel, "io_error"))
                continue
            if size > config.max_file_bytes:
                skipped.append((rel, "over_size_limit"))
                continue
            selected.append(rel)

    selected.sort()
    files: list[SourceFile] = []
    for rel in selected:
        full = root / rel
        try:
            raw = full.read_bytes()
        except OSError:
            skipped.append((rel, "io_error"))
            continue
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            skipped.append((rel, "invalid_encoding"))
            continue
        files.append(SourceFile.from_content(len(files), rel, text))

    skipped.sort()
    return ProjectSnapshot(config=config, files=tuple(files), skipped=tuple(skipped))
