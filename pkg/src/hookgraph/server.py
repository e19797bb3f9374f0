"""Local HTTP service for the explorer frontend.

Serves the canonical report, raw source text, and optional static UI
assets. All reads come from an immutable in-memory snapshot; a POST to
/api/reanalyze rescans the project and swaps the snapshot atomically.
"""

import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .ingest import AnalysisConfig
from .report import AnalysisReport, run_analyze


class ReportHolder:
    """The served report; reloadable, swapped under a lock."""

    def __init__(self, config: AnalysisConfig):
        self.config = config
        self._lock = threading.Lock()
        self._report: AnalysisReport | None = None
        self._bytes = b""

    def load(self) -> None:
        report = run_analyze(self.config)
        data = report.to_bytes()
        with self._lock:
            self._report = report
            self._bytes = data

    @property
    def report_bytes(self) -> bytes:
        with self._lock:
            return self._bytes

    def source(self, relative_path: str):
        with self._lock:
            report = self._report
        if report is None:
            return None
        return report.snapshot.file_by_path(relative_path)


class _Handler(BaseHTTPRequestHandler):
    server_version = "hookgraph"
    holder: ReportHolder
    ui_dir: Path | None

    # -- plumbing ----------------------------------------------------------------

    def log_message(self, format, *args):  # noqa: A002  stdlib signature
        pass

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict) -> None:
        body = (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8")
        self._send(status, body, "application/json")

    def _drain_body(self) -> None:
        length = int(self.headers.get("Content-Length") or 0)
        if length > 0:
            self.rfile.read(length)

    # -- routes ------------------------------------------------------------------

    def do_GET(self) -> None:
        url = urlparse(self.path)
        if url.path == "/api/graph":
            self._send(200, self.holder.report_bytes, "application/json")
        elif url.path == "/api/source":
            self._source(url)
        else:
            self._static(url.path)

    def do_POST(self) -> None:
        url = urlparse(self.path)
        if url.path != "/api/reanalyze":
            self._send_json(404, {"error": "unknown endpoint"})
            return
        self._drain_body()
        # acknowledge first; the swap happens when the rescan finishes
        self._send_json(202, {"status": "reanalyzing"})
        try:
            self.holder.load()
        except Exception:
            pass  # keep serving the previous snapshot

    def _source(self, url) -> None:
        params = parse_qs(url.query)
        values = params.get("file", [])
        if len(values) != 1 or not values[0]:
            self._send_json(400, {"error": "missing file parameter"})
            return
        rel = values[0]
        if rel.startswith("/") or ".." in rel.split("/"):
            self._send_json(400, {"error": "path is outside the root"})
            return
        found = self.holder.source(rel)
        if found is None:
            self._send_json(404, {"error": f"unknown file: {rel}"})
            return
        self._send_json(200, {
            "path": found.relative_path,
            "content": found.content,
            "line_count": found.line_count,
        })

    def _static(self, path: str) -> None:
        if self.ui_dir is None:
            self._send_json(404, {"error": "no ui assets configured"})
            return
        rel = path.lstrip("/") or "index.html"
        base = self.ui_dir.resolve()
        target = (base / rel).resolve()
        if base != target and base not in target.parents:
            self._send_json(404, {"error": "not found"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"error": "not found"})
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), ctype)


def create_server(config: AnalysisConfig, port: int,
                  ui_dir: str | Path | None = None,
                  host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Analyze the project, then bind the service.

    Analysis errors (bad root) and bind errors (port in use) raise
    before anything starts serving. Pass port 0 to let the OS pick.
    """
    holder = ReportHolder(config)
    holder.load()
    handler = type("BoundHandler", (_Handler,), {
        "holder": holder,
        "ui_dir": Path(ui_dir) if ui_dir is not None else None,
    })
    return ThreadingHTTPServer((host, port), handler)


def run_serve(config: AnalysisConfig, port: int,
              ui_dir: str | Path | None = None) -> None:
    server = create_server(config, port, ui_dir)
    try:
        server.serve_forever()
    finally:
        server.server_close()
