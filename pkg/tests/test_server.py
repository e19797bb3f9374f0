"""HTTP service endpoints against a live in-process server."""

import json
import socket
import threading
import urllib.error
import urllib.request

import pytest

from hookgraph.ingest import AnalysisConfig
from hookgraph.server import create_server

from test_report import DRILL3, write_project


@pytest.fixture
def served(tmp_path):
    root = write_project(tmp_path / "proj")
    server = create_server(AnalysisConfig(root_path=root), port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    yield root, base
    server.shutdown()
    server.server_close()


def get(url: str):
    try:
        with urllib.request.urlopen(url) as resp:
            return resp.status, resp.headers.get("Content-Type"), resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.headers.get("Content-Type"), err.read()


def post(url: str):
    req = urllib.request.Request(url, data=b"", method="POST")
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


class TestGraphEndpoint:
    def test_serves_report(self, served):
        _, base = served
        status, ctype, body = get(f"{base}/api/graph")
        assert status == 200
        assert ctype == "application/json"
        doc = json.loads(body)
        assert doc["schema_version"] == "1.0"
        assert doc["metrics"]["component_count"] == 3

    def test_stable_between_requests(self, served):
        _, base = served
        assert get(f"{base}/api/graph")[2] == get(f"{base}/api/graph")[2]


class TestSourceEndpoint:
    def test_known_file(self, served):
        _, base = served
        status, _, body = get(f"{base}/api/source?file=App.jsx")
        assert status == 200
        doc = json.loads(body)
        assert doc["path"] == "App.jsx"
        assert "useState" in doc["content"]
        assert doc["line_count"] == len(doc["content"].splitlines())

    def test_unknown_file_404(self, served):
        _, base = served
        status, _, _ = get(f"{base}/api/source?file=Nope.jsx")
        assert status == 404

    def test_traversal_400(self, served):
        _, base = served
        status, _, _ = get(f"{base}/api/source?file=../etc/passwd")
        assert status == 400
        status, _, _ = get(f"{base}/api/source?file=/etc/passwd")
        assert status == 400

    def test_missing_param_400(self, served):
        _, base = served
        status, _, _ = get(f"{base}/api/source")
        assert status == 400


class TestReanalyze:
    def test_swaps_snapshot(self, served):
        root, base = served
        before = json.loads(get(f"{base}/api/graph")[2])
        (root / "New.jsx").write_text(
            "export function New() { return <p />; }\n")
        status, body = post(f"{base}/api/reanalyze")
        assert status == 202
        assert json.loads(body)["status"] == "reanalyzing"
        # the swap happens after the 202; poll briefly
        for _ in range(100):
            after = json.loads(get(f"{base}/api/graph")[2])
            if after["metrics"]["jsx_file_count"] == 3:
                break
        assert after["metrics"]["jsx_file_count"] == 3
        assert before["metrics"]["jsx_file_count"] == 2

    def test_get_reanalyze_is_404(self, served):
        _, base = served
        status, _, _ = get(f"{base}/api/reanalyze")
        assert status == 404


class TestStaticUi:
    def test_no_ui_dir_404(self, served):
        _, base = served
        status, _, _ = get(f"{base}/")
        assert status == 404

    def test_ui_dir_served(self, tmp_path):
        root = write_project(tmp_path / "proj")
        ui = tmp_path / "ui"
        ui.mkdir()
        (ui / "index.html").write_text("<h1>explorer</h1>")
        (ui / "app.js").write_text("console.log(1)")
        server = create_server(
            AnalysisConfig(root_path=root), port=0, ui_dir=ui)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        base = f"http://127.0.0.1:{server.server_address[1]}"
        try:
            status, ctype, body = get(f"{base}/")
            assert (status, body) == (200, b"<h1>explorer</h1>")
            assert ctype.startswith("text/html")
            status, ctype, _ = get(f"{base}/app.js")
            assert status == 200
            assert "javascript" in ctype
            status, _, _ = get(f"{base}/missing.css")
            assert status == 404
        finally:
            server.shutdown()
            server.server_close()


class TestPortInUse:
    def test_bind_conflict_raises(self, tmp_path):
        root = write_project(tmp_path / "proj")
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            with pytest.raises(OSError):
                create_server(AnalysisConfig(root_path=root), port=port)
        finally:
            blocker.close()
