"""Local HTTP service exposing the pipeline to the web UI.

Read endpoints serve JSON snapshots of the persisted state; POST /api/build
and /api/run execute the corresponding pipeline commands and are mutually
serialized, so a second mutating request while one is in flight gets 409.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .charts import line_chart
from .orchestrator import BuildError, Project, RunError, StateError
from .results import ReportError, export_report, series_to_dict
from .versions import GraphError, PersistError, graph_to_dict

PLACEHOLDER_PAGE = """<!doctype html>
<html><head><title>mvee</title></head>
<body style="font-family: sans-serif; margin: 3em">
<h1>mvee service</h1>
<p>No UI bundle is installed. The JSON API is live under <code>/api/</code>:
graph, builds, results, report, anomaly/{build}/{section}, build, run.</p>
</body></html>
"""


def _outcome_dict(method: str, outcome) -> dict:
    d = {
        "kind": outcome.kind.value,
        "version": outcome.version,
        "label": f"{method}.V{outcome.version}",
    }
    if outcome.from_version is not None:
        d["from"] = outcome.from_version
    return d


def builds_payload(graph) -> list[dict]:
    order: list[str] = []
    by_build: dict[str, dict] = {}
    for method, hist in graph.methods.items():
        for build_id, outcome in hist.steps:
            if build_id not in by_build:
                order.append(build_id)
                by_build[build_id] = {"build": build_id, "outcomes": {}}
            by_build[build_id]["outcomes"][method] = _outcome_dict(method, outcome)
    return [by_build[b] for b in order]


def build_report_payload(report) -> dict:
    return {
        "build": report.build_id,
        "outcomes": {
            m: _outcome_dict(m, o) for m, o in report.outcomes.items()
        },
        "anomalies": [
            {"section": a.section_id, "from": a.from_version, "version": a.new_version}
            for a in report.anomalies
        ],
        "anomaly": report.has_anomaly,
    }


class MveeServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, project: Project, ui_dir: Path | None):
        super().__init__(address, ApiHandler)
        self.project = project
        self.ui_dir = ui_dir
        self.mutation_lock = threading.Lock()


class ApiHandler(BaseHTTPRequestHandler):
    server: MveeServer

    def log_message(self, fmt, *args):  # quiet by default
        pass

    # -- plumbing -----------------------------------------------------------

    def _send_json(self, payload, status: int = 200):
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, error: str, detail: str = ""):
        self._send_json({"error": error, "detail": detail}, status)

    def _query(self) -> dict[str, str]:
        q = parse_qs(urlparse(self.path).query)
        return {k: v[0] for k, v in q.items()}

    # -- GET ------------------------------------------------------------

    def do_GET(self):
        path = urlparse(self.path).path
        try:
            if path == "/api/graph":
                graph = self.server.project.load_graph()
                self._send_json(graph_to_dict(graph, include_snapshots=False))
            elif path == "/api/builds":
                graph = self.server.project.load_graph()
                self._send_json(builds_payload(graph))
            elif path.startswith("/api/anomaly/"):
                parts = path.split("/")
                if len(parts) != 5:
                    self._send_error_json(404, "not found", path)
                    return
                _, _, _, build_id, section_id = parts
                payload = self.server.project.anomaly_view(build_id, section_id)
                if payload is None:
                    self._send_error_json(
                        404, "no anomaly",
                        f"build {build_id} produced no fork for section {section_id}",
                    )
                else:
                    self._send_json(payload)
            elif path == "/api/results":
                self._results(report_files=False)
            elif path == "/api/report":
                self._results(report_files=True)
            else:
                self._static(path)
        except (StateError, GraphError, PersistError) as e:
            self._send_error_json(500, "state error", str(e))
        except ReportError as e:
            self._send_error_json(404, "empty report", str(e))
        except BrokenPipeError:
            pass

    def _results(self, report_files: bool):
        q = self._query()
        metric = q.get("metric", "runtime")
        param = q.get("param", "selectivity")
        project = self.server.project
        graph = project.load_graph()
        store = project.load_store()
        series = export_report(store, graph, metric, param)
        doc = series_to_dict(metric, param, series)
        if report_files:
            files = project.report(metric, param)
            doc = {
                "report": doc,
                "svg": line_chart(series, metric, param,
                                  f"{metric} by {param} (all relevant versions)"),
                "files": [str(p) for p in files],
            }
        self._send_json(doc)

    def _static(self, path: str):
        ui_dir = self.server.ui_dir
        if path == "/":
            path = "/index.html"
        if ui_dir is None:
            if path == "/index.html":
                body = PLACEHOLDER_PAGE.encode()
                self.send_response(200)
                self.send_header("Content-Type", "text/html")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
            else:
                self._send_error_json(404, "not found", path)
            return
        target = (ui_dir / path.lstrip("/")).resolve()
        if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
            self._send_error_json(404, "not found", path)
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    # -- POST -----------------------------------------------------------

    def do_POST(self):
        path = urlparse(self.path).path
        if path not in ("/api/build", "/api/run"):
            self._send_error_json(404, "not found", path)
            return
        if not self.server.mutation_lock.acquire(blocking=False):
            self._send_error_json(409, "operation in flight",
                                  "a build or run is already running")
            return
        try:
            project = self.server.project
            if path == "/api/build":
                report = project.build()
                self._send_json(build_report_payload(report))
            else:
                report = project.run()
                self._send_json({
                    "build": report.build_id,
                    "ingested": report.ingested,
                    "outcomes": {
                        m: _outcome_dict(m, o) for m, o in report.outcomes.items()
                    },
                })
        except (BuildError, RunError, StateError) as e:
            self._send_error_json(500, "command failed", str(e))
        finally:
            self.server.mutation_lock.release()


def create_server(
    project: Project, host: str = "127.0.0.1", port: int = 0,
    ui_dir: str | Path | None = None,
) -> MveeServer:
    resolved = _resolve_ui_dir(project, ui_dir)
    return MveeServer((host, port), project, resolved)


def _resolve_ui_dir(project: Project, ui_dir) -> Path | None:
    if ui_dir is not None:
        p = Path(ui_dir)
        return p if p.is_dir() else None
    candidates = [
        project.config.root / "frontend" / "dist",
        Path.cwd() / "frontend" / "dist",
        # editable checkout layout: src/mvee/server.py -> repo root
        Path(__file__).resolve().parent.parent.parent / "frontend" / "dist",
    ]
    for candidate in candidates:
        if candidate.is_dir():
            return candidate
    return None


def serve(project: Project, host: str, port: int, ui_dir=None):
    server = create_server(project, host, port, ui_dir)
    actual = server.server_address[1]
    ui = server.ui_dir or "placeholder page"
    print(f"serving on http://{host}:{actual}/ (ui: {ui})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
