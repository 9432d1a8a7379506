"""Control endpoint: event stream, status proxy, reports and console hosting.

The operator console and the CLI's ``down``/``status``/``trace`` verbs talk
to this endpoint. Trace events stream as server-sent records (one JSON
object per event) with Last-Event-ID replay so clients can reconnect
without losing rows.
"""

from __future__ import annotations

import json
import mimetypes
import os
import queue
import threading
from urllib.parse import parse_qs, urlsplit

from .httpbase import (HttpEndpoint, HttpRequest, HttpResponse,
                       StreamingResponse, cors_preflight)
from .trace.events import TraceEvent
from .trace.table import export_trace_table

_JSON = [("content-type", "application/json")]


class ControlServer:
    def __init__(self, stack, host: str = "127.0.0.1", port: int = 8010,
                 console_dir: str | None = None, results_dir: str = "results"):
        self.stack = stack
        self.host = host
        self.results_dir = results_dir
        self.console_dir = console_dir or _default_console_dir()
        self.shutdown_requested = threading.Event()
        self._requested_port = port
        self._endpoint: HttpEndpoint | None = None

    @property
    def port(self) -> int:
        return self._endpoint.port if self._endpoint else self._requested_port

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def start(self) -> None:
        if self._endpoint is None:
            self._endpoint = HttpEndpoint(self.host, self._requested_port,
                                          self._handle, "control")
            self._endpoint.start()

    def stop(self) -> None:
        self.shutdown_requested.set()
        if self._endpoint is not None:
            self._endpoint.stop()
            self._endpoint = None

    # -- routing -----------------------------------------------------------------

    def _handle(self, request: HttpRequest):
        if request.method == "OPTIONS":
            return cors_preflight()
        split = urlsplit(request.target)
        path = split.path
        if path == "/events":
            return self._stream_events(request)
        if path == "/api/trace":
            return self._trace_json(parse_qs(split.query))
        if path == "/api/nf-status":
            return HttpResponse(200, list(_JSON),
                                json.dumps(self.stack.nf_status()).encode())
        if path == "/api/endpoints":
            doc = {"hostAgent": self.stack.host_agent.url,
                   "nrf": self.stack.nrf.api_root,
                   "control": self.url,
                   "nfTypes": [t for t in self.stack.nf_names]}
            return HttpResponse(200, list(_JSON), json.dumps(doc).encode())
        if path == "/api/report/latency":
            if self.stack.last_report is None:
                return HttpResponse(404, list(_JSON),
                                    b'{"detail":"no latency report yet"}')
            return HttpResponse(200, list(_JSON),
                                json.dumps(self.stack.last_report.to_dict()).encode())
        if path == "/api/shutdown" and request.method == "POST":
            self.shutdown_requested.set()
            return HttpResponse(200, list(_JSON), b'{"ok":true}')
        if path.startswith("/results/"):
            return self._serve_file(self.results_dir, path[len("/results/"):])
        if path == "/" or path == "/index.html":
            return self._serve_file(self.console_dir, "index.html",
                                    fallback=_PLACEHOLDER)
        return self._serve_file(self.console_dir, path.lstrip("/"))

    def _trace_json(self, params: dict) -> HttpResponse:
        interface = (params.get("interface") or [None])[0]
        events = self.stack.collector.snapshot()
        rows = export_trace_table(events, interface=interface)
        doc = {
            "events": [e.to_dict() for e in events
                       if interface is None or e.interface.value == interface],
            "rows": [{"label": r.label, "route": r.route, "interface": r.interface,
                      "purpose": r.purpose} for r in rows],
        }
        return HttpResponse(200, list(_JSON), json.dumps(doc).encode())

    def _stream_events(self, request: HttpRequest) -> StreamingResponse:
        last_id = request.headers.get("last-event-id")
        since = int(last_id) if last_id and last_id.isdigit() else -1

        def write(wfile, _request):
            events: "queue.Queue[TraceEvent]" = queue.Queue()
            listener = events.put
            self.stack.collector.add_listener(listener)
            try:
                for event in self.stack.collector.events_since(since):
                    wfile.write(_sse_record(event))
                wfile.flush()
                while not self.shutdown_requested.is_set():
                    try:
                        event = events.get(timeout=10.0)
                    except queue.Empty:
                        wfile.write(b": keep-alive\r\n\r\n")
                        wfile.flush()
                        continue
                    wfile.write(_sse_record(event))
                    wfile.flush()
            finally:
                self.stack.collector.remove_listener(listener)

        return StreamingResponse(
            headers=[("content-type", "text/event-stream"),
                     ("cache-control", "no-store")],
            writer=write)

    def _serve_file(self, root: str, relative: str,
                    fallback: bytes | None = None) -> HttpResponse:
        full = os.path.realpath(os.path.join(root, relative))
        if not full.startswith(os.path.realpath(root) + os.sep) \
                and full != os.path.realpath(root):
            return HttpResponse(403, [("content-type", "text/plain")], b"forbidden")
        if os.path.isfile(full):
            ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
            with open(full, "rb") as fh:
                return HttpResponse(200, [("content-type", ctype)], fh.read())
        if fallback is not None:
            return HttpResponse(200, [("content-type", "text/html")], fallback)
        return HttpResponse(404, [("content-type", "text/plain")], b"not found")


def _sse_record(event: TraceEvent) -> bytes:
    return (f"id: {event.seq}\r\ndata: {event.to_json()}\r\n\r\n").encode()


def _default_console_dir() -> str:
    here = os.path.dirname(os.path.abspath(__file__))
    for candidate in (os.path.join(here, "..", "..", "frontend"),
                      os.path.join(os.getcwd(), "frontend")):
        if os.path.isdir(candidate):
            return os.path.realpath(candidate)
    return os.path.join(os.getcwd(), "frontend")


_PLACEHOLDER = (b"<!doctype html><html><body><h3>coreagents control endpoint</h3>"
                b"<p>No console build found. Endpoints: /events, /api/trace, "
                b"/api/nf-status, /api/report/latency.</p></body></html>")
