"""Threaded HTTP/1.1 server base used by the MCP, A2A and control endpoints."""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable

logger = logging.getLogger("coreagents.http")


@dataclass
class HttpRequest:
    method: str
    target: str                       # path plus optional query
    headers: dict[str, str]           # lower-cased names
    body: bytes


@dataclass
class HttpResponse:
    status: int = 200
    headers: list[tuple[str, str]] = field(default_factory=list)
    body: bytes = b""


@dataclass
class StreamingResponse:
    """Response whose body is produced incrementally (SSE endpoints)."""

    headers: list[tuple[str, str]]
    writer: Callable  # writer(wfile, request) -> None; returns on disconnect
    status: int = 200


Handler = Callable[[HttpRequest], "HttpResponse | StreamingResponse"]


class _RequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    disable_nagle_algorithm = True  # keeps localhost round trips in the low ms

    def log_message(self, fmt: str, *args) -> None:  # quiet by default
        logger.debug("%s %s", self.address_string(), fmt % args)

    def _dispatch(self) -> None:
        length = int(self.headers.get("Content-Length", "0") or "0")
        body = self.rfile.read(length) if length else b""
        request = HttpRequest(
            method=self.command,
            target=self.path,
            headers={k.lower(): v for k, v in self.headers.items()},
            body=body,
        )
        handler: Handler = self.server.app_handler  # type: ignore[attr-defined]
        try:
            response = handler(request)
        except Exception:
            logger.exception("handler error for %s %s", self.command, self.path)
            response = HttpResponse(500, [("content-type", "text/plain")],
                                    b"internal server error")
        if isinstance(response, StreamingResponse):
            self.send_response(response.status)
            for name, value in response.headers:
                self.send_header(name, value)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            try:
                response.writer(self.wfile, request)
            except (BrokenPipeError, ConnectionResetError):
                pass
            self.close_connection = True
            return
        self.send_response(response.status)
        for name, value in response.headers:
            self.send_header(name, value)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Content-Length", str(len(response.body)))
        self.end_headers()
        if response.body:
            self.wfile.write(response.body)

    do_GET = _dispatch
    do_POST = _dispatch
    do_PUT = _dispatch
    do_DELETE = _dispatch
    do_OPTIONS = _dispatch


class HttpEndpoint:
    """A bound, running HTTP/1.1 endpoint with a stop switch."""

    def __init__(self, host: str, port: int, handler: Handler, name: str):
        self.host = host
        self.name = name
        self._server = ThreadingHTTPServer((host, port), _RequestHandler)
        self._server.daemon_threads = True
        self._server.app_handler = handler  # type: ignore[attr-defined]
        self._thread = threading.Thread(target=self._server.serve_forever,
                                        name=name, daemon=True)
        self.port = self._server.server_address[1]

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def start(self) -> None:
        if not self._thread.is_alive():
            self._thread.start()
        logger.info("%s listening on %s", self.name, self.url)

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()


def cors_preflight() -> HttpResponse:
    return HttpResponse(204, [
        ("Access-Control-Allow-Methods", "GET, POST, OPTIONS"),
        ("Access-Control-Allow-Headers", "content-type, mcp-session-id, x-traced"),
    ])
