"""NRF service: SBI endpoints for NF registration, discovery and removal.

Serves ``/nnrf-nfm/v1/nf-instances`` over cleartext HTTP/2 with prior
knowledge. A fallback HTTP/1.1 mode exists for constrained clients
(browsers can't speak h2c); in the default "auto" transport the listener
sniffs the client preface and speaks whichever protocol the peer opened
with. JSON bodies are emitted compactly so excerpt-exact responses are
byte-stable.
"""

from __future__ import annotations

import json
import logging
import socket
import socketserver
import threading
from typing import Any
from urllib.parse import parse_qs, urlsplit

from ..errors import ValidationError
from . import h2wire
from .registry import NrfRegistry, discovery_document, validate_put

logger = logging.getLogger("coreagents.nrf")

_JSON = [("content-type", "application/json"),
         ("access-control-allow-origin", "*")]


def _dumps(doc: Any) -> bytes:
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


def _problem(status: int, title: str, detail: str) -> tuple[int, list, bytes]:
    return status, list(_JSON), _dumps({"title": title, "status": status, "detail": detail})


class NrfApp:
    """Transport-independent request handling for the NRF."""

    def __init__(self, registry: NrfRegistry, excerpt_exact: bool = False):
        self.registry = registry
        self.excerpt_exact = excerpt_exact
        self.api_root = "http://127.0.0.1:0"  # overwritten once the listener binds

    def handle(self, method: str, target: str, headers: dict[str, str],
               body: bytes) -> tuple[int, list[tuple[str, str]], bytes]:
        split = urlsplit(target)
        path = split.path
        query = split.query
        if method == "OPTIONS":
            return 204, [("access-control-allow-origin", "*"),
                         ("access-control-allow-methods", "GET, PUT, DELETE, OPTIONS"),
                         ("access-control-allow-headers", "content-type")], b""
        if path == "/nnrf-nfm/v1/nf-instances":
            if method != "GET":
                return _problem(405, "METHOD_NOT_ALLOWED", f"{method} not allowed here")
            return self._discover(query, target)
        if path.startswith("/nnrf-nfm/v1/nf-instances/"):
            instance_id = path.rsplit("/", 1)[1]
            if method == "PUT":
                return self._register(instance_id, body)
            if method == "DELETE":
                self.registry.deregister(instance_id)
                return 204, list(_JSON), b""
            if method == "GET":
                profile = self.registry.get(instance_id)
                if profile is None:
                    return _problem(404, "NOT_FOUND", f"no instance {instance_id}")
                return 200, list(_JSON), _dumps(profile.to_dict())
            return _problem(405, "METHOD_NOT_ALLOWED", f"{method} not allowed here")
        return _problem(404, "NOT_FOUND", f"no resource at {path}")

    def _discover(self, query: str, target: str) -> tuple[int, list, bytes]:
        params = parse_qs(query, keep_blank_values=True)
        values = params.get("nf-type")
        if not values or not values[0].strip():
            return _problem(400, "INVALID_QUERY_PARAM",
                            "query parameter nf-type is required")
        nf_type = values[0].strip()
        if not nf_type.replace("-", "").replace("_", "").isalnum():
            return _problem(400, "INVALID_QUERY_PARAM",
                            f"malformed nf-type token: {nf_type!r}")
        self_path = "" if self.excerpt_exact else target
        doc = discovery_document(self.registry, nf_type, self.api_root, self_path)
        return 200, list(_JSON), _dumps(doc)

    def _register(self, instance_id: str, body: bytes) -> tuple[int, list, bytes]:
        try:
            payload = json.loads(body or b"")
        except ValueError:
            return _problem(400, "INVALID_BODY", "body is not valid JSON")
        try:
            profile = validate_put(instance_id, payload)
        except ValidationError as exc:
            return _problem(400, "INVALID_PARAM", str(exc))
        created = self.registry.register(profile)
        return (201 if created else 200), list(_JSON), _dumps(profile.to_dict())


class _SbiConnectionHandler(socketserver.BaseRequestHandler):
    """Per-connection handler: sniffs h2 preface, falls back to HTTP/1.1."""

    def handle(self) -> None:  # noqa: A003 - socketserver API
        server: SbiServer = self.server.owner  # type: ignore[attr-defined]
        sock: socket.socket = self.request
        sock.settimeout(30.0)
        sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        try:
            mode = server.transport
            if mode == "auto":
                first = sock.recv(4, socket.MSG_PEEK)
                mode = "h2" if first == b"PRI " else "h1"
            if mode == "h2":
                self._serve_h2(server, sock)
            else:
                self._serve_h1(server, sock)
        except (ConnectionError, socket.timeout, h2wire.H2ProtocolError, OSError):
            pass

    # -- HTTP/2 ---------------------------------------------------------------

    def _serve_h2(self, server: "SbiServer", sock: socket.socket) -> None:
        preface = h2wire.read_exact(sock, len(h2wire.CONNECTION_PREFACE))
        if preface != h2wire.CONNECTION_PREFACE:
            raise h2wire.H2ProtocolError("bad connection preface")
        h2wire.send_frames(sock, h2wire.settings_frame())
        decoder = h2wire.HpackDecoder()
        streams: dict[int, dict[str, Any]] = {}
        while True:
            frame = h2wire.read_frame(sock)
            if frame.type == h2wire.SETTINGS:
                if not frame.flags & h2wire.FLAG_ACK:
                    h2wire.send_frames(sock, h2wire.settings_frame(ack=True))
            elif frame.type == h2wire.PING:
                if not frame.flags & h2wire.FLAG_ACK:
                    h2wire.send_frames(sock, h2wire.Frame(h2wire.PING, h2wire.FLAG_ACK,
                                                          0, frame.payload))
            elif frame.type == h2wire.GOAWAY:
                return
            elif frame.type == h2wire.HEADERS:
                if not frame.flags & h2wire.FLAG_END_HEADERS:
                    h2wire.send_frames(sock, h2wire.goaway(frame.stream_id, 1))
                    raise h2wire.H2ProtocolError("CONTINUATION frames not supported")
                fields = decoder.decode(h2wire.headers_fragment(frame))
                streams[frame.stream_id] = {"fields": fields, "body": bytearray()}
                if frame.flags & h2wire.FLAG_END_STREAM:
                    self._h2_dispatch(server, sock, frame.stream_id, streams)
            elif frame.type == h2wire.DATA:
                stream = streams.get(frame.stream_id)
                if stream is None:
                    continue
                chunk = h2wire.strip_padding(frame)
                stream["body"] += chunk
                if chunk:
                    h2wire.send_frames(sock, h2wire.window_update(0, len(chunk)),
                                       h2wire.window_update(frame.stream_id, len(chunk)))
                if frame.flags & h2wire.FLAG_END_STREAM:
                    self._h2_dispatch(server, sock, frame.stream_id, streams)
            elif frame.type == h2wire.RST_STREAM:
                streams.pop(frame.stream_id, None)
            # PRIORITY / WINDOW_UPDATE: no action needed at our payload sizes

    def _h2_dispatch(self, server: "SbiServer", sock: socket.socket, stream_id: int,
                     streams: dict[int, dict[str, Any]]) -> None:
        stream = streams.pop(stream_id)
        pseudo = {n: v for n, v in stream["fields"] if n.startswith(":")}
        headers = {n: v for n, v in stream["fields"] if not n.startswith(":")}
        status, resp_headers, body = server.app.handle(
            pseudo.get(":method", "GET"), pseudo.get(":path", "/"),
            headers, bytes(stream["body"]))
        h2wire.send_frames(sock, *h2wire.response_frames(stream_id, status,
                                                         resp_headers, body))

    # -- HTTP/1.1 fallback ------------------------------------------------------

    def _serve_h1(self, server: "SbiServer", sock: socket.socket) -> None:
        reader = sock.makefile("rb")
        try:
            request_line = reader.readline(8192).decode("latin-1").strip()
            if not request_line:
                return
            parts = request_line.split()
            if len(parts) != 3:
                sock.sendall(b"HTTP/1.1 400 Bad Request\r\nconnection: close\r\n\r\n")
                return
            method, target, _version = parts
            headers: dict[str, str] = {}
            while True:
                line = reader.readline(8192).decode("latin-1")
                if line in ("\r\n", "\n", ""):
                    break
                if ":" in line:
                    name, _, value = line.partition(":")
                    headers[name.strip().lower()] = value.strip()
            length = int(headers.get("content-length", "0") or "0")
            body = reader.read(length) if length else b""
            status, resp_headers, resp_body = server.app.handle(method, target,
                                                                headers, body)
            reason = {200: "OK", 201: "Created", 204: "No Content",
                      400: "Bad Request", 404: "Not Found",
                      405: "Method Not Allowed"}.get(status, "OK")
            head = [f"HTTP/1.1 {status} {reason}"]
            head += [f"{n}: {v}" for n, v in resp_headers]
            head += [f"content-length: {len(resp_body)}", "connection: close", "", ""]
            sock.sendall("\r\n".join(head).encode("latin-1") + resp_body)
        finally:
            reader.close()


class _ThreadingTcp(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


class SbiServer:
    """Lifecycle wrapper around the NRF listener."""

    def __init__(self, registry: NrfRegistry, host: str = "127.0.0.1", port: int = 8080,
                 excerpt_exact: bool = False, transport: str = "auto"):
        if transport not in ("auto", "h2", "h1"):
            raise ValueError(f"unknown SBI transport mode: {transport!r}")
        self.app = NrfApp(registry, excerpt_exact=excerpt_exact)
        self.host = host
        self.transport = transport
        self._requested_port = port
        self._server: _ThreadingTcp | None = None
        self._thread: threading.Thread | None = None

    @property
    def port(self) -> int:
        if self._server is None:
            return self._requested_port
        return self._server.server_address[1]

    @property
    def api_root(self) -> str:
        return f"http://{self.host}:{self.port}"

    def start(self) -> None:
        if self._server is not None:
            return
        self._server = _ThreadingTcp((self.host, self._requested_port),
                                     _SbiConnectionHandler)
        self._server.owner = self  # type: ignore[attr-defined]
        self.app.api_root = self.api_root
        self._thread = threading.Thread(target=self._server.serve_forever,
                                        name="nrf-sbi", daemon=True)
        self._thread.start()
        logger.info("NRF SBI listening on %s (%s)", self.api_root, self.transport)

    def stop(self) -> None:
        if self._server is None:
            return
        self._server.shutdown()
        self._server.server_close()
        self._server = None
        self._thread = None
