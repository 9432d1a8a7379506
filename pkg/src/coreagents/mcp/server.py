"""MCP tool server: JSON-RPC 2.0 over HTTP POST /mcp.

Responses are framed as a single-message text/event-stream by default
(matching captured traffic); a config flag switches to plain
application/json for simple clients. Argument-validation failures are
reported as isError=true tool results so callers can read the diagnostic
and re-plan; protocol-level faults use JSON-RPC error objects.
"""

from __future__ import annotations

import logging
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Any, Callable

from .. import jsonrpc
from ..errors import (BackendFailure, UnknownNf, ValidationError)
from ..httpbase import HttpEndpoint, HttpRequest, HttpResponse, cors_preflight
from .schema import ToolDescriptor, ToolResult, validate_arguments

logger = logging.getLogger("coreagents.mcp")

PROTOCOL_VERSION = "2025-03-26"
SUPPORTED_VERSIONS = ("2025-03-26", "2024-11-05")


class ToolExecutionError(Exception):
    """Business-level tool failure carrying a diagnostic result string."""


@dataclass
class McpSession:
    session_id: str
    protocol_version: str
    client_info: dict[str, Any] = field(default_factory=dict)


ToolFn = Callable[[dict[str, Any]], dict[str, Any]]


class McpToolServer:
    """One MCP server exposing a registered tool catalog."""

    def __init__(self, name: str, host: str = "127.0.0.1", port: int = 9000,
                 sse_responses: bool = True, require_session: bool = True):
        self.name = name
        self.host = host
        self.sse_responses = sse_responses
        self.require_session = require_session
        self._requested_port = port
        self._tools: dict[str, tuple[ToolDescriptor, ToolFn]] = {}
        self._order: list[str] = []
        self._sessions: dict[str, McpSession] = {}
        self._lock = threading.Lock()
        self._endpoint: HttpEndpoint | None = None
        # Injectable handler delays (seconds) keyed by method, for latency
        # calibration: the sleep happens inside request handling.
        self.handler_delays: dict[str, float] = {}

    # -- catalog ----------------------------------------------------------------

    def register_tool(self, descriptor: ToolDescriptor, fn: ToolFn) -> None:
        descriptor.validate()
        if descriptor.name in self._tools:
            raise ValueError(f"duplicate tool name: {descriptor.name}")
        self._tools[descriptor.name] = (descriptor, fn)
        self._order.append(descriptor.name)

    def descriptors(self) -> list[ToolDescriptor]:
        return [self._tools[n][0] for n in self._order]

    # -- serving -----------------------------------------------------------------

    @property
    def port(self) -> int:
        return self._endpoint.port if self._endpoint else self._requested_port

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}/mcp"

    @property
    def display_name(self) -> str:
        host = "Localhost" if self.host in ("127.0.0.1", "localhost") else self.host
        return f"MCP Server ({host}: {self.port})"

    def start(self) -> None:
        if self._endpoint is None:
            self._endpoint = HttpEndpoint(self.host, self._requested_port,
                                          self._http_handler, f"mcp-{self.name}")
            self._endpoint.start()

    def stop(self) -> None:
        if self._endpoint is not None:
            self._endpoint.stop()
            self._endpoint = None

    # -- request handling ----------------------------------------------------------

    def _http_handler(self, request: HttpRequest) -> HttpResponse:
        if request.method == "OPTIONS":
            return cors_preflight()
        if request.target.split("?", 1)[0] != "/mcp" or request.method != "POST":
            return HttpResponse(404, [("content-type", "text/plain")], b"not found")
        envelope, response = self.handle_payload(request.body,
                                                 request.headers.get("mcp-session-id"))
        headers: list[tuple[str, str]] = []
        if envelope is not None and "result" in envelope and \
                isinstance(envelope["result"], dict) and "sessionId" in envelope["result"]:
            headers.append(("mcp-session-id", envelope["result"]["sessionId"]))
        body = jsonrpc.dumps(envelope if envelope is not None else response)
        if self.sse_responses:
            headers.append(("content-type", "text/event-stream"))
            payload = b"event: message\r\ndata: " + body + b"\r\n\r\n"
        else:
            headers.append(("content-type", "application/json"))
            payload = body
        return HttpResponse(200, headers, payload)

    def handle_payload(self, raw: bytes,
                       session_id: str | None) -> tuple[dict[str, Any] | None, dict[str, Any] | None]:
        """Process one JSON-RPC payload; returns (success_envelope, error_envelope)."""
        env, error = jsonrpc.parse_payload(raw)
        if error is not None:
            return None, error
        method = env["method"]
        req_id = env["id"]
        params = env.get("params", {})
        self._inject_delay(method)
        if method == "initialize":
            return self._initialize(req_id, params), None
        if method not in ("tools/list", "tools/call"):
            return None, jsonrpc.error_response(req_id, jsonrpc.METHOD_NOT_FOUND,
                                                f"method not found: {method}")
        if self.require_session and (session_id is None or session_id not in self._sessions):
            return None, jsonrpc.error_response(req_id, jsonrpc.SESSION_NOT_INITIALIZED,
                                                "session not initialized")
        if method == "tools/list":
            tools = [d.to_dict() for d in self.descriptors()]
            return jsonrpc.result_response(req_id, {"tools": tools}), None
        return self._call_tool(req_id, params)

    def _inject_delay(self, method: str) -> None:
        delay = self.handler_delays.get(method, 0.0)
        if delay > 0:
            time.sleep(delay)

    def _initialize(self, req_id: int | str, params: dict[str, Any]) -> dict[str, Any]:
        version = str(params.get("protocolVersion", ""))
        if version not in SUPPORTED_VERSIONS:
            return jsonrpc.error_response(
                req_id, jsonrpc.INVALID_PARAMS,
                f"unsupported protocol version: {version}",
                data={"supported": list(SUPPORTED_VERSIONS)})
        session = McpSession(session_id=str(uuid.uuid4()), protocol_version=version,
                             client_info=dict(params.get("clientInfo", {})))
        with self._lock:
            self._sessions[session.session_id] = session
        return jsonrpc.result_response(req_id, {
            "protocolVersion": version,
            "capabilities": {"tools": {"listChanged": False}},
            "serverInfo": {"name": self.name, "version": "0.1.0"},
            "sessionId": session.session_id,
        })

    def _call_tool(self, req_id: int | str,
                   params: dict[str, Any]) -> tuple[dict[str, Any] | None, dict[str, Any] | None]:
        name = params.get("name")
        if not isinstance(name, str) or name not in self._tools:
            return None, jsonrpc.error_response(req_id, jsonrpc.INVALID_PARAMS,
                                                f"unknown tool: {name}")
        descriptor, fn = self._tools[name]
        arguments = params.get("arguments", {})
        violations = validate_arguments(descriptor.input_schema, arguments)
        if violations:
            result = ToolResult({"result": "invalid arguments: " + "; ".join(violations)},
                                is_error=True)
            return jsonrpc.result_response(req_id, result.to_dict()), None
        try:
            content = fn(arguments)
        except ToolExecutionError as exc:
            result = ToolResult({"result": str(exc)}, is_error=True)
            return jsonrpc.result_response(req_id, result.to_dict()), None
        except (UnknownNf, ValidationError, BackendFailure) as exc:
            result = ToolResult({"result": str(exc)}, is_error=True)
            return jsonrpc.result_response(req_id, result.to_dict()), None
        except (RuntimeError, OSError) as exc:
            # Backing SBI/runtime trouble surfaces as a diagnostic tool result.
            result = ToolResult({"result": f"backend failure: {exc}"}, is_error=True)
            return jsonrpc.result_response(req_id, result.to_dict()), None
        return jsonrpc.result_response(req_id, ToolResult(content).to_dict()), None

    def session_count(self) -> int:
        with self._lock:
            return len(self._sessions)
