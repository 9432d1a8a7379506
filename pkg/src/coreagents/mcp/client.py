"""MCP client embedded in the sub-agents.

Initializes a session lazily, caches it for later tasks, and records every
tools/list and tools/call exchange on the trace collector.
"""

from __future__ import annotations

import json
import uuid
from typing import Any, Callable

import httpx

from .. import jsonrpc
from ..errors import JsonRpcRemoteError, Unreachable, VersionMismatch
from ..trace.events import (Direction, Interface, NullCollector, Op,
                            TraceCollector)
from .schema import ToolDescriptor, ToolResult
from .server import PROTOCOL_VERSION


def parse_sse_message(body: bytes) -> bytes:
    """Extract the JSON payload from a single-message event stream."""
    data_lines = []
    for line in body.decode("utf-8").splitlines():
        if line.startswith("data:"):
            data_lines.append(line[5:].lstrip())
    return "\n".join(data_lines).encode("utf-8")


class McpClient:
    def __init__(self, url: str, client_name: str = "coreagents",
                 collector: TraceCollector | None = None,
                 source: str = "agent", server_name: str = "MCP Server",
                 protocol_version: str = PROTOCOL_VERSION):
        self.url = url
        self.client_name = client_name
        self.collector = collector if collector is not None else NullCollector()
        self.source = source
        self.server_name = server_name
        self.protocol_version = protocol_version
        self.session_id: str | None = None
        self._next_id = 0
        self._http = httpx.Client(timeout=30.0)

    def close(self) -> None:
        self._http.close()

    # -- wire helpers ------------------------------------------------------------

    def _post(self, envelope: dict[str, Any]) -> dict[str, Any]:
        headers = {"content-type": "application/json",
                   "accept": "application/json, text/event-stream"}
        if self.session_id:
            headers["mcp-session-id"] = self.session_id
        try:
            response = self._http.post(self.url, content=jsonrpc.dumps(envelope),
                                       headers=headers)
        except httpx.TransportError as exc:
            raise Unreachable(f"MCP endpoint {self.url} unreachable: {exc}") from exc
        body = response.content
        if response.headers.get("content-type", "").startswith("text/event-stream"):
            body = parse_sse_message(body)
        return json.loads(body)

    def _rpc(self, method: str, params: dict[str, Any] | None,
             record: tuple[Op, str, str] | None = None) -> Any:
        """One request/response exchange; optionally traced as (op, req, resp)."""
        self._next_id += 1
        envelope = jsonrpc.request(method, self._next_id, params)
        corr = str(uuid.uuid4())
        if record is not None:
            op, purpose, _ = record
            self.collector.record(Interface.MCP, Direction.REQUEST, self.source,
                                  self.server_name, purpose, op, corr)
        reply = self._post(envelope)
        if record is not None:
            op, _, response_purpose = record
            self.collector.record(Interface.MCP, Direction.RESPONSE, self.server_name,
                                  self.source, response_purpose, op, corr)
        if reply.get("id") != envelope["id"]:
            raise JsonRpcRemoteError(jsonrpc.INTERNAL_ERROR,
                                     f"response id {reply.get('id')!r} does not echo request")
        if "error" in reply:
            error = reply["error"]
            message = str(error.get("message", ""))
            if "unsupported protocol version" in message:
                raise VersionMismatch(message)
            raise JsonRpcRemoteError(int(error.get("code", 0)), message)
        return reply.get("result")

    # -- protocol operations -------------------------------------------------------

    def initialize(self) -> str:
        """Open a fresh session; returns its id."""
        corr = str(uuid.uuid4())
        self.collector.record(Interface.MCP, Direction.REQUEST, self.source,
                              self.server_name, "Initialize MCP session",
                              Op.INITIALIZE, corr)
        result = self._rpc("initialize", {
            "protocolVersion": self.protocol_version,
            "clientInfo": {"name": self.client_name, "version": "0.1.0"},
            "capabilities": {},
        })
        self.collector.record(Interface.MCP, Direction.RESPONSE, self.server_name,
                              self.source, "MCP session established",
                              Op.INITIALIZE, corr)
        self.session_id = result["sessionId"]
        return self.session_id

    def ensure_session(self) -> str:
        if self.session_id is None:
            return self.initialize()
        return self.session_id

    def list_tools(self, purpose: str = "Discover available tools",
                   response_purpose: str = "Return tool listing") -> list[ToolDescriptor]:
        self.ensure_session()
        result = self._rpc("tools/list", None,
                           record=(Op.TOOLS_LIST, purpose, response_purpose))
        return [ToolDescriptor.from_dict(t) for t in result.get("tools", [])]

    def call_tool(self, name: str, arguments: dict[str, Any],
                  purpose: str = "Invoke tool",
                  response_purpose: str | Callable[[ToolResult], str] = "Return tool result",
                  ) -> ToolResult:
        self.ensure_session()
        self._next_id += 1
        envelope = jsonrpc.request("tools/call", self._next_id,
                                   {"name": name, "arguments": arguments})
        corr = str(uuid.uuid4())
        self.collector.record(Interface.MCP, Direction.REQUEST, self.source,
                              self.server_name, purpose, Op.TOOLS_CALL, corr)
        reply = self._post(envelope)
        if "error" in reply:
            # Record the response before surfacing the protocol failure.
            self.collector.record(Interface.MCP, Direction.RESPONSE, self.server_name,
                                  self.source, "Return tool error", Op.TOOLS_CALL, corr)
            error = reply["error"]
            raise JsonRpcRemoteError(int(error.get("code", 0)),
                                     str(error.get("message", "")))
        result = ToolResult.from_dict(reply.get("result", {}))
        if callable(response_purpose):
            response_purpose = response_purpose(result)
        self.collector.record(Interface.MCP, Direction.RESPONSE, self.server_name,
                              self.source, response_purpose, Op.TOOLS_CALL, corr)
        if reply.get("id") != envelope["id"]:
            raise JsonRpcRemoteError(jsonrpc.INTERNAL_ERROR,
                                     f"response id {reply.get('id')!r} does not echo request")
        return result
