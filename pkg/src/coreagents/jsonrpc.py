"""JSON-RPC 2.0 envelope helpers shared by the MCP and A2A layers.

Both protocols exchange single request/response pairs; batching and
notifications are out of scope.
"""

from __future__ import annotations

import json
from typing import Any

JSONRPC_VERSION = "2.0"

PARSE_ERROR = -32700
INVALID_REQUEST = -32600
METHOD_NOT_FOUND = -32601
INVALID_PARAMS = -32602
INTERNAL_ERROR = -32603
SESSION_NOT_INITIALIZED = -32000


def request(method: str, req_id: int | str, params: dict[str, Any] | None = None) -> dict[str, Any]:
    env: dict[str, Any] = {"jsonrpc": JSONRPC_VERSION, "method": method, "id": req_id}
    if params is not None:
        env["params"] = params
    return env


def result_response(req_id: int | str, result: Any) -> dict[str, Any]:
    return {"jsonrpc": JSONRPC_VERSION, "id": req_id, "result": result}


def error_response(req_id: int | str | None, code: int, message: str,
                   data: Any = None) -> dict[str, Any]:
    error: dict[str, Any] = {"code": code, "message": message}
    if data is not None:
        error["data"] = data
    return {"jsonrpc": JSONRPC_VERSION, "id": req_id, "error": error}


def validate_request(env: Any) -> str | None:
    """Check a decoded envelope against the JSON-RPC 2.0 request shape.

    Returns None when valid, otherwise a human-readable reason. The id is
    required (notifications are not part of either protocol here) and must
    be a string or a number; the version field must be exactly "2.0".
    """
    if not isinstance(env, dict):
        return "request body is not a JSON object"
    if env.get("jsonrpc") != JSONRPC_VERSION:
        return 'jsonrpc field must be exactly "2.0"'
    if not isinstance(env.get("method"), str) or not env["method"]:
        return "method must be a non-empty string"
    if "id" not in env or isinstance(env["id"], (bool, dict, list)) or env["id"] is None:
        return "id must be a string or number"
    if "params" in env and not isinstance(env["params"], dict):
        return "params must be an object"
    return None


def parse_payload(raw: bytes | str) -> tuple[dict[str, Any] | None, dict[str, Any] | None]:
    """Decode raw bytes into an envelope.

    Returns (envelope, None) on success or (None, error_response) when the
    payload is unparseable or structurally invalid.
    """
    try:
        env = json.loads(raw)
    except (ValueError, UnicodeDecodeError):
        return None, error_response(None, PARSE_ERROR, "parse error: invalid JSON")
    reason = validate_request(env)
    if reason is not None:
        req_id = env.get("id") if isinstance(env, dict) else None
        if isinstance(req_id, (bool, dict, list)):
            req_id = None
        return None, error_response(req_id, INVALID_REQUEST, f"invalid request: {reason}")
    return env, None


def dumps(env: dict[str, Any]) -> bytes:
    """Compact serialization used on the wire (no spaces, UTF-8)."""
    return json.dumps(env, separators=(",", ":")).encode("utf-8")
