"""Server side of the A2A protocol: one endpoint per agent.

POST / carries JSON-RPC ``message/send``; GET /.well-known/agent.json
serves the agent card. Requests from in-process instrumented clients carry
an ``x-traced`` header and are recorded on their side; anything else (the
operator console, plain curl) gets its request/response pair recorded here
so the trace stays complete.
"""

from __future__ import annotations

import logging
from typing import Callable

from .. import jsonrpc
from ..httpbase import HttpEndpoint, HttpRequest, HttpResponse, cors_preflight
from ..trace.events import (Direction, Interface, NullCollector, Op,
                            TraceCollector)
from .types import A2AMessage, A2ATask, AgentCard, Role

logger = logging.getLogger("coreagents.a2a")

CARD_PATH = "/.well-known/agent.json"

TaskHandler = Callable[[str], str]


class A2AServer:
    def __init__(self, card: AgentCard, handler: TaskHandler,
                 host: str = "127.0.0.1", port: int = 0,
                 collector: TraceCollector | None = None,
                 inbound_purpose: str = "Deliver A2A message",
                 response_purpose: str = "Return final response"):
        card.validate()
        self.card = card
        self.handler = handler
        self.host = host
        self.collector = collector if collector is not None else NullCollector()
        self.inbound_purpose = inbound_purpose
        self.response_purpose = response_purpose
        self._requested_port = port
        self._endpoint: HttpEndpoint | None = None

    @property
    def port(self) -> int:
        return self._endpoint.port if self._endpoint else self._requested_port

    @property
    def url(self) -> str:
        # Loopback endpoints advertise as localhost, the form peers dial.
        host = "localhost" if self.host == "127.0.0.1" else self.host
        return f"http://{host}:{self.port}"

    def start(self) -> None:
        if self._endpoint is None:
            self._endpoint = HttpEndpoint(self.host, self._requested_port,
                                          self._http_handler, f"a2a-{self.card.name}")
            self._endpoint.start()
            # The served card must advertise the endpoint it is reachable at.
            self.card.url = self.url

    def stop(self) -> None:
        if self._endpoint is not None:
            self._endpoint.stop()
            self._endpoint = None

    # -- request handling --------------------------------------------------------

    def _http_handler(self, request: HttpRequest) -> HttpResponse:
        if request.method == "OPTIONS":
            return cors_preflight()
        path = request.target.split("?", 1)[0]
        if request.method == "GET" and path == CARD_PATH:
            import json
            return HttpResponse(200, [("content-type", "application/json")],
                                json.dumps(self.card.to_dict()).encode())
        if request.method == "POST" and path == "/":
            traced_by_client = "x-traced" in request.headers
            envelope = self.handle_payload(request.body,
                                           record_here=not traced_by_client)
            return HttpResponse(200, [("content-type", "application/json")],
                                jsonrpc.dumps(envelope))
        return HttpResponse(404, [("content-type", "text/plain")], b"not found")

    def handle_payload(self, raw: bytes, record_here: bool = False) -> dict:
        env, error = jsonrpc.parse_payload(raw)
        if error is not None:
            return error
        req_id = env["id"]
        if env["method"] != "message/send":
            return jsonrpc.error_response(req_id, jsonrpc.METHOD_NOT_FOUND,
                                          f"method not found: {env['method']}")
        params = env.get("params", {})
        try:
            message = A2AMessage.from_dict(params.get("message"))
            if message.role is not Role.USER:
                raise ValueError('client-to-server messages must carry role "user"')
        except ValueError as exc:
            return jsonrpc.error_response(req_id, jsonrpc.INVALID_PARAMS, str(exc))
        corr = str(req_id)
        if record_here:
            self.collector.record(Interface.A2A, Direction.REQUEST, "User",
                                  self.card.name, self.inbound_purpose,
                                  Op.MESSAGE_SEND, corr)
        try:
            outcome = self.handler(message.text)
            task = A2ATask.completed(outcome)
        except Exception as exc:
            logger.debug("task handler failed: %s", exc)
            task = A2ATask.failed(f"{type(exc).__name__}: {exc}")
        if record_here:
            self.collector.record(Interface.A2A, Direction.RESPONSE, self.card.name,
                                  "User", self.response_purpose, Op.MESSAGE_SEND, corr)
        return jsonrpc.result_response(req_id, task.to_dict())
