"""Client side of A2A: card retrieval and synchronous message/send."""

from __future__ import annotations

import json
import uuid

import httpx

from .. import jsonrpc
from ..errors import JsonRpcRemoteError, MalformedCard, TaskFailed, Unreachable
from ..trace.events import (Direction, Interface, NullCollector, Op,
                            TraceCollector)
from .server import CARD_PATH
from .types import A2AMessage, A2ATask, AgentCard, Role, TaskState


class A2AClient:
    """Blocking A2A client; safe to share across threads of control."""

    def __init__(self, collector: TraceCollector | None = None,
                 source: str = "User"):
        self.collector = collector if collector is not None else NullCollector()
        self.source = source
        self._http = httpx.Client(timeout=120.0)

    def close(self) -> None:
        self._http.close()

    def fetch_agent_card(self, endpoint: str, destination: str = "",
                         purpose: str = "Retrieve agent card") -> AgentCard:
        url = endpoint.rstrip("/") + CARD_PATH
        corr = str(uuid.uuid4())
        dest = destination or endpoint
        self.collector.record(Interface.A2A, Direction.REQUEST, self.source,
                              dest, purpose, Op.AGENT_CARD, corr)
        try:
            response = self._http.get(url)
        except httpx.TransportError as exc:
            raise Unreachable(f"agent endpoint {endpoint} unreachable: {exc}") from exc
        self.collector.record(Interface.A2A, Direction.RESPONSE, dest,
                              self.source, "Return agent card", Op.AGENT_CARD, corr)
        if response.status_code != 200:
            raise MalformedCard(f"card fetch returned HTTP {response.status_code}")
        try:
            return AgentCard.from_dict(response.json())
        except ValueError as exc:
            raise MalformedCard(f"card is not valid JSON: {exc}") from exc

    def send_message(self, endpoint: str, text: str, destination: str = "",
                     purpose: str = "Send A2A message",
                     response_purpose: str = "Return task result") -> A2ATask:
        """Delegate text to the agent at endpoint and wait for its task.

        Raises TaskFailed when the remote reports state "failed" and
        JsonRpcRemoteError for protocol-level error responses.
        """
        message = A2AMessage(Role.USER, text)
        request_id = str(uuid.uuid4())
        envelope = jsonrpc.request("message/send", request_id,
                                   {"message": message.to_dict()})
        dest = destination or endpoint
        self.collector.record(Interface.A2A, Direction.REQUEST, self.source,
                              dest, purpose, Op.MESSAGE_SEND, request_id)
        try:
            response = self._http.post(
                endpoint if endpoint.endswith("/") else endpoint + "/",
                content=jsonrpc.dumps(envelope),
                headers={"content-type": "application/json", "x-traced": "1"})
        except httpx.TransportError as exc:
            raise Unreachable(f"agent endpoint {endpoint} unreachable: {exc}") from exc
        self.collector.record(Interface.A2A, Direction.RESPONSE, dest,
                              self.source, response_purpose, Op.MESSAGE_SEND,
                              request_id)
        reply = json.loads(response.content)
        if reply.get("id") != request_id:
            raise JsonRpcRemoteError(jsonrpc.INTERNAL_ERROR,
                                     f"response id {reply.get('id')!r} does not echo request")
        if "error" in reply:
            error = reply["error"]
            raise JsonRpcRemoteError(int(error.get("code", 0)),
                                     str(error.get("message", "")))
        task = A2ATask.from_dict(reply["result"])
        if task.state is TaskState.FAILED:
            raise TaskFailed(task.message.text)
        return task
