"""Monitoring and Execution agents: MCP clients bound to one tool server each.

A sub-agent receives a delegated task over A2A, re-reads it with its own
backend, discovers the server's tools, selects and invokes one, and
synthesizes a textual outcome. Tool discovery always precedes the first
invocation, and each agent only ever talks to its own MCP endpoint.
"""

from __future__ import annotations

import time

from ..a2a.server import A2AServer
from ..a2a.types import AgentCard, AgentSkill
from ..errors import ToolCallFailed, UnrecognizedIntent
from ..mcp.client import McpClient
from ..mcp.schema import ToolResult
from ..trace.events import TraceCollector
from .backend import ReasoningBackend
from .planner import PlanStep, StepKind, read_activity, Activity

_PAST = {"start": "started", "stop": "stopped", "restart": "restarted"}

LIST_PURPOSES = {
    "monitoring": "Discover available inspection tools",
    "execution": "Discover lifecycle control tools",
}

CALL_PURPOSES = {
    StepKind.INSPECT: "Invoke NF status inspection tool",
    StepKind.LIST_SERVICES: "Invoke NF service listing tool",
    StepKind.GET_PROFILE: "Invoke NF profile inspection tool",
    StepKind.CONTROL: "Invoke NF lifecycle control tool",
    StepKind.UPDATE_CONFIG: "Invoke NF configuration update tool",
    StepKind.SCALE: "Invoke NF scaling tool",
}


def _response_purpose(step: PlanStep):
    def fmt(result: ToolResult) -> str:
        if result.is_error:
            return "Return tool error"
        if step.kind is StepKind.INSPECT:
            word = "inactive" if read_activity(result.result_text) is Activity.INACTIVE \
                else "active"
            return f"Return inspection result ({step.nf_type} {word})"
        if step.kind is StepKind.CONTROL:
            return (f"Return lifecycle execution result "
                    f"({step.nf_type} {_PAST[step.action.value]})")
        return {
            StepKind.LIST_SERVICES: "Return service listing result",
            StepKind.GET_PROFILE: "Return profile inspection result",
            StepKind.UPDATE_CONFIG: "Return configuration update result",
            StepKind.SCALE: "Return scaling result",
        }.get(step.kind, "Return tool result")
    return fmt


class SubAgent:
    """One specialized agent: an A2A endpoint wrapping an MCP client."""

    def __init__(self, role: str, card: AgentCard, mcp_url: str,
                 mcp_server_name: str, backend: ReasoningBackend,
                 nf_names: list[str], collector: TraceCollector | None = None,
                 host: str = "127.0.0.1", port: int = 0):
        self.role = role
        self.backend = backend
        self.nf_names = nf_names
        self.overhead = 0.0  # per-task framework residual, set by the profile
        self.mcp = McpClient(mcp_url, client_name=card.name, collector=collector,
                             source=card.name, server_name=mcp_server_name)
        self.server = A2AServer(card, self.handle_task, host=host, port=port,
                                collector=collector,
                                inbound_purpose=f"Deliver task to {card.name}",
                                response_purpose=f"Return outcome from {card.name}")

    @property
    def card(self) -> AgentCard:
        return self.server.card

    @property
    def url(self) -> str:
        return self.server.url

    def start(self) -> None:
        self.server.start()

    def stop(self) -> None:
        self.server.stop()
        self.mcp.close()

    def handle_task(self, text: str) -> str:
        step = self._single_step(text)
        tools = self.mcp.list_tools(purpose=LIST_PURPOSES[self.role])
        name, arguments = self.backend.select_tool(step, tools)
        result = self.mcp.call_tool(name, arguments,
                                    purpose=CALL_PURPOSES[step.kind],
                                    response_purpose=_response_purpose(step))
        if result.is_error:
            raise ToolCallFailed(result.result_text)
        outcome = self.backend.summarize(result, step)
        if self.overhead > 0:
            time.sleep(self.overhead)
        return outcome

    def _single_step(self, text: str) -> PlanStep:
        plan = self.backend.interpret(text, self.nf_names)
        if len(plan.steps) != 1 or plan.steps[0].kind is StepKind.CONDITIONAL:
            raise UnrecognizedIntent(
                f"{self.card.name} expects a single atomic goal, got: {text!r}")
        return plan.steps[0]


def monitoring_card(name: str = "Monitoring Agent") -> AgentCard:
    return AgentCard(
        name=name,
        description="Monitors core network functions through the monitoring tool server",
        url="http://localhost:8002",
        skills=[
            AgentSkill("nf-status-inspection",
                       "NF status inspection: is an NF registered in the NRF"),
            AgentSkill("nf-service-listing", "List the SBI services an NF registered"),
            AgentSkill("nf-profile-inspection", "Inspect an NF's registration profile"),
        ],
    )


def execution_card(name: str = "Execution Agent") -> AgentCard:
    return AgentCard(
        name=name,
        description="Executes control actions on core network functions",
        url="http://localhost:8003",
        skills=[
            AgentSkill("nf-lifecycle-control", "Start, stop or restart an NF"),
            AgentSkill("nf-config-update", "Update one configuration key of an NF"),
            AgentSkill("nf-scaling", "Scale an NF to a replica count"),
        ],
    )
