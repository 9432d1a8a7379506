"""Reasoning backends: the deterministic planner and the external-model adapter.

A backend provides the three cognitive operations an agent needs — intent
interpretation, tool selection and result synthesis — plus configurable
artificial latency per operation so the workflow's timing can be calibrated
without a model in the loop.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

import httpx

from ..errors import (BackendUnavailable, MalformedModelReply, NoMatchingTool,
                      UnrecognizedIntent)
from ..mcp.schema import ToolDescriptor, ToolResult, validate_arguments
from .planner import Plan, PlanStep, StepKind, interpret_intent

STEP_TOOL_NAMES = {
    StepKind.INSPECT: "check_nf_status",
    StepKind.CONTROL: "control_nf",
    StepKind.LIST_SERVICES: "list_nf_services",
    StepKind.GET_PROFILE: "get_nf_profile",
    StepKind.UPDATE_CONFIG: "update_nf_config",
    StepKind.SCALE: "scale_nf",
}


@dataclass
class OperationDelays:
    """Artificial latency (seconds) injected per cognitive operation."""

    interpret: float = 0.0
    select_tool: float = 0.0
    summarize: float = 0.0


class ReasoningBackend:
    """Interface of the pluggable reasoning component.

    Implementations must be deterministic: identical inputs yield identical
    outputs. The public methods apply the configured delay, then defer to
    the _do_* hooks.
    """

    def __init__(self, delays: OperationDelays | None = None):
        self.delays = delays or OperationDelays()

    def interpret(self, prompt: str, nf_names: list[str]) -> Plan:
        self._pause(self.delays.interpret)
        return self._do_interpret(prompt, nf_names)

    def select_tool(self, step: PlanStep,
                    tools: list[ToolDescriptor]) -> tuple[str, dict[str, Any]]:
        self._pause(self.delays.select_tool)
        return self._do_select_tool(step, tools)

    def summarize(self, result: ToolResult, step: PlanStep) -> str:
        self._pause(self.delays.summarize)
        return self._do_summarize(result, step)

    @staticmethod
    def _pause(seconds: float) -> None:
        if seconds > 0:
            time.sleep(seconds)

    def _do_interpret(self, prompt: str, nf_names: list[str]) -> Plan:
        raise NotImplementedError

    def _do_select_tool(self, step: PlanStep,
                        tools: list[ToolDescriptor]) -> tuple[str, dict[str, Any]]:
        raise NotImplementedError

    def _do_summarize(self, result: ToolResult, step: PlanStep) -> str:
        raise NotImplementedError


def step_arguments(step: PlanStep) -> dict[str, Any]:
    if step.kind is StepKind.INSPECT or step.kind in (StepKind.LIST_SERVICES,
                                                      StepKind.GET_PROFILE):
        return {"nf_type": step.nf_type}
    if step.kind is StepKind.CONTROL:
        return {"nf_type": step.nf_type, "action": step.action.value}
    if step.kind is StepKind.UPDATE_CONFIG:
        return {"nf_type": step.nf_type, "key": step.key, "value": step.value}
    if step.kind is StepKind.SCALE:
        return {"nf_type": step.nf_type, "replicas": step.replicas}
    raise NoMatchingTool(f"step kind {step.kind} has no tool mapping")


class DeterministicBackend(ReasoningBackend):
    """Grammar planner plus exact-name tool selection; fully reproducible."""

    def _do_interpret(self, prompt: str, nf_names: list[str]) -> Plan:
        return interpret_intent(prompt, nf_names)

    def _do_select_tool(self, step: PlanStep,
                        tools: list[ToolDescriptor]) -> tuple[str, dict[str, Any]]:
        wanted = STEP_TOOL_NAMES.get(step.kind)
        descriptor = next((t for t in tools if t.name == wanted), None)
        if descriptor is None:
            raise NoMatchingTool(
                f"no listed tool matches step {step.kind.value} (wanted {wanted})")
        arguments = step_arguments(step)
        violations = validate_arguments(descriptor.input_schema, arguments)
        if violations:
            raise NoMatchingTool(
                f"tool {wanted} schema rejects step arguments: " + "; ".join(violations))
        return descriptor.name, arguments

    def _do_summarize(self, result: ToolResult, step: PlanStep) -> str:
        return result.result_text


@dataclass
class LlmAdapterConfig:
    endpoint: str                      # HTTP endpoint accepting prompt templates
    timeout: float = 60.0
    delays: OperationDelays = field(default_factory=OperationDelays)


class LlmBackendAdapter(ReasoningBackend):
    """Adapter for an external reasoning endpoint.

    Sends one JSON document per operation — {"operation": ..., "prompt": ...}
    — and expects {"text": ...} back, where text is a JSON plan for
    interpret, a JSON tool selection for select_tool, and plain text for
    summarize (the request/reply template is documented in the README).
    Unparseable replies raise MalformedModelReply; transport failures raise
    BackendUnavailable. Not used by any acceptance path.
    """

    def __init__(self, config: LlmAdapterConfig):
        super().__init__(config.delays)
        self.config = config
        self._http = httpx.Client(timeout=config.timeout)

    def close(self) -> None:
        self._http.close()

    def _ask(self, operation: str, prompt: str) -> str:
        try:
            response = self._http.post(self.config.endpoint,
                                       json={"operation": operation, "prompt": prompt})
        except httpx.TransportError as exc:
            raise BackendUnavailable(
                f"reasoning endpoint {self.config.endpoint} unreachable: {exc}") from exc
        if response.status_code != 200:
            raise BackendUnavailable(
                f"reasoning endpoint returned HTTP {response.status_code}")
        try:
            return str(response.json()["text"])
        except (ValueError, KeyError) as exc:
            raise MalformedModelReply(f"reply is not {{'text': ...}}: {exc}") from exc

    def _do_interpret(self, prompt: str, nf_names: list[str]) -> Plan:
        reply = self._ask("interpret", json.dumps(
            {"intent": prompt, "deployed_nfs": nf_names}))
        try:
            plan = Plan.from_dict(json.loads(reply))
            plan.validate()
            return plan
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedModelReply(f"plan reply unparseable: {exc}") from exc
        except UnrecognizedIntent:
            raise
        except Exception as exc:
            raise MalformedModelReply(f"plan reply invalid: {exc}") from exc

    def _do_select_tool(self, step: PlanStep,
                        tools: list[ToolDescriptor]) -> tuple[str, dict[str, Any]]:
        reply = self._ask("select_tool", json.dumps({
            "goal": step.to_dict(),
            "tools": [t.to_dict() for t in tools],
        }))
        try:
            doc = json.loads(reply)
            name = doc["tool"]
            arguments = doc.get("arguments", {})
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedModelReply(f"tool selection unparseable: {exc}") from exc
        descriptor = next((t for t in tools if t.name == name), None)
        if descriptor is None:
            raise NoMatchingTool(f"model selected unlisted tool {name!r}")
        violations = validate_arguments(descriptor.input_schema, arguments)
        if violations:
            raise NoMatchingTool(
                f"model arguments rejected by {name} schema: " + "; ".join(violations))
        return name, arguments

    def _do_summarize(self, result: ToolResult, step: PlanStep) -> str:
        return self._ask("summarize", json.dumps({
            "goal": step.to_dict(),
            "result": result.to_dict(),
        }))
