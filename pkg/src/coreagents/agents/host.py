"""Host agent: intent interpretation, delegation planning, orchestration.

The host receives operator prompts over A2A, interprets them into a plan,
retrieves the sub-agents' cards, and walks the plan sequentially: inspection
goals go to the Monitoring Agent, control goals to the Execution Agent, and
conditional steps run their inner action only when the recorded inspection
outcome satisfies the predicate. The host never calls tools or the SBI
itself.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

from ..a2a.client import A2AClient
from ..a2a.server import A2AServer
from ..a2a.types import AgentCard, AgentSkill
from ..errors import DelegationFailure, TaskFailed, Unreachable
from ..trace.events import TraceCollector
from .backend import ReasoningBackend
from .planner import (Plan, PlanStep, StepKind, predicate_holds, read_activity,
                      step_text, Activity)

logger = logging.getLogger("coreagents.host")

MONITORING_KINDS = (StepKind.INSPECT, StepKind.LIST_SERVICES, StepKind.GET_PROFILE)

DELEGATION_PURPOSES = {
    StepKind.INSPECT: "Delegate NF status inspection",
    StepKind.LIST_SERVICES: "Delegate NF service listing",
    StepKind.GET_PROFILE: "Delegate NF profile inspection",
    StepKind.CONTROL: "Delegate lifecycle control action",
    StepKind.UPDATE_CONFIG: "Delegate NF configuration update",
    StepKind.SCALE: "Delegate NF scaling action",
}


@dataclass
class StepRecord:
    step: PlanStep
    outcome: str
    skipped: bool = False


def host_card(name: str = "Host Agent") -> AgentCard:
    return AgentCard(
        name=name,
        description="Entry point for operator intents; delegates to specialized agents",
        url="http://localhost:8001",
        skills=[AgentSkill("intent-orchestration",
                           "Interpret operator intents and orchestrate inspection "
                           "and control delegations")],
    )


class HostAgent:
    def __init__(self, card: AgentCard, backend: ReasoningBackend,
                 monitoring_endpoint: str, execution_endpoint: str,
                 nf_names: list[str], collector: TraceCollector | None = None,
                 host: str = "127.0.0.1", port: int = 0):
        self.backend = backend
        self.nf_names = nf_names
        self.monitoring_endpoint = monitoring_endpoint
        self.execution_endpoint = execution_endpoint
        self.handover = 0.0  # per-delegation result integration delay
        self.client = A2AClient(collector=collector, source=card.name)
        self.server = A2AServer(card, self.handle_prompt, host=host, port=port,
                                collector=collector,
                                inbound_purpose="Submit user prompt to Host Agent",
                                response_purpose="Return final response to user")

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
        self.client.close()

    # -- orchestration -----------------------------------------------------------

    def handle_prompt(self, text: str) -> str:
        plan = self.backend.interpret(text, self.nf_names)
        cards = self._fetch_cards()
        records: list[StepRecord] = []
        inspections: dict[str, str] = {}
        for step in plan.steps:
            if step.kind is StepKind.CONDITIONAL:
                inner = step.inner
                reference = inspections.get(inner.nf_type) or self._last_outcome(records)
                if not predicate_holds(step.predicate, reference):
                    records.append(StepRecord(inner, reference, skipped=True))
                    continue
                step = inner
            outcome = self._delegate(step, cards)
            records.append(StepRecord(step, outcome))
            if step.kind is StepKind.INSPECT:
                inspections[step.nf_type] = outcome
        return self._synthesize(records)

    def _fetch_cards(self) -> dict[str, AgentCard]:
        cards = {}
        for role, endpoint in (("monitoring", self.monitoring_endpoint),
                               ("execution", self.execution_endpoint)):
            cards[role] = self.client.fetch_agent_card(
                endpoint, destination=f"{role.capitalize()} Agent",
                purpose=f"Retrieve {role} agent card")
        return cards

    def _delegate(self, step: PlanStep, cards: dict[str, AgentCard]) -> str:
        role = "monitoring" if step.kind in MONITORING_KINDS else "execution"
        card = cards[role]
        try:
            task = self.client.send_message(
                card.url, step_text(step), destination=card.name,
                purpose=DELEGATION_PURPOSES[step.kind],
                response_purpose=f"Return outcome from {card.name}")
        except (TaskFailed, Unreachable) as exc:
            raise DelegationFailure(f"{card.name} failed: {exc}") from exc
        if self.handover > 0:
            time.sleep(self.handover)
        return task.message.text

    @staticmethod
    def _last_outcome(records: list[StepRecord]) -> str:
        for record in reversed(records):
            if record.step.kind is StepKind.INSPECT and not record.skipped:
                return record.outcome
        return ""

    @staticmethod
    def _synthesize(records: list[StepRecord]) -> str:
        # Inspection followed by a conditional start reads as one sentence;
        # everything else is reported verbatim in step order.
        parts: list[str] = []
        index = 0
        while index < len(records):
            record = records[index]
            nxt = records[index + 1] if index + 1 < len(records) else None
            if (record.step.kind is StepKind.INSPECT and nxt is not None
                    and nxt.step.kind is StepKind.CONTROL):
                nf = record.step.nf_type
                active = read_activity(record.outcome)
                if nxt.skipped and active is Activity.ACTIVE:
                    parts.append(f"The {nf} is active (registered in the NRF); "
                                 "no action was needed.")
                elif not nxt.skipped and active is Activity.INACTIVE:
                    parts.append(f"The {nf} was inactive and has been "
                                 f"{_did(nxt.step)}.")
                else:
                    parts.append(record.outcome)
                    parts.append(nxt.outcome if not nxt.skipped
                                 else f"No {nxt.step.kind.value} action was needed.")
                index += 2
                continue
            parts.append(record.outcome if not record.skipped
                         else f"No action was needed for the {record.step.nf_type}.")
            index += 1
        return " ".join(p for p in parts if p)


def _did(step: PlanStep) -> str:
    return {"start": "started", "stop": "stopped",
            "restart": "restarted"}[step.action.value]
