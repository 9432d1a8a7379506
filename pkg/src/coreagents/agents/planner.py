"""Deterministic intent grammar: natural-language prompts to plans.

The grammar is intentionally small and fully documented so plans are a
pure function of (prompt, deployed NF set):

* The prompt is split into clauses on ``and`` / ``;`` conjunctions.
* Each clause needs a verb from the lexicon: check/inspect/status/query/
  show -> inspect; start/stop/restart -> lifecycle control; a clause
  mentioning services -> service listing; profile -> profile inspection;
  set/update <key> to <value> -> config update; scale ... to N -> scaling.
* The target NF is matched case-insensitively against the deployed set;
  the pronoun "it" resolves to the NF of the previous clause.
* A trailing ``if ... inactive`` / ``if ... active`` turns the clause into
  a conditional wrapped around the inner step. Conditionals evaluate the
  outcome of an earlier inspection, so when no earlier clause inspects the
  same NF an inspection step is inserted first.

Anything outside the grammar raises UnrecognizedIntent; a clause whose
apparent target is not deployed raises UnknownNf.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from ..core.types import LifecycleAction
from ..errors import EmptyIntent, UnknownNf, UnrecognizedIntent


class StepKind(str, Enum):
    INSPECT = "inspect"
    CONTROL = "control"
    LIST_SERVICES = "list_services"
    GET_PROFILE = "get_profile"
    UPDATE_CONFIG = "update_config"
    SCALE = "scale"
    CONDITIONAL = "conditional"


class Predicate(str, Enum):
    IF_INACTIVE = "if_inactive"
    IF_ACTIVE = "if_active"


@dataclass
class PlanStep:
    kind: StepKind
    nf_type: str = ""
    action: LifecycleAction | None = None
    key: str = ""
    value: str = ""
    replicas: int | None = None
    predicate: Predicate | None = None
    inner: "PlanStep | None" = None

    def to_dict(self) -> dict:
        if self.kind is StepKind.CONDITIONAL:
            return {"kind": self.kind.value, "predicate": self.predicate.value,
                    "inner": self.inner.to_dict()}
        doc: dict = {"kind": self.kind.value, "nf": self.nf_type}
        if self.action is not None:
            doc["action"] = self.action.value
        if self.kind is StepKind.UPDATE_CONFIG:
            doc.update(key=self.key, value=self.value)
        if self.replicas is not None:
            doc["replicas"] = self.replicas
        return doc

    @classmethod
    def from_dict(cls, data: dict) -> "PlanStep":
        kind = StepKind(data["kind"])
        if kind is StepKind.CONDITIONAL:
            return cls(kind=kind, predicate=Predicate(data["predicate"]),
                       inner=cls.from_dict(data["inner"]))
        action = LifecycleAction(data["action"]) if "action" in data else None
        return cls(kind=kind, nf_type=str(data.get("nf", "")).upper(), action=action,
                   key=data.get("key", ""), value=data.get("value", ""),
                   replicas=data.get("replicas"))


@dataclass
class Plan:
    steps: list[PlanStep] = field(default_factory=list)

    def validate(self) -> None:
        if not self.steps:
            raise UnrecognizedIntent("plan has no steps")
        inspected: set[str] = set()
        for step in self.steps:
            if step.kind is StepKind.CONDITIONAL:
                if step.inner is None or step.predicate is None:
                    raise UnrecognizedIntent("conditional step without inner step")
                if not inspected:
                    raise UnrecognizedIntent(
                        "conditional step has no earlier inspection to evaluate")
            elif step.kind is StepKind.INSPECT:
                inspected.add(step.nf_type)

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, data: dict) -> "Plan":
        return cls(steps=[PlanStep.from_dict(s) for s in data.get("steps", [])])


INSPECT_VERBS = ("check", "inspect", "status", "query", "show", "verify")
CONTROL_VERBS = {"start": LifecycleAction.START, "stop": LifecycleAction.STOP,
                 "restart": LifecycleAction.RESTART}

_STOPWORDS = {
    "the", "a", "an", "of", "to", "is", "are", "it", "its", "if", "and", "then",
    "please", "now", "currently", "operational", "status", "state", "whether",
    "on", "in", "for", "with", "that", "this", "all", "config", "configuration",
    "replica", "replicas", "service", "services", "profile", "function",
    "network", "up", "down", "active", "inactive", "running", "stopped",
    "not", "registered", "set", "update", "scale", "check", "inspect", "query",
    "show", "verify", "start", "stop", "restart", "get", "list", "what",
}

_CLAUSE_SPLIT = re.compile(r"\s*(?:;|,?\s+and\s+)\s*", re.IGNORECASE)
_CONDITION = re.compile(r"\bif\b(?P<cond>[^.;]*)", re.IGNORECASE)
_SET_KV = re.compile(r"\bset\s+(?P<key>[\w.\-]+)\s+to\s+(?P<value>[^\s.;,]+)",
                     re.IGNORECASE)
_SCALE_N = re.compile(r"\bto\s+(?P<n>\d+)\b", re.IGNORECASE)


def _words(text: str) -> list[str]:
    # Dotted config keys are picked out by _SET_KV on the raw clause; word
    # tokens must not swallow sentence punctuation.
    return re.findall(r"[\w\-]+", text.lower())


def interpret_intent(prompt: str, nf_names: list[str]) -> Plan:
    """Map an operator prompt to a Plan via the documented grammar."""
    if not prompt or not prompt.strip():
        raise EmptyIntent("intent text is empty")
    deployed = {name.upper() for name in nf_names}
    clauses = [c for c in _CLAUSE_SPLIT.split(prompt.strip()) if c.strip()]
    steps: list[PlanStep] = []
    last_nf = ""
    for clause in clauses:
        condition: Predicate | None = None
        match = _CONDITION.search(clause)
        head = clause
        if match:
            cond_text = match.group("cond").lower()
            head = clause[: match.start()]
            if "inactive" in cond_text or "not active" in cond_text or "down" in cond_text:
                condition = Predicate.IF_INACTIVE
            elif "active" in cond_text or "running" in cond_text or "up" in cond_text:
                condition = Predicate.IF_ACTIVE
            else:
                raise UnrecognizedIntent(f"cannot read condition: {cond_text.strip()!r}")
        step = _parse_clause(head, deployed, last_nf)
        last_nf = step.nf_type
        if condition is not None:
            if not any(s.kind is StepKind.INSPECT and s.nf_type == step.nf_type
                       for s in steps):
                steps.append(PlanStep(kind=StepKind.INSPECT, nf_type=step.nf_type))
            steps.append(PlanStep(kind=StepKind.CONDITIONAL, predicate=condition,
                                  inner=step))
        else:
            steps.append(step)
    plan = Plan(steps=steps)
    plan.validate()
    return plan


def _parse_clause(clause: str, deployed: set[str], last_nf: str) -> PlanStep:
    words = _words(clause)
    if not words:
        raise UnrecognizedIntent(f"empty clause in intent: {clause!r}")
    nf = _find_nf(words, deployed, last_nf, clause)

    control = next((w for w in words if w in CONTROL_VERBS), None)
    if control is not None:
        return PlanStep(kind=StepKind.CONTROL, nf_type=nf,
                        action=CONTROL_VERBS[control])
    if "scale" in words:
        match = _SCALE_N.search(clause)
        if not match:
            raise UnrecognizedIntent(f"scale clause without a replica count: {clause!r}")
        return PlanStep(kind=StepKind.SCALE, nf_type=nf, replicas=int(match.group("n")))
    kv = _SET_KV.search(clause)
    if kv is not None:
        return PlanStep(kind=StepKind.UPDATE_CONFIG, nf_type=nf,
                        key=kv.group("key"), value=kv.group("value"))
    if "service" in words or "services" in words:
        return PlanStep(kind=StepKind.LIST_SERVICES, nf_type=nf)
    if "profile" in words:
        return PlanStep(kind=StepKind.GET_PROFILE, nf_type=nf)
    if any(w in words for w in INSPECT_VERBS):
        return PlanStep(kind=StepKind.INSPECT, nf_type=nf)
    raise UnrecognizedIntent(f"no grammar rule matches clause: {clause.strip()!r}")


def _find_nf(words: list[str], deployed: set[str], last_nf: str, clause: str) -> str:
    for word in words:
        if word.upper() in deployed:
            return word.upper()
    if "it" in words and last_nf:
        return last_nf
    candidates = [w for w in words
                  if w not in _STOPWORDS and w.isalpha() and w not in CONTROL_VERBS]
    if candidates:
        raise UnknownNf(f"unknown NF type: {candidates[0].upper()!r}")
    raise UnrecognizedIntent(f"clause names no network function: {clause.strip()!r}")


# -- delegation text templates ---------------------------------------------------
# The host composes sub-agent tasks in the same restricted language the
# grammar reads, so delegated text re-parses to the identical step.

def step_text(step: PlanStep) -> str:
    if step.kind is StepKind.INSPECT:
        return f"Check the operational status of the {step.nf_type}."
    if step.kind is StepKind.CONTROL:
        return f"{step.action.value.capitalize()} the {step.nf_type}."
    if step.kind is StepKind.LIST_SERVICES:
        return f"List the services of the {step.nf_type}."
    if step.kind is StepKind.GET_PROFILE:
        return f"Show the profile of the {step.nf_type}."
    if step.kind is StepKind.UPDATE_CONFIG:
        return f"Set {step.key} to {step.value} on the {step.nf_type}."
    if step.kind is StepKind.SCALE:
        return f"Scale the {step.nf_type} to {step.replicas} replicas."
    raise ValueError(f"no delegation text for step kind {step.kind}")


# -- inspection outcome evaluation ------------------------------------------------

class Activity(str, Enum):
    ACTIVE = "active"
    INACTIVE = "inactive"
    UNKNOWN = "unknown"


def read_activity(outcome_text: str) -> Activity:
    """Classify an inspection outcome by its status-contract wording."""
    lowered = outcome_text.lower()
    if "is not active" in lowered or "inactive" in lowered:
        return Activity.INACTIVE
    if "is active" in lowered:
        return Activity.ACTIVE
    return Activity.UNKNOWN


def predicate_holds(predicate: Predicate, outcome_text: str) -> bool:
    activity = read_activity(outcome_text)
    if predicate is Predicate.IF_INACTIVE:
        return activity is Activity.INACTIVE
    return activity is Activity.ACTIVE
