"""Scripted scenarios: preconditions, repeated prompts, collected traces."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import yaml

from .core.types import LifecycleAction, RuntimeState
from .errors import (CoreAgentsError, MissingBoundary, PreconditionFailure,
                     ValidationError)
from .profiles import LatencyProfile, resolve_profile
from .stack import Stack
from .trace.events import Trace
from .trace.latency import LatencyReport, latency_breakdown

logger = logging.getLogger("coreagents.scenario")

REPRESENTATIVE_PROMPT = ("Check the operational status of the AMF and start it "
                         "if it is inactive.")

# The labeled message sequence of the representative inspection-and-start run.
EXPECTED_LABELS = ["A1", "A2", "M1", "M2", "S1", "M2'", "A3", "M3", "M4", "M4'"]
EXPECTED_INTERFACES = ["A2A", "A2A", "MCP", "MCP", "SBI", "MCP", "A2A", "MCP",
                       "MCP", "MCP"]


@dataclass
class ScenarioSpec:
    name: str
    prompt: str
    preconditions: list[tuple[str, str]] = field(default_factory=list)
    repetitions: int = 1
    latency_profile: str = "fast"

    def validate(self, stack: Stack) -> None:
        if self.repetitions < 1:
            raise ValidationError("repetitions must be >= 1")
        deployed = {t.value for t in stack.runtime.specs}
        for nf, desired in self.preconditions:
            if nf.upper() not in deployed:
                raise PreconditionFailure(f"precondition names undeployed NF {nf!r}")
            if desired not in ("running", "stopped"):
                raise PreconditionFailure(
                    f"precondition state must be running or stopped, got {desired!r}")

    def to_dict(self) -> dict:
        return {"name": self.name, "prompt": self.prompt,
                "preconditions": [{"nf": nf, "state": state}
                                  for nf, state in self.preconditions],
                "repetitions": self.repetitions,
                "latency_profile": self.latency_profile}

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioSpec":
        preconditions = [(str(p["nf"]), str(p["state"]))
                         for p in data.get("preconditions", []) or []]
        return cls(name=str(data["name"]), prompt=str(data["prompt"]),
                   preconditions=preconditions,
                   repetitions=int(data.get("repetitions", 1)),
                   latency_profile=str(data.get("latency_profile", "fast")))

    @classmethod
    def from_file(cls, path: str) -> "ScenarioSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(yaml.safe_load(fh))


BUILTIN_SCENARIOS = {
    "amf-inspect-and-start": ScenarioSpec(
        name="amf-inspect-and-start",
        prompt=REPRESENTATIVE_PROMPT,
        preconditions=[("AMF", "stopped")],
        repetitions=10,
        latency_profile="paper-calibrated",
    ),
    "amf-inspect-noop": ScenarioSpec(
        name="amf-inspect-noop",
        prompt=REPRESENTATIVE_PROMPT,
        preconditions=[("AMF", "running")],
        repetitions=1,
        latency_profile="fast",
    ),
}


def load_scenario(name_or_path: str) -> ScenarioSpec:
    if name_or_path in BUILTIN_SCENARIOS:
        # Copy so caller overrides never mutate the builtin table.
        return ScenarioSpec.from_dict(BUILTIN_SCENARIOS[name_or_path].to_dict())
    return ScenarioSpec.from_file(name_or_path)


@dataclass
class ScenarioResult:
    spec: ScenarioSpec
    profile: LatencyProfile
    traces: list[Trace] = field(default_factory=list)
    errors: list[str | None] = field(default_factory=list)
    final_states: list[dict[str, str]] = field(default_factory=list)
    responses: list[str] = field(default_factory=list)
    latency_report: LatencyReport | None = None
    latency_error: str | None = None
    duration_s: float = 0.0

    @property
    def label_sequences(self) -> list[list[str]]:
        return [trace.label_sequence() for trace in self.traces]

    @property
    def ok(self) -> bool:
        return all(error is None for error in self.errors)

    def to_dict(self) -> dict:
        return {
            "scenario": self.spec.to_dict(),
            "profile": self.profile.to_dict(),
            "labelSequences": self.label_sequences,
            "errors": self.errors,
            "finalStates": self.final_states,
            "responses": self.responses,
            "latencyError": self.latency_error,
            "durationS": self.duration_s,
        }


def apply_preconditions(stack: Stack, spec: ScenarioSpec) -> None:
    for nf, desired in spec.preconditions:
        nf_type = stack.runtime.resolve_nf(nf)
        state = stack.runtime.state_of(nf_type).state
        if desired == "stopped" and state is not RuntimeState.STOPPED:
            stack.runtime.lifecycle(nf_type, LifecycleAction.STOP,
                                    source="Scenario Runner")
        elif desired == "running" and state is not RuntimeState.RUNNING:
            stack.runtime.lifecycle(nf_type, LifecycleAction.START,
                                    source="Scenario Runner")


def run_scenario(stack: Stack, spec: ScenarioSpec,
                 profile: LatencyProfile | None = None) -> ScenarioResult:
    """Run one scenario against an already-up stack.

    Preconditions are restored before every repetition (outside the run's
    trace window); per-run orchestration failures are recorded without
    aborting the remaining repetitions.
    """
    spec.validate(stack)
    profile = profile or resolve_profile(spec.latency_profile)
    stack.apply_profile(profile)
    result = ScenarioResult(spec=spec, profile=profile)
    started = time.monotonic()
    for index in range(spec.repetitions):
        apply_preconditions(stack, spec)
        stack.collector.begin_run(f"{spec.name}#{index + 1}")
        error = None
        response = ""
        try:
            task = stack.prompt(spec.prompt)
            response = task.message.text
        except CoreAgentsError as exc:
            error = f"{type(exc).__name__}: {exc}"
            logger.warning("run %d failed: %s", index + 1, error)
        result.traces.append(stack.collector.end_run())
        result.errors.append(error)
        result.responses.append(response)
        result.final_states.append({t.value: s.state.value
                                    for t, s in stack.runtime.states().items()})
    result.duration_s = time.monotonic() - started
    try:
        result.latency_report = latency_breakdown(result.traces)
        stack.last_report = result.latency_report
    except MissingBoundary as exc:
        result.latency_error = str(exc)
    return result
