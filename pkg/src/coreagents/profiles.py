"""Latency profiles: where artificial delay is injected across the stack.

The ``fast`` profile injects nothing and is what tests and CI run. The
``paper-calibrated`` profile reproduces the timing structure of the
measured workflow: reasoning-stage delays on the agents' backends, tool
handler delays on the MCP servers, an NF start delay on the runtime, and
handover delays on the host between delegations. Values were chosen so the
per-agent totals and the end-to-end mean land on the measured figures.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import yaml


@dataclass
class LatencyProfile:
    name: str = "fast"
    host_interpret: float = 0.0        # intent interpretation on the host agent
    monitoring_select: float = 0.0     # tool selection on the monitoring agent
    monitoring_summarize: float = 0.0  # result synthesis on the monitoring agent
    execution_select: float = 0.0
    execution_summarize: float = 0.0
    monitoring_overhead: float = 0.0   # per-task framework residual, monitoring
    execution_overhead: float = 0.0
    host_handover: float = 0.0         # host-side result integration per delegation
    monitoring_list_delay: float = 0.0  # tools/list handling on the monitoring server
    monitoring_call_delay: float = 0.0  # tools/call handling on the monitoring server
    execution_list_delay: float = 0.0
    execution_call_delay: float = 0.0   # excludes the NF start itself
    nf_start_delay: float = 0.0
    nf_stop_delay: float = 0.0

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "LatencyProfile":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown latency profile fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str) -> "LatencyProfile":
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh) or {}
        data.setdefault("name", path)
        return cls.from_dict(data)


FAST = LatencyProfile(name="fast")

PAPER_CALIBRATED = LatencyProfile(
    name="paper-calibrated",
    host_interpret=2.35,
    monitoring_select=1.56,
    monitoring_summarize=1.55,   # select + summarize = 3.11
    execution_select=1.52,
    execution_summarize=1.51,    # select + summarize = 3.03
    monitoring_overhead=0.79,    # lifts the monitoring total to 4.50
    execution_overhead=0.77,     # lifts the execution total to 4.99
    host_handover=0.49,          # two delegations: ~0.98 of coordination time
    monitoring_list_delay=0.02,
    monitoring_call_delay=0.58,
    execution_list_delay=0.02,
    execution_call_delay=0.77,   # + 0.4 NF start = 1.17 tool call + system
    nf_start_delay=0.4,
    nf_stop_delay=0.0,
)

_BUILTINS = {"fast": FAST, "paper-calibrated": PAPER_CALIBRATED}


def resolve_profile(name_or_path: str) -> LatencyProfile:
    """Builtin profile by name, or a custom one loaded from a YAML file."""
    if name_or_path in _BUILTINS:
        return _BUILTINS[name_or_path]
    return LatencyProfile.from_file(name_or_path)
