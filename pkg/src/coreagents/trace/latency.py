"""Latency decomposition of workflow traces into the report components.

Interval boundaries, per run:

* end-to-end: the prompt's message/send request at the host to the
  delivery of its response.
* host reasoning: prompt arrival to the emission of the first delegation.
* monitoring / execution total: that agent's delegation request to its
  delegation response.
* tool listing: sum of all tools/list request/response intervals issued by
  that agent during the task (discovery may run more than once).
* tool call + SBI / + system: sum of that agent's tools/call intervals;
  the backing SBI query or system-level operation happens inside them.
* selection+synthesis: the agent total minus its measured protocol
  intervals — the residual attributable to reasoning, by construction
  additive with the other sub-components.
* A2A aggregate: end-to-end minus host reasoning and both agent totals;
  card retrieval, transport and host-side result propagation live here.

All timestamps come from one in-process monotonic clock.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from ..errors import MissingBoundary
from .events import Direction, Op, Trace, TraceEvent

HOST_REASONING = "host reasoning"
MONITORING_TOTAL = "monitoring total"
MONITORING_LISTING = "monitoring tool listing"
MONITORING_CALL = "monitoring tool call + SBI"
MONITORING_SYNTHESIS = "monitoring selection+synthesis"
EXECUTION_TOTAL = "execution total"
EXECUTION_LISTING = "execution tool listing"
EXECUTION_CALL = "execution tool call + system"
EXECUTION_SYNTHESIS = "execution selection+synthesis"
A2A_AGGREGATE = "A2A aggregate"
END_TO_END = "end-to-end"

COMPONENTS = (
    HOST_REASONING,
    MONITORING_TOTAL, MONITORING_LISTING, MONITORING_CALL, MONITORING_SYNTHESIS,
    EXECUTION_TOTAL, EXECUTION_LISTING, EXECUTION_CALL, EXECUTION_SYNTHESIS,
    A2A_AGGREGATE, END_TO_END,
)


@dataclass
class TopologyNames:
    """Display names the breakdown uses to attribute events to components."""

    host: str = "Host Agent"
    monitoring: str = "Monitoring Agent"
    execution: str = "Execution Agent"


@dataclass
class ComponentStats:
    mean_s: float
    std_s: float
    min_s: float
    max_s: float

    def to_dict(self) -> dict[str, float]:
        return {"meanS": self.mean_s, "stdS": self.std_s,
                "minS": self.min_s, "maxS": self.max_s}


@dataclass
class LatencyReport:
    components: dict[str, ComponentStats]
    run_count: int
    runs: list[dict[str, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "runCount": self.run_count,
            "components": {name: stats.to_dict()
                           for name, stats in self.components.items()},
            "runs": self.runs,
        }


def _pairs(events: list[TraceEvent]) -> dict[str, tuple[TraceEvent, TraceEvent | None]]:
    ordered = sorted(events, key=lambda e: (e.timestamp_ns, e.seq))
    pairs: dict[str, tuple[TraceEvent, TraceEvent | None]] = {}
    for event in ordered:
        if event.direction is Direction.REQUEST:
            pairs.setdefault(event.correlation_id, (event, None))
        else:
            req = pairs.get(event.correlation_id)
            if req is not None and req[1] is None:
                pairs[event.correlation_id] = (req[0], event)
    return pairs


def _seconds(start: TraceEvent, end: TraceEvent) -> float:
    return (end.timestamp_ns - start.timestamp_ns) / 1e9


def run_intervals(trace: Trace, names: TopologyNames | None = None) -> dict[str, float]:
    """Compute all component intervals for one run.

    Raises MissingBoundary naming the first component whose boundary events
    are absent or unpaired.
    """
    names = names or TopologyNames()
    events = sorted(trace.events, key=lambda e: (e.timestamp_ns, e.seq))
    pairs = _pairs(events)

    prompt = next((e for e in events
                   if e.direction is Direction.REQUEST and e.op is Op.MESSAGE_SEND
                   and e.destination == names.host), None)
    if prompt is None or pairs[prompt.correlation_id][1] is None:
        raise MissingBoundary(END_TO_END)
    final = pairs[prompt.correlation_id][1]

    delegations = [e for e in events
                   if e.direction is Direction.REQUEST and e.op is Op.MESSAGE_SEND
                   and e.source == names.host]
    if not delegations:
        raise MissingBoundary(HOST_REASONING)

    intervals = {
        END_TO_END: _seconds(prompt, final),
        HOST_REASONING: _seconds(prompt, delegations[0]),
    }
    for agent, total_name, listing_name, call_name, synthesis_name in (
            (names.monitoring, MONITORING_TOTAL, MONITORING_LISTING,
             MONITORING_CALL, MONITORING_SYNTHESIS),
            (names.execution, EXECUTION_TOTAL, EXECUTION_LISTING,
             EXECUTION_CALL, EXECUTION_SYNTHESIS)):
        delegation = next((e for e in delegations if e.destination == agent), None)
        if delegation is None or pairs[delegation.correlation_id][1] is None:
            raise MissingBoundary(total_name)
        total = _seconds(delegation, pairs[delegation.correlation_id][1])
        listing = _paired_sum(pairs, Op.TOOLS_LIST, agent, listing_name)
        call = _paired_sum(pairs, Op.TOOLS_CALL, agent, call_name)
        intervals[total_name] = total
        intervals[listing_name] = listing
        intervals[call_name] = call
        intervals[synthesis_name] = total - listing - call
    intervals[A2A_AGGREGATE] = (intervals[END_TO_END] - intervals[HOST_REASONING]
                                - intervals[MONITORING_TOTAL]
                                - intervals[EXECUTION_TOTAL])
    return intervals


def _paired_sum(pairs: dict[str, tuple[TraceEvent, TraceEvent | None]],
                op: Op, source: str, component: str) -> float:
    total = 0.0
    seen = False
    for req, resp in pairs.values():
        if req.op is not op or req.source != source:
            continue
        if resp is None:
            raise MissingBoundary(component)
        total += _seconds(req, resp)
        seen = True
    if not seen:
        raise MissingBoundary(component)
    return total


def latency_breakdown(traces: list[Trace],
                      names: TopologyNames | None = None) -> LatencyReport:
    """Per-component mean/std/min/max over a list of per-run traces."""
    if not traces:
        raise MissingBoundary(END_TO_END)
    runs = [run_intervals(trace, names) for trace in traces]
    components = {}
    for name in COMPONENTS:
        values = [run[name] for run in runs]
        low, high = min(values), max(values)
        # fmean can land one ULP outside [min, max] on identical values;
        # the mathematical mean never does.
        mean = min(max(statistics.fmean(values), low), high)
        components[name] = ComponentStats(
            mean_s=mean,
            std_s=statistics.pstdev(values),
            min_s=low,
            max_s=high,
        )
    return LatencyReport(components=components, run_count=len(runs), runs=runs)
