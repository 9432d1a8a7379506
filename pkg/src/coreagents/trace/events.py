"""In-process event tracing across the A2A/MCP/SBI/SYS interfaces.

Every wire exchange is recorded as a request event (at emission) and a
response event (at receipt), tied together by a correlation id — the
in-process analogue of packet timestamps captured on localhost. Events are
labeled at record time in the style of the workflow trace table: A2A
delegation requests get A1, A2, ...; MCP tool-protocol requests get
M1, M2, ...; SBI requests get S1, ...; and the response to a tools/call
request inherits its request label with a prime suffix (M2'). Card
fetches, session initialization, SYS events and all other responses stay
unlabeled. Label counters restart at each new top-level task (a
message/send request arriving at the host agent) and at each run boundary.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

DEFAULT_HOST_NAME = "Host Agent"


class Interface(str, Enum):
    A2A = "A2A"
    MCP = "MCP"
    SBI = "SBI"
    SYS = "SYS"


class Direction(str, Enum):
    REQUEST = "request"
    RESPONSE = "response"


class Op(str, Enum):
    """What the traced exchange is, independent of its interface tag."""

    MESSAGE_SEND = "message/send"
    AGENT_CARD = "agent-card"
    INITIALIZE = "initialize"
    TOOLS_LIST = "tools/list"
    TOOLS_CALL = "tools/call"
    SBI_REQUEST = "sbi"
    LIFECYCLE = "lifecycle"
    REGISTER = "register"
    DEREGISTER = "deregister"


@dataclass
class TraceEvent:
    interface: Interface
    direction: Direction
    source: str
    destination: str
    purpose: str
    op: Op
    correlation_id: str
    timestamp_ns: int = 0   # filled from the collector's monotonic clock when 0
    label: str = ""         # assigned at record time, "" when unlabeled
    seq: int = -1           # collector-assigned append index
    unmatched: bool = False  # response whose correlation id was never requested

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "timestampNs": self.timestamp_ns,
            "interface": self.interface.value,
            "source": self.source,
            "destination": self.destination,
            "purpose": self.purpose,
            "direction": self.direction.value,
            "correlationId": self.correlation_id,
            "op": self.op.value,
            "seq": self.seq,
            "unmatched": self.unmatched,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TraceEvent":
        return cls(
            interface=Interface(data["interface"]),
            direction=Direction(data["direction"]),
            source=data["source"],
            destination=data["destination"],
            purpose=data.get("purpose", ""),
            op=Op(data.get("op", "sbi")),
            correlation_id=data.get("correlationId", ""),
            timestamp_ns=int(data.get("timestampNs", 0)),
            label=data.get("label", ""),
            seq=int(data.get("seq", -1)),
            unmatched=bool(data.get("unmatched", False)),
        )


@dataclass
class Trace:
    """Immutable snapshot of one run's events."""

    run_id: str
    events: list[TraceEvent] = field(default_factory=list)

    def labeled(self) -> list[TraceEvent]:
        return [e for e in self.events if e.label]

    def label_sequence(self) -> list[str]:
        return [e.label for e in self.labeled()]


class TraceCollector:
    """Thread-safe append-only event store with run windows and listeners.

    Appends are atomic and timestamped under the same lock, so recorded
    timestamps are non-decreasing in append order. Listeners (the event
    stream endpoint) are notified synchronously after each append.
    """

    def __init__(self, host_name: str = DEFAULT_HOST_NAME):
        self._lock = threading.Lock()
        self._events: list[TraceEvent] = []
        self._host_name = host_name
        self._a2a_count = 0
        self._mcp_count = 0
        self._sbi_count = 0
        self._request_labels: dict[str, tuple[Op, str]] = {}
        self._seen_correlations: set[str] = set()
        self._run_start: int | None = None
        self._run_id = ""
        self._listeners: list[Callable[[TraceEvent], None]] = []

    # -- recording ----------------------------------------------------------

    def record_event(self, event: TraceEvent) -> TraceEvent:
        """Append one event, assigning timestamp, sequence and label."""
        with self._lock:
            if event.timestamp_ns == 0:
                event.timestamp_ns = time.monotonic_ns()
            event.seq = len(self._events)
            self._assign_label(event)
            if event.direction is Direction.RESPONSE:
                event.unmatched = event.correlation_id not in self._seen_correlations
            else:
                self._seen_correlations.add(event.correlation_id)
            self._events.append(event)
            listeners = list(self._listeners)
        for listener in listeners:
            listener(event)
        return event

    def record(self, interface: Interface, direction: Direction, source: str,
               destination: str, purpose: str, op: Op,
               correlation_id: str) -> TraceEvent:
        return self.record_event(TraceEvent(
            interface=interface, direction=direction, source=source,
            destination=destination, purpose=purpose, op=op,
            correlation_id=correlation_id))

    def _assign_label(self, event: TraceEvent) -> None:
        if event.label:
            return
        if event.direction is Direction.REQUEST:
            if event.op is Op.MESSAGE_SEND:
                if event.destination == self._host_name:
                    # New top-level task: restart workflow numbering.
                    self._reset_counters()
                self._a2a_count += 1
                event.label = f"A{self._a2a_count}"
            elif event.op in (Op.TOOLS_LIST, Op.TOOLS_CALL):
                self._mcp_count += 1
                event.label = f"M{self._mcp_count}"
            elif event.interface is Interface.SBI:
                self._sbi_count += 1
                event.label = f"S{self._sbi_count}"
            if event.label:
                self._request_labels[event.correlation_id] = (event.op, event.label)
        else:
            req = self._request_labels.get(event.correlation_id)
            if req is not None and req[0] is Op.TOOLS_CALL:
                event.label = req[1] + "'"

    def _reset_counters(self) -> None:
        self._a2a_count = 0
        self._mcp_count = 0
        self._sbi_count = 0
        self._request_labels.clear()

    # -- run windows ---------------------------------------------------------

    def begin_run(self, run_id: str) -> None:
        with self._lock:
            self._run_start = len(self._events)
            self._run_id = run_id
            self._reset_counters()

    def end_run(self) -> Trace:
        with self._lock:
            if self._run_start is None:
                raise RuntimeError("end_run called with no active run")
            trace = Trace(run_id=self._run_id,
                          events=list(self._events[self._run_start:]))
            self._run_start = None
            self._run_id = ""
            return trace

    # -- access --------------------------------------------------------------

    def snapshot(self) -> list[TraceEvent]:
        with self._lock:
            return list(self._events)

    def events_since(self, seq: int) -> list[TraceEvent]:
        with self._lock:
            return [e for e in self._events if e.seq > seq]

    def unmatched_responses(self) -> list[TraceEvent]:
        with self._lock:
            return [e for e in self._events
                    if e.direction is Direction.RESPONSE and e.unmatched]

    def add_listener(self, listener: Callable[[TraceEvent], None]) -> None:
        with self._lock:
            self._listeners.append(listener)

    def remove_listener(self, listener: Callable[[TraceEvent], None]) -> None:
        with self._lock:
            if listener in self._listeners:
                self._listeners.remove(listener)

    def __len__(self) -> int:
        with self._lock:
            return len(self._events)


class NullCollector(TraceCollector):
    """Collector that drops everything; used by untraced observability reads."""

    def record_event(self, event: TraceEvent) -> TraceEvent:
        return event


def write_jsonl(events: list[TraceEvent], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for event in events:
            fh.write(event.to_json() + "\n")


def read_jsonl(path: str) -> list[TraceEvent]:
    events = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                events.append(TraceEvent.from_dict(json.loads(line)))
    return events
