"""Workflow trace tables: the labeled view of a run's events."""

from __future__ import annotations

from dataclasses import dataclass

from .events import Interface, TraceEvent


@dataclass
class TraceTableRow:
    label: str
    source: str
    destination: str
    interface: str
    purpose: str

    @property
    def route(self) -> str:
        return f"{self.source} → {self.destination}"

    def as_line(self) -> str:
        return f"{self.route}, {self.interface}, {self.purpose}"


def export_trace_table(events: list[TraceEvent],
                       interface: Interface | str | None = None) -> list[TraceTableRow]:
    """Labeled rows in timestamp order, optionally filtered by interface."""
    wanted = None
    if interface is not None:
        wanted = interface.value if isinstance(interface, Interface) else str(interface)
    rows = []
    for event in sorted(events, key=lambda e: (e.timestamp_ns, e.seq)):
        if not event.label:
            continue
        if wanted is not None and event.interface.value != wanted:
            continue
        rows.append(TraceTableRow(label=event.label, source=event.source,
                                  destination=event.destination,
                                  interface=event.interface.value,
                                  purpose=event.purpose))
    return rows


def render_trace_table(rows: list[TraceTableRow]) -> str:
    """Fixed-width text table with ID, route, interface and purpose columns."""
    headers = ("ID", "Source → Destination", "Interface", "Purpose")
    cells = [(r.label, r.route, r.interface, r.purpose) for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    def fmt(row: tuple[str, ...]) -> str:
        return "  ".join(value.ljust(widths[i]) for i, value in enumerate(row)).rstrip()
    lines = [fmt(headers), fmt(tuple("-" * w for w in widths))]
    lines += [fmt(c) for c in cells]
    return "\n".join(lines)
