"""Trace collection, labeling and table rendering."""

import threading
import uuid

from coreagents.trace.events import (Direction, Interface, NullCollector, Op,
                                     Trace, TraceCollector, TraceEvent,
                                     read_jsonl, write_jsonl)
from coreagents.trace.table import export_trace_table, render_trace_table


def event(interface, direction, source, dest, purpose, op, corr, ts=0):
    return TraceEvent(interface=interface, direction=direction, source=source,
                      destination=dest, purpose=purpose, op=op,
                      correlation_id=corr, timestamp_ns=ts)


def test_append_order_and_length():
    collector = TraceCollector()
    first = collector.record(Interface.A2A, Direction.REQUEST, "User",
                             "Host Agent", "p1", Op.MESSAGE_SEND, "c1")
    second = collector.record(Interface.A2A, Direction.REQUEST, "Host Agent",
                              "Monitoring Agent", "p2", Op.MESSAGE_SEND, "c2")
    assert len(collector) == 2
    assert [e.seq for e in collector.snapshot()] == [0, 1]
    assert (first.label, second.label) == ("A1", "A2")


def test_timestamps_non_decreasing_under_concurrency():
    collector = TraceCollector()

    def spam():
        for _ in range(200):
            collector.record(Interface.SYS, Direction.REQUEST, "a", "b", "p",
                             Op.LIFECYCLE, str(uuid.uuid4()))

    threads = [threading.Thread(target=spam) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    stamps = [e.timestamp_ns for e in collector.snapshot()]
    assert stamps == sorted(stamps)


def test_unknown_correlation_response_flagged_unmatched():
    collector = TraceCollector()
    stored = collector.record(Interface.MCP, Direction.RESPONSE, "s", "d", "p",
                              Op.TOOLS_CALL, "never-requested")
    assert stored.unmatched is True
    assert len(collector) == 1
    assert collector.unmatched_responses() == [stored]


def test_matched_response_not_flagged():
    collector = TraceCollector()
    collector.record(Interface.MCP, Direction.REQUEST, "s", "d", "p",
                     Op.TOOLS_CALL, "c")
    response = collector.record(Interface.MCP, Direction.RESPONSE, "d", "s", "p",
                                Op.TOOLS_CALL, "c")
    assert response.unmatched is False


class TestLabeling:
    def record_workflow(self, collector):
        """Emits the representative message sequence without the stack."""
        mon = "MCP Server (Localhost: 9000)"
        exe = "MCP Server (Localhost: 9001)"
        seq = [
            (Interface.A2A, Direction.REQUEST, "User", "Host Agent",
             "Submit user prompt to Host Agent", Op.MESSAGE_SEND, "a1"),
            (Interface.A2A, Direction.REQUEST, "Host Agent", "Monitoring Agent",
             "Delegate NF status inspection", Op.MESSAGE_SEND, "a2"),
            (Interface.MCP, Direction.REQUEST, "Monitoring Agent", mon,
             "Discover available inspection tools", Op.TOOLS_LIST, "m1"),
            (Interface.MCP, Direction.RESPONSE, mon, "Monitoring Agent",
             "Return tool listing", Op.TOOLS_LIST, "m1"),
            (Interface.MCP, Direction.REQUEST, "Monitoring Agent", mon,
             "Invoke NF status inspection tool", Op.TOOLS_CALL, "m2"),
            (Interface.SBI, Direction.REQUEST, "MCP Tool", "NRF",
             "Query NF registration state", Op.SBI_REQUEST, "s1"),
            (Interface.SBI, Direction.RESPONSE, "NRF", "MCP Tool",
             "Query NF registration state", Op.SBI_REQUEST, "s1"),
            (Interface.MCP, Direction.RESPONSE, mon, "Monitoring Agent",
             "Return inspection result (AMF inactive)", Op.TOOLS_CALL, "m2"),
            (Interface.A2A, Direction.RESPONSE, "Monitoring Agent", "Host Agent",
             "Return outcome from Monitoring Agent", Op.MESSAGE_SEND, "a2"),
            (Interface.A2A, Direction.REQUEST, "Host Agent", "Execution Agent",
             "Delegate lifecycle control action", Op.MESSAGE_SEND, "a3"),
            (Interface.MCP, Direction.REQUEST, "Execution Agent", exe,
             "Discover lifecycle control tools", Op.TOOLS_LIST, "m3"),
            (Interface.MCP, Direction.RESPONSE, exe, "Execution Agent",
             "Return tool listing", Op.TOOLS_LIST, "m3"),
            (Interface.MCP, Direction.REQUEST, "Execution Agent", exe,
             "Invoke NF lifecycle control tool", Op.TOOLS_CALL, "m4"),
            (Interface.MCP, Direction.RESPONSE, exe, "Execution Agent",
             "Return lifecycle execution result (AMF started)", Op.TOOLS_CALL, "m4"),
            (Interface.A2A, Direction.RESPONSE, "Execution Agent", "Host Agent",
             "Return outcome from Execution Agent", Op.MESSAGE_SEND, "a3"),
            (Interface.A2A, Direction.RESPONSE, "Host Agent", "User",
             "Return final response to user", Op.MESSAGE_SEND, "a1"),
        ]
        for parts in seq:
            collector.record(*parts)

    def test_representative_sequence_labels(self):
        collector = TraceCollector()
        collector.begin_run("run")
        self.record_workflow(collector)
        trace = collector.end_run()
        assert trace.label_sequence() == ["A1", "A2", "M1", "M2", "S1", "M2'",
                                          "A3", "M3", "M4", "M4'"]

    def test_card_and_initialize_events_stay_unlabeled(self):
        collector = TraceCollector()
        card = collector.record(Interface.A2A, Direction.REQUEST, "Host Agent",
                                "Monitoring Agent", "Retrieve agent card",
                                Op.AGENT_CARD, "c")
        init = collector.record(Interface.MCP, Direction.REQUEST,
                                "Monitoring Agent", "MCP Server",
                                "Initialize MCP session", Op.INITIALIZE, "i")
        sys_event = collector.record(Interface.SYS, Direction.REQUEST, "MCP Tool",
                                     "AMF runtime", "Start AMF", Op.LIFECYCLE, "l")
        assert (card.label, init.label, sys_event.label) == ("", "", "")

    def test_counters_reset_on_new_user_prompt(self):
        collector = TraceCollector()
        self.record_workflow(collector)
        second = collector.record(Interface.A2A, Direction.REQUEST, "User",
                                  "Host Agent", "Submit user prompt to Host Agent",
                                  Op.MESSAGE_SEND, "next")
        assert second.label == "A1"

    def test_run_windows_are_disjoint(self):
        collector = TraceCollector()
        collector.begin_run("one")
        collector.record(Interface.SBI, Direction.REQUEST, "a", "b", "p",
                         Op.SBI_REQUEST, "x")
        first = collector.end_run()
        collector.begin_run("two")
        collector.record(Interface.SBI, Direction.REQUEST, "a", "b", "p",
                         Op.SBI_REQUEST, "y")
        second = collector.end_run()
        first_seqs = {e.seq for e in first.events}
        second_seqs = {e.seq for e in second.events}
        assert first_seqs.isdisjoint(second_seqs)


class TestTableExport:
    def make_trace(self):
        collector = TraceCollector()
        collector.begin_run("t")
        TestLabeling().record_workflow(collector)
        return collector.end_run()

    def test_m2_row_renders_as_documented(self):
        rows = export_trace_table(self.make_trace().events)
        m2 = next(r for r in rows if r.label == "M2")
        assert m2.as_line() == ("Monitoring Agent → MCP Server (Localhost: 9000), "
                                "MCP, Invoke NF status inspection tool")

    def test_empty_trace_renders_empty_table(self):
        assert export_trace_table([]) == []
        text = render_trace_table([])
        assert "ID" in text

    def test_interface_filter_sbi_single_row(self):
        rows = export_trace_table(self.make_trace().events, interface="SBI")
        assert [(r.label, r.purpose) for r in rows] == [
            ("S1", "Query NF registration state")]

    def test_rows_in_timestamp_order(self):
        rows = export_trace_table(self.make_trace().events)
        assert [r.label for r in rows] == ["A1", "A2", "M1", "M2", "S1", "M2'",
                                           "A3", "M3", "M4", "M4'"]


def test_jsonl_round_trip(tmp_path):
    trace = TestTableExport().make_trace()
    path = tmp_path / "trace.jsonl"
    write_jsonl(trace.events, str(path))
    loaded = read_jsonl(str(path))
    assert [e.to_dict() for e in loaded] == [e.to_dict() for e in trace.events]


def test_null_collector_drops_events():
    collector = NullCollector()
    collector.record(Interface.SBI, Direction.REQUEST, "a", "b", "p",
                     Op.SBI_REQUEST, "c")
    assert len(collector) == 0
