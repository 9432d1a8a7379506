"""Latency decomposition against hand-computed synthetic traces."""

import math
import random

import pytest

from coreagents.errors import MissingBoundary
from coreagents.trace.events import (Direction, Interface, Op, Trace,
                                     TraceEvent)
from coreagents.trace.latency import (COMPONENTS, LatencyReport,
                                      latency_breakdown, run_intervals)

MON = "MCP Server (Localhost: 9000)"
EXE = "MCP Server (Localhost: 9001)"


def _event(interface, direction, source, dest, op, corr, at_s, base_ns=1_000):
    return TraceEvent(interface=interface, direction=direction, source=source,
                      destination=dest, purpose="", op=op, correlation_id=corr,
                      timestamp_ns=base_ns + int(round(at_s * 1e9)))


def synthetic_trace(run_id="r1", pad=0.0, base_ns=1_000):
    """Representative run with component durations set to the reported means.

    Timeline (seconds): A1 at 0; A2 at 2.35; monitoring listing 0.02 and
    tool call 0.58 (SBI inside); A2 response at 6.85 (monitoring total
    4.50); A3 at 7.34; execution listing 0.02 and tool call 1.17; A3
    response at 12.33 (execution total 4.99); final response at 12.81.
    ``pad`` stretches the tail to vary end-to-end across runs.
    """
    a2_resp = 2.35 + 4.50
    a3 = a2_resp + 0.49
    a3_resp = a3 + 4.99
    final = 12.81 + pad
    rows = [
        (Interface.A2A, Direction.REQUEST, "User", "Host Agent",
         Op.MESSAGE_SEND, "a1", 0.0),
        (Interface.A2A, Direction.REQUEST, "Host Agent", "Monitoring Agent",
         Op.MESSAGE_SEND, "a2", 2.35),
        (Interface.MCP, Direction.REQUEST, "Monitoring Agent", MON,
         Op.TOOLS_LIST, "m1", 2.36),
        (Interface.MCP, Direction.RESPONSE, MON, "Monitoring Agent",
         Op.TOOLS_LIST, "m1", 2.38),
        (Interface.MCP, Direction.REQUEST, "Monitoring Agent", MON,
         Op.TOOLS_CALL, "m2", 2.40),
        (Interface.SBI, Direction.REQUEST, "MCP Tool", "NRF",
         Op.SBI_REQUEST, "s1", 2.41),
        (Interface.SBI, Direction.RESPONSE, "NRF", "MCP Tool",
         Op.SBI_REQUEST, "s1", 2.4105),
        (Interface.MCP, Direction.RESPONSE, MON, "Monitoring Agent",
         Op.TOOLS_CALL, "m2", 2.98),
        (Interface.A2A, Direction.RESPONSE, "Monitoring Agent", "Host Agent",
         Op.MESSAGE_SEND, "a2", a2_resp),
        (Interface.A2A, Direction.REQUEST, "Host Agent", "Execution Agent",
         Op.MESSAGE_SEND, "a3", a3),
        (Interface.MCP, Direction.REQUEST, "Execution Agent", EXE,
         Op.TOOLS_LIST, "m3", a3 + 0.01),
        (Interface.MCP, Direction.RESPONSE, EXE, "Execution Agent",
         Op.TOOLS_LIST, "m3", a3 + 0.03),
        (Interface.MCP, Direction.REQUEST, "Execution Agent", EXE,
         Op.TOOLS_CALL, "m4", a3 + 0.05),
        (Interface.MCP, Direction.RESPONSE, EXE, "Execution Agent",
         Op.TOOLS_CALL, "m4", a3 + 0.05 + 1.17),
        (Interface.A2A, Direction.RESPONSE, "Execution Agent", "Host Agent",
         Op.MESSAGE_SEND, "a3", a3_resp),
        (Interface.A2A, Direction.RESPONSE, "Host Agent", "User",
         Op.MESSAGE_SEND, "a1", final),
    ]
    events = [_event(*row[:6], row[6], base_ns=base_ns) for row in rows]
    for seq, item in enumerate(events):
        item.seq = seq
    return Trace(run_id=run_id, events=events)


def drop(trace: Trace, correlation_id: str, direction: Direction) -> Trace:
    events = [e for e in trace.events
              if not (e.correlation_id == correlation_id and e.direction is direction)]
    return Trace(run_id=trace.run_id, events=events)


class TestRunIntervals:
    def test_hand_computed_component_values(self):
        run = run_intervals(synthetic_trace())
        # Oracle: interval sums computed by hand from the injected timestamps.
        assert run["end-to-end"] == pytest.approx(12.81, abs=1e-9)
        assert run["host reasoning"] == pytest.approx(2.35, abs=1e-9)
        assert run["monitoring total"] == pytest.approx(4.50, abs=1e-9)
        assert run["monitoring tool listing"] == pytest.approx(0.02, abs=1e-9)
        assert run["monitoring tool call + SBI"] == pytest.approx(0.58, abs=1e-9)
        assert run["monitoring selection+synthesis"] == pytest.approx(
            4.50 - 0.02 - 0.58, abs=1e-9)
        assert run["execution total"] == pytest.approx(4.99, abs=1e-9)
        assert run["execution tool call + system"] == pytest.approx(1.17, abs=1e-9)
        assert run["A2A aggregate"] == pytest.approx(
            12.81 - 2.35 - 4.50 - 4.99, abs=1e-9)

    def test_additivity_is_exact_by_construction(self):
        run = run_intervals(synthetic_trace(pad=0.731))
        assert math.isclose(
            run["monitoring total"],
            run["monitoring tool listing"] + run["monitoring tool call + SBI"]
            + run["monitoring selection+synthesis"], rel_tol=0, abs_tol=1e-12)
        assert math.isclose(
            run["execution total"],
            run["execution tool listing"] + run["execution tool call + system"]
            + run["execution selection+synthesis"], rel_tol=0, abs_tol=1e-12)

    def test_degenerate_identical_timestamps(self):
        trace = synthetic_trace()
        for item in trace.events:
            item.timestamp_ns = 5_000
        run = run_intervals(trace)
        assert all(value == 0.0 for value in run.values())

    def test_tool_listing_aggregates_repeated_discovery(self):
        # Agents may discover tools more than once per task; the component
        # sums every listing exchange.
        trace = synthetic_trace()
        extra = [
            _event(Interface.MCP, Direction.REQUEST, "Monitoring Agent", MON,
                   Op.TOOLS_LIST, "m1b", 3.00),
            _event(Interface.MCP, Direction.RESPONSE, MON, "Monitoring Agent",
                   Op.TOOLS_LIST, "m1b", 3.05),
        ]
        for index, item in enumerate(extra, start=len(trace.events)):
            item.seq = index
        trace.events.extend(extra)
        run = run_intervals(trace)
        assert run["monitoring tool listing"] == pytest.approx(0.02 + 0.05, abs=1e-9)

    def test_missing_listing_response_names_component(self):
        with pytest.raises(MissingBoundary) as err:
            run_intervals(drop(synthetic_trace(), "m1", Direction.RESPONSE))
        assert err.value.component == "monitoring tool listing"

    def test_missing_execution_delegation_names_component(self):
        trace = synthetic_trace()
        trace = drop(drop(trace, "a3", Direction.REQUEST), "a3", Direction.RESPONSE)
        trace = drop(drop(trace, "m3", Direction.REQUEST), "m3", Direction.RESPONSE)
        trace = drop(drop(trace, "m4", Direction.REQUEST), "m4", Direction.RESPONSE)
        with pytest.raises(MissingBoundary) as err:
            run_intervals(trace)
        assert err.value.component == "execution total"

    def test_missing_prompt_is_end_to_end(self):
        with pytest.raises(MissingBoundary) as err:
            run_intervals(drop(synthetic_trace(), "a1", Direction.REQUEST))
        assert err.value.component == "end-to-end"


class TestBreakdown:
    def test_table_means_reproduced_over_ten_runs(self):
        traces = [synthetic_trace(run_id=f"r{i}") for i in range(10)]
        report = latency_breakdown(traces)
        assert report.run_count == 10
        assert report.components["end-to-end"].mean_s == pytest.approx(12.81, abs=1e-9)
        assert report.components["host reasoning"].mean_s == pytest.approx(2.35, abs=1e-9)
        assert report.components["end-to-end"].std_s == 0.0

    def test_component_set_is_exactly_the_report_rows(self):
        report = latency_breakdown([synthetic_trace()])
        assert tuple(report.components) == COMPONENTS

    def test_min_mean_max_ordering(self):
        traces = [synthetic_trace(run_id=f"r{i}", pad=0.1 * i) for i in range(5)]
        report = latency_breakdown(traces)
        for stats in report.components.values():
            assert stats.min_s <= stats.mean_s <= stats.max_s
            assert stats.std_s >= 0

    def test_stats_match_brute_force_recomputation(self):
        rng = random.Random(99)
        traces = [synthetic_trace(run_id=f"r{i}", pad=rng.uniform(0, 2))
                  for i in range(8)]
        report = latency_breakdown(traces)
        raw = [run_intervals(t) for t in traces]
        for name in COMPONENTS:
            values = [r[name] for r in raw]
            mean = sum(values) / len(values)
            variance = sum((v - mean) ** 2 for v in values) / len(values)
            stats = report.components[name]
            assert stats.mean_s == pytest.approx(mean, rel=1e-12)
            assert stats.std_s == pytest.approx(math.sqrt(variance), rel=1e-9, abs=1e-12)
            assert stats.min_s == min(values)
            assert stats.max_s == max(values)

    def test_empty_trace_list_rejected(self):
        with pytest.raises(MissingBoundary):
            latency_breakdown([])

    def test_report_serialization(self):
        report = latency_breakdown([synthetic_trace()])
        doc = report.to_dict()
        assert doc["runCount"] == 1
        assert set(doc["components"]) == set(COMPONENTS)
        assert doc["components"]["end-to-end"]["meanS"] == pytest.approx(12.81)
