"""Stack lifecycle and scripted scenario execution."""

import csv
import json
import socket

import pytest
import yaml

from conftest import TABLE_INTERFACES, TABLE_LABELS
from coreagents.config import DeploymentConfig, EndpointConfig
from coreagents.errors import PortConflict, PreconditionFailure
from coreagents.profiles import FAST, LatencyProfile, resolve_profile
from coreagents.report import write_scenario_results
from coreagents.scenario import (BUILTIN_SCENARIOS, ScenarioSpec,
                                 load_scenario, run_scenario)
from coreagents.stack import Stack


def fast_spec(name="probe", repetitions=1, preconditions=(("AMF", "stopped"),)):
    return ScenarioSpec(
        name=name,
        prompt=("Check the operational status of the AMF and start it "
                "if it is inactive."),
        preconditions=list(preconditions),
        repetitions=repetitions,
        latency_profile="fast",
    )


class TestStackLifecycle:
    def test_default_boot_registers_whole_core(self, shared_stack):
        status = shared_stack.nf_status()
        for nf in ("AMF", "SMF", "UPF", "UDM", "UDR", "AUSF", "NRF"):
            assert status[nf]["registered"] is True, nf
        assert status["NRF"]["state"] == "Running"

    def test_port_conflict_names_the_port(self):
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", 0))
        port = blocker.getsockname()[1]
        config = DeploymentConfig.ephemeral()
        config.nrf = EndpointConfig(port=port)
        try:
            with pytest.raises(PortConflict) as err:
                Stack(config).up()
            assert err.value.port == port
        finally:
            blocker.close()

    def test_up_down_up_boots_identically(self):
        first = Stack(DeploymentConfig.ephemeral()).up()
        first_status = first.nf_status()
        first.down()
        second = Stack(DeploymentConfig.ephemeral()).up()
        try:
            assert second.nf_status() == first_status
        finally:
            second.down()

    def test_down_is_idempotent(self):
        stack = Stack(DeploymentConfig.ephemeral()).up()
        stack.down()
        stack.down()


class TestRunScenario:
    def test_label_sequences_and_isolation(self, shared_stack):
        result = run_scenario(shared_stack, fast_spec(repetitions=3))
        assert result.ok
        assert all(seq == TABLE_LABELS for seq in result.label_sequences)
        for trace in result.traces:
            assert [e.interface.value for e in trace.labeled()] == TABLE_INTERFACES
        # Run isolation: disjoint event windows, preconditions re-applied.
        seqs = [set(e.seq for e in t.events) for t in result.traces]
        assert seqs[0].isdisjoint(seqs[1]) and seqs[1].isdisjoint(seqs[2])
        assert all(states["AMF"] == "Running" for states in result.final_states)

    def test_fast_mode_end_to_end_under_two_seconds(self, shared_stack):
        result = run_scenario(shared_stack, fast_spec())
        assert result.latency_report is not None
        assert result.latency_report.components["end-to-end"].mean_s < 2.0

    def test_reproducible_label_sequences(self, shared_stack):
        first = run_scenario(shared_stack, fast_spec(repetitions=2))
        second = run_scenario(shared_stack, fast_spec(repetitions=2))
        assert first.label_sequences == second.label_sequences

    def test_precondition_failure_for_unknown_nf(self, shared_stack):
        spec = fast_spec(preconditions=[("XYZ", "stopped")])
        with pytest.raises(PreconditionFailure):
            run_scenario(shared_stack, spec)

    def test_conditional_skip_builtin(self, shared_stack):
        result = run_scenario(shared_stack, BUILTIN_SCENARIOS["amf-inspect-noop"],
                              profile=FAST)
        labels = result.label_sequences[0]
        assert "A3" not in labels and "M3" not in labels and "M4" not in labels
        assert result.latency_report is None
        assert "execution total" in result.latency_error

    def test_failed_runs_recorded_without_aborting(self, shared_stack):
        spec = ScenarioSpec(name="bad-prompt", prompt="Frobnicate the core",
                            repetitions=2, latency_profile="fast")
        result = run_scenario(shared_stack, spec)
        assert not result.ok
        assert len(result.errors) == 2
        assert all(error for error in result.errors)


class TestScenarioSpecFiles:
    def test_yaml_round_trip(self, tmp_path):
        spec = fast_spec(name="filed")
        path = tmp_path / "scenario.yaml"
        path.write_text(yaml.safe_dump(spec.to_dict()))
        loaded = ScenarioSpec.from_file(str(path))
        assert loaded == spec

    def test_builtin_lookup(self):
        builtin = load_scenario("amf-inspect-and-start")
        assert builtin.repetitions == 10
        assert builtin.preconditions == [("AMF", "stopped")]
        assert builtin.latency_profile == "paper-calibrated"

    def test_profile_resolution(self, tmp_path):
        assert resolve_profile("fast").name == "fast"
        assert resolve_profile("paper-calibrated").host_interpret == 2.35
        custom = tmp_path / "profile.yaml"
        custom.write_text(yaml.safe_dump({"host_interpret": 0.1}))
        profile = resolve_profile(str(custom))
        assert isinstance(profile, LatencyProfile)
        assert profile.host_interpret == 0.1

    def test_unknown_profile_field_rejected(self, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text(yaml.safe_dump({"warp_speed": 9}))
        with pytest.raises(ValueError):
            resolve_profile(str(bad))


class TestResultArtifacts:
    def test_report_files_written(self, shared_stack, tmp_path):
        result = run_scenario(shared_stack, fast_spec(repetitions=2))
        artifacts = write_scenario_results(result, str(tmp_path / "out"))
        for key in ("scenario", "trace_table", "latency_json", "latency_csv",
                    "latency_txt", "latency_figure"):
            assert key in artifacts, key
        figure = tmp_path / "out" / "latency_components.png"
        assert figure.stat().st_size > 1000
        with open(artifacts["latency_csv"], newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["component", "mean_s", "std_s", "min_s", "max_s"]
        assert len(rows) == 12
        summary = json.loads((tmp_path / "out" / "scenario.json").read_text())
        assert summary["labelSequences"][0] == TABLE_LABELS
        table_text = (tmp_path / "out" / "trace_table.txt").read_text()
        assert "Invoke NF status inspection tool" in table_text
        jsonl = (tmp_path / "out" / "trace-run01.jsonl").read_text().strip()
        assert all(json.loads(line)["interface"] for line in jsonl.splitlines())
