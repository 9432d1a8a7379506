"""Command-line entry point: boot the stack, run scenarios, render reports.

Exit codes: 0 success, 2 scenario assertion failure, 3 stack failure.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .a2a.client import A2AClient
from .config import DeploymentConfig
from .errors import CoreAgentsError, PortConflict, StartupTimeout, TaskFailed
from .profiles import resolve_profile
from .report import (load_latency_report, render_latency_table,
                     write_latency_csv, write_latency_figure,
                     write_scenario_results)
from .scenario import load_scenario, run_scenario
from .stack import Stack
from .trace.events import read_jsonl
from .trace.table import export_trace_table, render_trace_table

EXIT_SCENARIO_FAILURE = 2
EXIT_STACK_FAILURE = 3


def _load_config(path: str | None) -> DeploymentConfig:
    return DeploymentConfig.from_file(path) if path else DeploymentConfig()


@click.group()
def main() -> None:
    """Agentic control plane for a simulated mobile core."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True),
              help="Deployment config YAML.")
def up(config_path: str | None) -> None:
    """Boot the core, tool servers, agents and control endpoint; block."""
    config = _load_config(config_path)
    stack = Stack(config, with_control=True)
    try:
        stack.up()
    except (PortConflict, StartupTimeout) as exc:
        click.echo(f"stack failure: {exc}", err=True)
        sys.exit(EXIT_STACK_FAILURE)
    click.echo("stack is up:")
    click.echo(f"  NRF SBI            {stack.nrf.api_root}")
    click.echo(f"  MCP monitoring     {stack.mcp_monitoring.url}")
    click.echo(f"  MCP execution      {stack.mcp_execution.url}")
    click.echo(f"  Host Agent         {stack.host_agent.url}")
    click.echo(f"  Monitoring Agent   {stack.monitoring_agent.url}")
    click.echo(f"  Execution Agent    {stack.execution_agent.url}")
    click.echo(f"  control/console    {stack.control.url}")
    click.echo("Ctrl+C or POST /api/shutdown to stop.")
    try:
        while not stack.control.shutdown_requested.wait(timeout=0.5):
            pass
    except KeyboardInterrupt:
        pass
    finally:
        stack.down()
        click.echo("stack is down.")


@main.command()
@click.option("--control", default="http://127.0.0.1:8010", show_default=True)
def down(control: str) -> None:
    """Ask a running stack to shut down."""
    try:
        httpx.post(control.rstrip("/") + "/api/shutdown", timeout=5.0)
        click.echo("shutdown requested.")
    except httpx.TransportError as exc:
        click.echo(f"control endpoint unreachable: {exc}", err=True)
        sys.exit(EXIT_STACK_FAILURE)


@main.command()
@click.option("--control", default="http://127.0.0.1:8010", show_default=True)
def status(control: str) -> None:
    """Show NF runtime and registration status."""
    try:
        response = httpx.get(control.rstrip("/") + "/api/nf-status", timeout=5.0)
    except httpx.TransportError as exc:
        click.echo(f"control endpoint unreachable: {exc}", err=True)
        sys.exit(EXIT_STACK_FAILURE)
    doc = response.json()
    click.echo(f"{'NF':6} {'state':9} registered")
    for nf, info in sorted(doc.items()):
        click.echo(f"{nf:6} {info['state']:9} {str(info['registered']).lower()}")


@main.command()
@click.argument("text")
@click.option("--host-url", default="http://127.0.0.1:8001", show_default=True,
              help="Host Agent A2A endpoint.")
def prompt(text: str, host_url: str) -> None:
    """Send one intent to the Host Agent and print the outcome."""
    client = A2AClient()
    try:
        task = client.send_message(host_url, text, destination="Host Agent",
                                   purpose="Submit user prompt to Host Agent")
        click.echo(task.message.text)
    except TaskFailed as exc:
        click.echo(f"task failed: {exc.diagnostic}", err=True)
        sys.exit(EXIT_SCENARIO_FAILURE)
    except CoreAgentsError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_STACK_FAILURE)
    finally:
        client.close()


@main.group()
def scenario() -> None:
    """Scripted scenario execution."""


@scenario.command("run")
@click.argument("name_or_file")
@click.option("--profile", "profile_name", default=None,
              help="Latency profile: fast, paper-calibrated, or a YAML file.")
@click.option("--repetitions", type=int, default=None)
@click.option("--results-dir", default="results", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True))
def scenario_run(name_or_file: str, profile_name: str | None,
                 repetitions: int | None, results_dir: str,
                 config_path: str | None) -> None:
    """Boot a stack, run a scenario, write traces and reports."""
    try:
        spec = load_scenario(name_or_file)
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"cannot load scenario: {exc}", err=True)
        sys.exit(EXIT_SCENARIO_FAILURE)
    if repetitions is not None:
        spec.repetitions = repetitions
    profile = resolve_profile(profile_name) if profile_name else None

    config = _load_config(config_path)
    stack = Stack(config)
    try:
        stack.up()
    except (PortConflict, StartupTimeout) as exc:
        click.echo(f"stack failure: {exc}", err=True)
        sys.exit(EXIT_STACK_FAILURE)
    try:
        result = run_scenario(stack, spec, profile=profile)
    except CoreAgentsError as exc:
        click.echo(f"scenario failure: {exc}", err=True)
        stack.down()
        sys.exit(EXIT_SCENARIO_FAILURE)
    finally:
        if stack._running:
            stack.down()

    out_dir = f"{results_dir.rstrip('/')}/{spec.name}"
    artifacts = write_scenario_results(result, out_dir)
    click.echo(f"scenario {spec.name}: {spec.repetitions} run(s) "
               f"in {result.duration_s:.2f}s, profile {result.profile.name}")
    for index, error in enumerate(result.errors, start=1):
        if error:
            click.echo(f"  run {index}: {error}", err=True)
    if result.latency_report is not None:
        click.echo(render_latency_table(result.latency_report))
    elif result.latency_error:
        click.echo(f"latency report unavailable: {result.latency_error}")
    click.echo("artifacts:")
    for name, path in artifacts.items():
        click.echo(f"  {name}: {path}")
    if not result.ok:
        sys.exit(EXIT_SCENARIO_FAILURE)


@main.group()
def report() -> None:
    """Render reports from stored scenario results."""


@report.command("latency")
@click.option("--results", "results_dir", required=True,
              type=click.Path(exists=True, file_okay=False),
              help="A scenario results directory.")
def report_latency(results_dir: str) -> None:
    """Print the latency table and refresh its CSV/figure files."""
    path = f"{results_dir.rstrip('/')}/latency_report.json"
    try:
        latency_report = load_latency_report(path)
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"cannot load {path}: {exc}", err=True)
        sys.exit(EXIT_SCENARIO_FAILURE)
    click.echo(render_latency_table(latency_report))
    write_latency_csv(latency_report, f"{results_dir.rstrip('/')}/latency_report.csv")
    write_latency_figure(latency_report,
                         f"{results_dir.rstrip('/')}/latency_components.png")


@main.group()
def trace() -> None:
    """Trace inspection."""


@trace.command("show")
@click.option("--results", "results_dir", type=click.Path(exists=True, file_okay=False),
              help="Scenario results directory (uses stored run traces).")
@click.option("--control", default=None,
              help="Running stack's control endpoint (live trace).")
@click.option("--run", "run_index", type=int, default=1, show_default=True)
@click.option("--interface", "interface_name", default=None,
              type=click.Choice(["A2A", "MCP", "SBI", "SYS"]))
def trace_show(results_dir: str | None, control: str | None, run_index: int,
               interface_name: str | None) -> None:
    """Render a recorded or live trace as the workflow table."""
    if control:
        url = control.rstrip("/") + "/api/trace"
        if interface_name:
            url += f"?interface={interface_name}"
        try:
            doc = httpx.get(url, timeout=5.0).json()
        except httpx.TransportError as exc:
            click.echo(f"control endpoint unreachable: {exc}", err=True)
            sys.exit(EXIT_STACK_FAILURE)
        for row in doc["rows"]:
            click.echo(f"{row['label']:4} {row['route']}, {row['interface']}, "
                       f"{row['purpose']}")
        return
    if not results_dir:
        click.echo("pass --results DIR or --control URL", err=True)
        sys.exit(EXIT_SCENARIO_FAILURE)
    path = f"{results_dir.rstrip('/')}/trace-run{run_index:02d}.jsonl"
    try:
        events = read_jsonl(path)
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_SCENARIO_FAILURE)
    rows = export_trace_table(events, interface=interface_name)
    click.echo(render_trace_table(rows))


if __name__ == "__main__":
    main()
