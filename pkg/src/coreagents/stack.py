"""Boots and tears down the whole control plane in one process.

One Stack owns: the NRF and its registry, the NF runtime, both MCP tool
servers, the three agents, a shared trace collector, and (optionally) the
control endpoint that streams events to the operator console.
"""

from __future__ import annotations

import logging
import socket
import time
import uuid

import httpx

from .a2a.client import A2AClient
from .a2a.types import A2ATask
from .agents.backend import DeterministicBackend
from .agents.host import HostAgent, host_card
from .agents.subagent import SubAgent, execution_card, monitoring_card
from .config import DeploymentConfig
from .core.client import SbiClient
from .core.nrf import SbiServer
from .core.registry import NrfRegistry
from .core.runtime import (CommandBackend, InProcessBackend, NfRuntime, NfSpec,
                           NRF_SPEC)
from .core.types import LifecycleAction, NfType, RuntimeState
from .errors import PortConflict, StartupTimeout
from .profiles import LatencyProfile
from .trace.events import NullCollector, TraceCollector

logger = logging.getLogger("coreagents.stack")

NF_NAMES_WITH_NRF = [t.value for t in NfType]


class Stack:
    def __init__(self, config: DeploymentConfig | None = None,
                 with_control: bool = False):
        self.config = config or DeploymentConfig.ephemeral()
        self.with_control = with_control
        self.collector = TraceCollector(host_name="Host Agent")
        self.registry = NrfRegistry()
        self.last_report = None  # most recent LatencyReport, for the control API
        self._running = False
        self._build()

    def _build(self) -> None:
        config = self.config
        specs = {nf.nf_type: nf.spec() for nf in config.nfs}
        if config.nf_backend == "command":
            backend = CommandBackend(config.command_start, config.command_stop)
        else:
            backend = InProcessBackend(
                start_delays={nf.nf_type: nf.start_delay for nf in config.nfs},
                stop_delays={nf.nf_type: nf.stop_delay for nf in config.nfs})
        self.nf_backend = backend
        self.runtime = NfRuntime(self.registry, specs=specs, backend=backend,
                                 collector=self.collector)
        self.nrf = SbiServer(self.registry, host=config.nrf.host,
                             port=config.nrf.port,
                             excerpt_exact=config.excerpt_exact,
                             transport=config.sbi_transport)
        nf_names = [t.value for t in specs] + [NfType.NRF.value]
        self.nf_names = nf_names

        from .mcp.tools import build_execution_server, build_monitoring_server
        self._tool_sbi: SbiClient | None = None  # created once the NRF is bound
        self._build_monitoring = build_monitoring_server
        self._build_execution = build_execution_server

        self.host_backend = DeterministicBackend()
        self.monitoring_backend = DeterministicBackend()
        self.execution_backend = DeterministicBackend()

    # -- lifecycle -----------------------------------------------------------------

    def up(self, startup_timeout: float = 10.0) -> "Stack":
        if self._running:
            return self
        self._check_ports()
        config = self.config
        self.nrf.start()
        # The NRF is the discovery root: always Running, registered at boot.
        self.registry.register(NRF_SPEC.make_profile(str(uuid.uuid4())))

        sbi_transport = "h1" if config.sbi_transport == "h1" else "h2"
        self._tool_sbi = SbiClient(self.nrf.api_root, collector=self.collector,
                                   source="MCP Tool", destination="NRF",
                                   transport=sbi_transport)
        self.mcp_monitoring = self._build_monitoring(
            self._tool_sbi, host=config.mcp_monitoring.host,
            port=config.mcp_monitoring.port, sse_responses=config.sse_responses)
        self.mcp_execution = self._build_execution(
            self.runtime, host=config.mcp_execution.host,
            port=config.mcp_execution.port, sse_responses=config.sse_responses)
        self.mcp_monitoring.start()
        self.mcp_execution.start()

        self.monitoring_agent = SubAgent(
            "monitoring", monitoring_card(), self.mcp_monitoring.url,
            self.mcp_monitoring.display_name, self.monitoring_backend,
            self.nf_names, collector=self.collector,
            host=config.agent_monitoring.host, port=config.agent_monitoring.port)
        self.execution_agent = SubAgent(
            "execution", execution_card(), self.mcp_execution.url,
            self.mcp_execution.display_name, self.execution_backend,
            self.nf_names, collector=self.collector,
            host=config.agent_execution.host, port=config.agent_execution.port)
        self.monitoring_agent.start()
        self.execution_agent.start()

        self.host_agent = HostAgent(
            host_card(), self.host_backend,
            monitoring_endpoint=self.monitoring_agent.url,
            execution_endpoint=self.execution_agent.url,
            nf_names=self.nf_names, collector=self.collector,
            host=config.agent_host.host, port=config.agent_host.port)
        self.host_agent.start()

        self.control = None
        if self.with_control:
            from .control import ControlServer
            self.control = ControlServer(self, host=config.control.host,
                                         port=config.control.port)
            self.control.start()

        self._prompt_client = A2AClient(collector=self.collector, source="User")
        self._status_sbi = SbiClient(self.nrf.api_root, collector=NullCollector(),
                                     source="Operator", transport=sbi_transport)
        self._await_ready(startup_timeout)
        self._boot_nfs()
        self._running = True
        return self

    def down(self) -> None:
        if not self._running:
            return
        for part in (getattr(self, "control", None), self.host_agent,
                     self.monitoring_agent, self.execution_agent,
                     self.mcp_monitoring, self.mcp_execution, self.nrf):
            if part is not None:
                part.stop()
        self._prompt_client.close()
        self._status_sbi.close()
        if self._tool_sbi is not None:
            self._tool_sbi.close()
        self._running = False

    def _check_ports(self) -> None:
        config = self.config
        named = [(config.nrf, "NRF SBI"), (config.mcp_monitoring, "MCP monitoring"),
                 (config.mcp_execution, "MCP execution"), (config.agent_host, "Host Agent"),
                 (config.agent_monitoring, "Monitoring Agent"),
                 (config.agent_execution, "Execution Agent")]
        if self.with_control:
            named.append((config.control, "control endpoint"))
        for endpoint, what in named:
            if endpoint.port == 0:
                continue
            probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
            probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
            try:
                probe.bind((endpoint.host, endpoint.port))
            except OSError:
                raise PortConflict(endpoint.port, what) from None
            finally:
                probe.close()

    def _await_ready(self, timeout: float) -> None:
        deadline = time.monotonic() + timeout
        card_urls = [self.host_agent.url, self.monitoring_agent.url,
                     self.execution_agent.url]
        with httpx.Client(timeout=2.0) as probe:
            for url in card_urls:
                while True:
                    try:
                        response = probe.get(url + "/.well-known/agent.json")
                        if response.status_code == 200:
                            break
                    except httpx.TransportError:
                        pass
                    if time.monotonic() > deadline:
                        raise StartupTimeout(f"agent card at {url} not reachable")
                    time.sleep(0.05)
        while True:
            try:
                self._status_sbi.query_nf_instances("NRF")
                break
            except (RuntimeError, OSError, ConnectionError):
                if time.monotonic() > deadline:
                    raise StartupTimeout("NRF SBI endpoint not reachable") from None
                time.sleep(0.05)

    def _boot_nfs(self) -> None:
        for nf in self.config.nfs:
            if nf.initial == "running":
                self.runtime.lifecycle(nf.nf_type, LifecycleAction.START,
                                       source="Stack")

    # -- operations ------------------------------------------------------------------

    def prompt(self, text: str) -> A2ATask:
        """Submit one operator prompt to the Host Agent over A2A."""
        return self._prompt_client.send_message(
            self.host_agent.url, text, destination=self.host_agent.card.name,
            purpose="Submit user prompt to Host Agent",
            response_purpose="Return final response to user")

    def apply_profile(self, profile: LatencyProfile) -> None:
        """Point all delay-injection knobs at one latency profile."""
        self.host_backend.delays.interpret = profile.host_interpret
        self.monitoring_backend.delays.select_tool = profile.monitoring_select
        self.monitoring_backend.delays.summarize = profile.monitoring_summarize
        self.execution_backend.delays.select_tool = profile.execution_select
        self.execution_backend.delays.summarize = profile.execution_summarize
        self.monitoring_agent.overhead = profile.monitoring_overhead
        self.execution_agent.overhead = profile.execution_overhead
        self.host_agent.handover = profile.host_handover
        self.mcp_monitoring.handler_delays = {
            "tools/list": profile.monitoring_list_delay,
            "tools/call": profile.monitoring_call_delay,
        }
        self.mcp_execution.handler_delays = {
            "tools/list": profile.execution_list_delay,
            "tools/call": profile.execution_call_delay,
        }
        if isinstance(self.nf_backend, InProcessBackend):
            for nf_type in self.runtime.specs:
                self.nf_backend.start_delays[nf_type] = profile.nf_start_delay
                self.nf_backend.stop_delays[nf_type] = profile.nf_stop_delay

    def nf_status(self) -> dict[str, dict[str, object]]:
        """Untraced status snapshot for the CLI and the console proxy."""
        status: dict[str, dict[str, object]] = {}
        for nf_type, state in self.runtime.states().items():
            registered = bool(self._status_sbi.query_hrefs(nf_type.value))
            status[nf_type.value] = {"state": state.state.value,
                                     "registered": registered}
        nrf_registered = bool(self._status_sbi.query_hrefs("NRF"))
        status["NRF"] = {"state": RuntimeState.RUNNING.value,
                         "registered": nrf_registered}
        return status
