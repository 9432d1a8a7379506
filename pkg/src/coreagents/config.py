"""Deployment configuration: NF set, endpoints, delays, transport flags."""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from .core.runtime import NfSpec, default_nf_specs
from .core.types import NfService, NfType


@dataclass
class EndpointConfig:
    host: str = "127.0.0.1"
    port: int = 0


@dataclass
class NfConfig:
    nf_type: NfType
    ipv4: str
    services: list[NfService] = field(default_factory=list)
    start_delay: float = 0.4   # seconds from Starting to Running
    stop_delay: float = 0.0
    initial: str = "running"   # running | stopped

    def spec(self) -> NfSpec:
        return NfSpec(self.nf_type, self.ipv4, list(self.services))


@dataclass
class DeploymentConfig:
    nrf: EndpointConfig = field(default_factory=lambda: EndpointConfig(port=8080))
    mcp_monitoring: EndpointConfig = field(default_factory=lambda: EndpointConfig(port=9000))
    mcp_execution: EndpointConfig = field(default_factory=lambda: EndpointConfig(port=9001))
    agent_host: EndpointConfig = field(default_factory=lambda: EndpointConfig(port=8001))
    agent_monitoring: EndpointConfig = field(default_factory=lambda: EndpointConfig(port=8002))
    agent_execution: EndpointConfig = field(default_factory=lambda: EndpointConfig(port=8003))
    control: EndpointConfig = field(default_factory=lambda: EndpointConfig(port=8010))
    nfs: list[NfConfig] = field(default_factory=list)
    sbi_transport: str = "auto"       # auto | h2 | h1 (fallback for constrained clients)
    excerpt_exact: bool = True        # discovery responses carry self:""
    sse_responses: bool = True        # MCP responses framed as text/event-stream
    nf_backend: str = "inprocess"     # inprocess | command
    command_start: list[str] = field(default_factory=list)
    command_stop: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.nfs:
            self.nfs = default_nf_configs()

    def nf_config(self, nf_type: NfType) -> NfConfig | None:
        return next((c for c in self.nfs if c.nf_type is nf_type), None)

    @classmethod
    def ephemeral(cls) -> "DeploymentConfig":
        """All ports OS-assigned and delays zeroed; what tests use."""
        config = cls(nrf=EndpointConfig(), mcp_monitoring=EndpointConfig(),
                     mcp_execution=EndpointConfig(), agent_host=EndpointConfig(),
                     agent_monitoring=EndpointConfig(),
                     agent_execution=EndpointConfig(), control=EndpointConfig())
        for nf in config.nfs:
            nf.start_delay = 0.0
            nf.stop_delay = 0.0
        return config

    @classmethod
    def from_file(cls, path: str) -> "DeploymentConfig":
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh) or {}
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "DeploymentConfig":
        def endpoint(key: str, default_port: int) -> EndpointConfig:
            section = data.get(key, {}) or {}
            return EndpointConfig(host=section.get("host", "127.0.0.1"),
                                  port=int(section.get("port", default_port)))

        nfs = []
        for entry in data.get("nfs", []) or []:
            services = [NfService(s["name"], s.get("version", "v1"))
                        for s in entry.get("services", []) or []]
            nf_type = NfType(str(entry["type"]).upper())
            base = _DEFAULT_SERVICES.get(nf_type, [])
            nfs.append(NfConfig(
                nf_type=nf_type,
                ipv4=entry.get("ipv4", _DEFAULT_IPS.get(nf_type, "127.0.0.1")),
                services=services or list(base),
                start_delay=float(entry.get("start_delay", 0.4)),
                stop_delay=float(entry.get("stop_delay", 0.0)),
                initial=entry.get("initial", "running"),
            ))
        config = cls(
            nrf=endpoint("nrf", 8080),
            mcp_monitoring=endpoint("mcp_monitoring", 9000),
            mcp_execution=endpoint("mcp_execution", 9001),
            agent_host=endpoint("agent_host", 8001),
            agent_monitoring=endpoint("agent_monitoring", 8002),
            agent_execution=endpoint("agent_execution", 8003),
            control=endpoint("control", 8010),
            nfs=nfs,
            sbi_transport=data.get("sbi_transport", "auto"),
            excerpt_exact=bool(data.get("excerpt_exact", True)),
            sse_responses=bool(data.get("sse_responses", True)),
            nf_backend=data.get("nf_backend", "inprocess"),
            command_start=list(data.get("command_start", []) or []),
            command_stop=list(data.get("command_stop", []) or []),
        )
        return config


_DEFAULT_IPS = {spec.nf_type: spec.ipv4_address for spec in default_nf_specs().values()}
_DEFAULT_SERVICES = {spec.nf_type: spec.services for spec in default_nf_specs().values()}


def default_nf_configs() -> list[NfConfig]:
    return [NfConfig(nf_type=spec.nf_type, ipv4=spec.ipv4_address,
                     services=list(spec.services))
            for spec in default_nf_specs().values()]
