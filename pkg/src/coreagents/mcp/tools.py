"""The domain tool catalogs exposed by the monitoring and execution servers.

Monitoring tools translate into SBI queries toward the NRF; execution tools
translate into system-level operations on the NF runtime. These functions
are the only code paths that touch either — agents act exclusively through
tools/call.
"""

from __future__ import annotations

from typing import Any

from ..core.client import SbiClient
from ..core.runtime import NfRuntime
from ..core.types import LifecycleAction
from .schema import ToolDescriptor
from .server import McpToolServer, ToolExecutionError

CHECK_NF_STATUS_DESCRIPTION = ("Checks whether a core network function is currently "
                               "active (registered in the NRF)")

ACTIVE_TEMPLATE = "{nf} is active (registered in the NRF)"
INACTIVE_TEMPLATE = "{nf} is not active or not registered in the NRF"


def _string_prop() -> dict[str, Any]:
    return {"type": "string"}


def _nf_token(raw: str) -> str:
    token = raw.strip().upper()
    if not token:
        raise ToolExecutionError("nf_type must be a non-empty NF type token")
    return token


def build_monitoring_server(sbi: SbiClient, host: str = "127.0.0.1",
                            port: int = 9000, sse_responses: bool = True) -> McpToolServer:
    server = McpToolServer("monitoring-tools", host=host, port=port,
                           sse_responses=sse_responses)

    def check_nf_status(args: dict[str, Any]) -> dict[str, Any]:
        nf = _nf_token(args["nf_type"])
        hrefs = sbi.query_hrefs(nf, purpose="Query NF registration state")
        template = ACTIVE_TEMPLATE if hrefs else INACTIVE_TEMPLATE
        return {"result": template.format(nf=nf)}

    def list_nf_services(args: dict[str, Any]) -> dict[str, Any]:
        nf = _nf_token(args["nf_type"])
        hrefs = sbi.query_hrefs(nf, purpose="Query NF registration state")
        if not hrefs:
            return {"result": INACTIVE_TEMPLATE.format(nf=nf), "services": ""}
        profile = sbi.get_nf_instance(hrefs[0], purpose="Fetch NF profile")
        if profile is None:
            return {"result": INACTIVE_TEMPLATE.format(nf=nf), "services": ""}
        services = ", ".join(f"{s.service_name} ({s.api_version})" for s in profile.services)
        result = f"{nf} services: {services}" if services else f"{nf} exposes no SBI services"
        return {"result": result, "services": services}

    def get_nf_profile(args: dict[str, Any]) -> dict[str, Any]:
        nf = _nf_token(args["nf_type"])
        hrefs = sbi.query_hrefs(nf, purpose="Query NF registration state")
        if not hrefs:
            return {"result": INACTIVE_TEMPLATE.format(nf=nf)}
        profile = sbi.get_nf_instance(hrefs[0], purpose="Fetch NF profile")
        if profile is None:
            return {"result": INACTIVE_TEMPLATE.format(nf=nf)}
        services = ", ".join(f"{s.service_name}/{s.api_version}" for s in profile.services)
        return {
            "result": f"{nf} profile: instance {profile.nf_instance_id} at {profile.ipv4_address}",
            "nf_instance_id": profile.nf_instance_id,
            "nf_type": profile.nf_type.value,
            "nf_status": profile.nf_status.value,
            "ipv4_address": profile.ipv4_address,
            "services": services,
        }

    server.register_tool(ToolDescriptor(
        name="check_nf_status",
        description=CHECK_NF_STATUS_DESCRIPTION,
        input_schema={"properties": {"nf_type": _string_prop()}, "required": ["nf_type"]},
        output_schema={"properties": {"result": _string_prop()}, "required": ["result"]},
    ), check_nf_status)

    server.register_tool(ToolDescriptor(
        name="list_nf_services",
        description="Lists the services a core network function has registered in the NRF",
        input_schema={"properties": {"nf_type": _string_prop()}, "required": ["nf_type"]},
        output_schema={"properties": {"result": _string_prop(), "services": _string_prop()},
                       "required": ["result"]},
    ), list_nf_services)

    server.register_tool(ToolDescriptor(
        name="get_nf_profile",
        description="Retrieves the NRF registration profile of a core network function",
        input_schema={"properties": {"nf_type": _string_prop()}, "required": ["nf_type"]},
        output_schema={"properties": {
            "result": _string_prop(),
            "nf_instance_id": _string_prop(),
            "nf_type": _string_prop(),
            "nf_status": _string_prop(),
            "ipv4_address": _string_prop(),
            "services": _string_prop(),
        }, "required": ["result"]},
    ), get_nf_profile)

    return server


def build_execution_server(runtime: NfRuntime, host: str = "127.0.0.1",
                           port: int = 9001, sse_responses: bool = True) -> McpToolServer:
    server = McpToolServer("execution-tools", host=host, port=port,
                           sse_responses=sse_responses)

    def control_nf(args: dict[str, Any]) -> dict[str, Any]:
        nf_type = runtime.resolve_nf(args["nf_type"])
        action = LifecycleAction(args["action"])
        outcome = runtime.lifecycle(nf_type, action, source="MCP Tool")
        nf = nf_type.value
        if outcome.already:
            text = (f"{nf} is already running" if action is LifecycleAction.START
                    else f"{nf} is already stopped")
        else:
            past = {"start": "started", "stop": "stopped", "restart": "restarted"}
            text = f"{nf} {past[action.value]}"
        return {"result": text, "state": outcome.state.state.value}

    def update_nf_config(args: dict[str, Any]) -> dict[str, Any]:
        nf_type = runtime.resolve_nf(args["nf_type"])
        old, new = runtime.update_config(nf_type, args["key"], args["value"])
        shown = old if old is not None else "unset"
        return {
            "result": f"{nf_type.value} config {args['key']}: {shown} -> {new}",
            "old_value": old or "",
            "new_value": new,
        }

    def scale_nf(args: dict[str, Any]) -> dict[str, Any]:
        nf_type = runtime.resolve_nf(args["nf_type"])
        replicas = args["replicas"]
        if replicas < 0:
            raise ToolExecutionError("replicas must be >= 0")
        count = runtime.scale(nf_type, replicas, source="MCP Tool")
        return {"result": f"{nf_type.value} scaled to {count} replicas", "replicas": count}

    server.register_tool(ToolDescriptor(
        name="control_nf",
        description="Starts, stops, or restarts a core network function",
        input_schema={"properties": {
            "nf_type": _string_prop(),
            "action": {"type": "string", "enum": ["start", "stop", "restart"]},
        }, "required": ["nf_type", "action"]},
        output_schema={"properties": {"result": _string_prop(), "state": _string_prop()},
                       "required": ["result", "state"]},
    ), control_nf)

    server.register_tool(ToolDescriptor(
        name="update_nf_config",
        description="Updates one configuration key of a core network function",
        input_schema={"properties": {
            "nf_type": _string_prop(),
            "key": _string_prop(),
            "value": _string_prop(),
        }, "required": ["nf_type", "key", "value"]},
        output_schema={"properties": {
            "result": _string_prop(),
            "old_value": _string_prop(),
            "new_value": _string_prop(),
        }, "required": ["result", "new_value"]},
    ), update_nf_config)

    server.register_tool(ToolDescriptor(
        name="scale_nf",
        description="Sets the number of registered replicas of a core network function",
        input_schema={"properties": {
            "nf_type": _string_prop(),
            "replicas": {"type": "integer"},
        }, "required": ["nf_type", "replicas"]},
        output_schema={"properties": {
            "result": _string_prop(),
            "replicas": {"type": "integer"},
        }, "required": ["result", "replicas"]},
    ), scale_nf)

    return server
