"""Domain types for the simulated mobile core."""

from __future__ import annotations

import re
import uuid
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from ..errors import ValidationError


class NfType(str, Enum):
    AMF = "AMF"
    SMF = "SMF"
    UPF = "UPF"
    UDM = "UDM"
    UDR = "UDR"
    AUSF = "AUSF"
    NRF = "NRF"


class NfStatus(str, Enum):
    REGISTERED = "REGISTERED"
    SUSPENDED = "SUSPENDED"


class RuntimeState(str, Enum):
    STOPPED = "Stopped"
    STARTING = "Starting"
    RUNNING = "Running"
    STOPPING = "Stopping"


class LifecycleAction(str, Enum):
    START = "start"
    STOP = "stop"
    RESTART = "restart"


_API_VERSION_RE = re.compile(r"^v\d+$")

_IPV4_RE = re.compile(r"^(\d{1,3})\.(\d{1,3})\.(\d{1,3})\.(\d{1,3})$")


@dataclass(frozen=True)
class NfService:
    service_name: str   # e.g. "namf-comm"
    api_version: str    # e.g. "v1"

    def validate(self) -> None:
        if not self.service_name:
            raise ValidationError("serviceName must be non-empty")
        if not _API_VERSION_RE.match(self.api_version):
            raise ValidationError(f"apiVersion must match v<digits>, got {self.api_version!r}")

    def to_dict(self) -> dict[str, str]:
        return {"serviceName": self.service_name, "apiVersion": self.api_version}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NfService":
        return cls(service_name=str(data.get("serviceName", "")),
                   api_version=str(data.get("apiVersion", "")))


@dataclass
class NfProfile:
    """Registration record held by the NRF for one NF instance."""

    nf_instance_id: str
    nf_type: NfType
    nf_status: NfStatus
    ipv4_address: str
    services: list[NfService] = field(default_factory=list)

    def validate(self) -> None:
        if not self.nf_instance_id:
            raise ValidationError("nfInstanceId must be non-empty")
        try:
            uuid.UUID(self.nf_instance_id)
        except ValueError:
            raise ValidationError(f"nfInstanceId is not a UUID: {self.nf_instance_id!r}") from None
        if not _IPV4_RE.match(self.ipv4_address):
            raise ValidationError(f"ipv4Address is not dotted-quad: {self.ipv4_address!r}")
        # UPF exposes no SBI services; every other NF must declare at least one.
        if self.nf_type is not NfType.UPF and not self.services:
            raise ValidationError(f"services must be non-empty for {self.nf_type.value}")
        for service in self.services:
            service.validate()

    def to_dict(self) -> dict[str, Any]:
        return {
            "nfInstanceId": self.nf_instance_id,
            "nfType": self.nf_type.value,
            "nfStatus": self.nf_status.value,
            "ipv4Address": self.ipv4_address,
            "services": [s.to_dict() for s in self.services],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NfProfile":
        if not isinstance(data, dict):
            raise ValidationError("profile body must be a JSON object")
        try:
            nf_type = NfType(data.get("nfType", ""))
        except ValueError:
            raise ValidationError(f"unknown nfType: {data.get('nfType')!r}") from None
        try:
            nf_status = NfStatus(data.get("nfStatus", "REGISTERED"))
        except ValueError:
            raise ValidationError(f"unknown nfStatus: {data.get('nfStatus')!r}") from None
        services = data.get("services", [])
        if not isinstance(services, list):
            raise ValidationError("services must be a list")
        return cls(
            nf_instance_id=str(data.get("nfInstanceId", "")),
            nf_type=nf_type,
            nf_status=nf_status,
            ipv4_address=str(data.get("ipv4Address", "")),
            services=[NfService.from_dict(s) for s in services],
        )


@dataclass
class NfRuntimeState:
    """Observable runtime state of one simulated NF."""

    nf_type: NfType
    state: RuntimeState
    backend_handle: str = ""

    def to_dict(self) -> dict[str, str]:
        return {"nfType": self.nf_type.value, "state": self.state.value,
                "backendHandle": self.backend_handle}


@dataclass
class LifecycleOutcome:
    """Result of driving one lifecycle action to completion."""

    nf_type: NfType
    action: LifecycleAction
    state: NfRuntimeState
    already: bool = False  # start on Running / stop on Stopped no-op
