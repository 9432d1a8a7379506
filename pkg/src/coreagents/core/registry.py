"""In-memory NF instance registry backing the NRF."""

from __future__ import annotations

import threading
from typing import Any

from ..errors import ValidationError
from .types import NfProfile, NfStatus, NfType
from .uri import build_resource_uri


class NrfRegistry:
    """Shared mutable store of NfProfile records.

    All reads and writes serialize through one lock; handlers and lifecycle
    transitions may call in from concurrent threads.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._profiles: dict[str, NfProfile] = {}

    def register(self, profile: NfProfile) -> bool:
        """Insert or replace by nfInstanceId (idempotent PUT semantics).

        Returns True when the instance was newly created, False on replace.
        """
        profile.validate()
        with self._lock:
            created = profile.nf_instance_id not in self._profiles
            self._profiles[profile.nf_instance_id] = profile
            return created

    def deregister(self, nf_instance_id: str) -> bool:
        """Remove an instance; absent ids are a no-op success."""
        with self._lock:
            return self._profiles.pop(nf_instance_id, None) is not None

    def get(self, nf_instance_id: str) -> NfProfile | None:
        with self._lock:
            return self._profiles.get(nf_instance_id)

    def query(self, nf_type: NfType | str) -> list[NfProfile]:
        """All REGISTERED instances of one type, insertion-ordered."""
        wanted = nf_type.value if isinstance(nf_type, NfType) else str(nf_type)
        with self._lock:
            return [p for p in self._profiles.values()
                    if p.nf_type.value == wanted and p.nf_status is NfStatus.REGISTERED]

    def instances_of(self, nf_type: NfType) -> list[NfProfile]:
        """All instances of one type regardless of status."""
        with self._lock:
            return [p for p in self._profiles.values() if p.nf_type is nf_type]

    def deregister_type(self, nf_type: NfType) -> int:
        with self._lock:
            ids = [p.nf_instance_id for p in self._profiles.values()
                   if p.nf_type is nf_type]
            for iid in ids:
                del self._profiles[iid]
            return len(ids)

    def size(self) -> int:
        with self._lock:
            return len(self._profiles)

    def snapshot(self) -> dict[str, dict[str, Any]]:
        with self._lock:
            return {iid: p.to_dict() for iid, p in self._profiles.items()}


def discovery_document(registry: NrfRegistry, nf_type: str, api_root: str,
                       self_path: str) -> dict[str, Any]:
    """Render the nf-instances search result for one NF type.

    Each item href points at the instance resource under this NRF's apiRoot;
    self echoes the request path-and-query (or "" in excerpt-exact mode,
    which the caller selects by passing self_path="").
    """
    items = [
        {"href": build_resource_uri(api_root, "nnrf-nfm", "v1",
                                    f"nf-instances/{p.nf_instance_id}")}
        for p in registry.query(nf_type)
    ]
    return {"_links": {"item": items, "self": self_path}}


def validate_put(nf_instance_id: str, body: dict[str, Any]) -> NfProfile:
    """Validate a PUT body against the path id and profile invariants."""
    profile = NfProfile.from_dict(body)
    if profile.nf_instance_id != nf_instance_id:
        raise ValidationError(
            f"body nfInstanceId {profile.nf_instance_id!r} does not match path id {nf_instance_id!r}")
    profile.validate()
    return profile
