"""SBI client used by the tool servers (and by untraced status readers)."""

from __future__ import annotations

import json
import uuid
from typing import Any
from urllib.parse import quote, urlsplit

import httpx

from ..trace.events import (Direction, Interface, NullCollector, Op,
                            TraceCollector)
from .h2wire import Http2Client
from .types import NfProfile
from .uri import build_resource_uri, parse_resource_uri


class SbiClient:
    """Issues NRF queries over HTTP/2 (default) or HTTP/1.1 fallback.

    Every exchange is recorded on the trace collector as an SBI
    request/response pair; pass a NullCollector for observability reads
    that must stay out of the workflow trace.
    """

    def __init__(self, api_root: str, collector: TraceCollector | None = None,
                 source: str = "MCP Tool", destination: str = "NRF",
                 transport: str = "h2"):
        self.api_root = api_root.rstrip("/")
        self.collector = collector if collector is not None else NullCollector()
        self.source = source
        self.destination = destination
        self.transport = transport
        split = urlsplit(self.api_root)
        host, _, port = split.netloc.partition(":")
        self._h2 = Http2Client(host, int(port or 80)) if transport == "h2" else None
        self._h1 = httpx.Client(base_url=self.api_root, timeout=10.0) if transport == "h1" else None

    def close(self) -> None:
        if self._h2 is not None:
            self._h2.close()
        if self._h1 is not None:
            self._h1.close()

    def request(self, method: str, target: str, body: bytes = b"",
                purpose: str = "SBI request") -> tuple[int, bytes]:
        corr = str(uuid.uuid4())
        self.collector.record(Interface.SBI, Direction.REQUEST, self.source,
                              self.destination, purpose, Op.SBI_REQUEST, corr)
        if self._h2 is not None:
            headers = [("accept", "application/json")]
            if body:
                headers.append(("content-type", "application/json"))
            resp = self._h2.request(method, target, headers, body)
            status, payload = resp.status, resp.body
        else:
            resp = self._h1.request(method, target, content=body or None,
                                    headers={"accept": "application/json"})
            status, payload = resp.status_code, resp.content
        self.collector.record(Interface.SBI, Direction.RESPONSE, self.destination,
                              self.source, purpose, Op.SBI_REQUEST, corr)
        return status, payload

    # -- NRF operations --------------------------------------------------------

    def query_nf_instances(self, nf_type: str,
                           purpose: str = "Query NF registration state") -> dict[str, Any]:
        status, payload = self.request(
            "GET", f"/nnrf-nfm/v1/nf-instances?nf-type={quote(nf_type, safe='')}",
            purpose=purpose)
        if status != 200:
            raise RuntimeError(f"NRF discovery returned {status}: {payload!r}")
        return json.loads(payload)

    def query_hrefs(self, nf_type: str, purpose: str = "Query NF registration state") -> list[str]:
        doc = self.query_nf_instances(nf_type, purpose=purpose)
        return [item.get("href", "") for item in doc.get("_links", {}).get("item", [])]

    def get_nf_instance(self, href: str,
                        purpose: str = "Fetch NF profile") -> NfProfile | None:
        parsed = parse_resource_uri(href)
        target = f"/{parsed.api_name}/{parsed.api_version}/{parsed.resource_part}"
        status, payload = self.request("GET", target, purpose=purpose)
        if status == 404:
            return None
        if status != 200:
            raise RuntimeError(f"NRF instance fetch returned {status}")
        return NfProfile.from_dict(json.loads(payload))

    def put_nf_instance(self, profile: NfProfile,
                        purpose: str = "Register NF instance") -> int:
        body = json.dumps(profile.to_dict(), separators=(",", ":")).encode()
        status, payload = self.request(
            "PUT", f"/nnrf-nfm/v1/nf-instances/{profile.nf_instance_id}",
            body=body, purpose=purpose)
        if status not in (200, 201):
            raise RuntimeError(f"NRF registration returned {status}: {payload!r}")
        return status

    def delete_nf_instance(self, nf_instance_id: str,
                           purpose: str = "Deregister NF instance") -> int:
        status, _ = self.request(
            "DELETE", f"/nnrf-nfm/v1/nf-instances/{nf_instance_id}", purpose=purpose)
        return status

    def instance_href(self, nf_instance_id: str) -> str:
        return build_resource_uri(self.api_root, "nnrf-nfm", "v1",
                                  f"nf-instances/{nf_instance_id}")
