"""NRF SBI endpoints over HTTP/2 prior knowledge and the HTTP/1.1 fallback."""

import concurrent.futures
import json
import uuid

import httpx
import pytest

from coreagents.core.client import SbiClient
from coreagents.core.nrf import SbiServer
from coreagents.core.registry import NrfRegistry
from coreagents.core.types import NfProfile, NfService, NfStatus, NfType

EXCERPT_BODY = b'{"_links":{"item":[],"self":""}}'


def make_profile():
    return NfProfile(str(uuid.uuid4()), NfType.AMF, NfStatus.REGISTERED,
                     "192.168.70.132", [NfService("namf-comm", "v1")])


@pytest.fixture()
def server():
    registry = NrfRegistry()
    instance = SbiServer(registry, port=0, excerpt_exact=True)
    instance.start()
    yield instance
    instance.stop()


@pytest.fixture()
def client(server):
    sbi = SbiClient(server.api_root)
    yield sbi
    sbi.close()


class TestDiscovery:
    def test_unregistered_amf_response_is_byte_exact(self, server, client):
        status, payload = client.request("GET", "/nnrf-nfm/v1/nf-instances?nf-type=AMF")
        assert status == 200
        assert payload == EXCERPT_BODY

    def test_registered_instance_listed_with_href(self, server, client):
        profile = make_profile()
        server.app.registry.register(profile)
        doc = client.query_nf_instances("AMF")
        hrefs = [item["href"] for item in doc["_links"]["item"]]
        assert hrefs == [f"{server.api_root}/nnrf-nfm/v1/nf-instances/{profile.nf_instance_id}"]

    def test_hrefs_resolve_to_registered_profiles(self, server, client):
        profile = make_profile()
        server.app.registry.register(profile)
        href = client.query_hrefs("AMF")[0]
        fetched = client.get_nf_instance(href)
        assert fetched.to_dict() == profile.to_dict()

    def test_self_echoes_path_when_not_excerpt_exact(self):
        registry = NrfRegistry()
        server = SbiServer(registry, port=0, excerpt_exact=False)
        server.start()
        try:
            client = SbiClient(server.api_root)
            doc = client.query_nf_instances("AMF")
            assert doc["_links"]["self"] == "/nnrf-nfm/v1/nf-instances?nf-type=AMF"
            client.close()
        finally:
            server.stop()

    def test_missing_nf_type_is_400(self, server, client):
        status, _ = client.request("GET", "/nnrf-nfm/v1/nf-instances")
        assert status == 400

    def test_malformed_nf_type_is_400(self, server, client):
        status, _ = client.request("GET", "/nnrf-nfm/v1/nf-instances?nf-type=A%3DF%26x")
        assert status == 400


class TestRegistration:
    def test_put_registers_and_returns_201(self, server, client):
        profile = make_profile()
        assert client.put_nf_instance(profile) == 201
        assert client.query_hrefs("AMF")

    def test_put_replace_returns_200(self, server, client):
        profile = make_profile()
        client.put_nf_instance(profile)
        assert client.put_nf_instance(profile) == 200
        assert len(client.query_hrefs("AMF")) == 1

    def test_put_invalid_profile_is_400(self, server, client):
        body = json.dumps({"nfInstanceId": "", "nfType": "AMF",
                           "ipv4Address": "x"}).encode()
        status, _ = client.request("PUT", "/nnrf-nfm/v1/nf-instances/abc", body=body)
        assert status == 400

    def test_put_body_id_mismatch_is_400(self, server, client):
        profile = make_profile()
        other = str(uuid.uuid4())
        status, _ = client.request("PUT", f"/nnrf-nfm/v1/nf-instances/{other}",
                                   body=json.dumps(profile.to_dict()).encode())
        assert status == 400

    def test_delete_removes_and_is_idempotent(self, server, client):
        profile = make_profile()
        client.put_nf_instance(profile)
        assert client.delete_nf_instance(profile.nf_instance_id) == 204
        assert client.delete_nf_instance(profile.nf_instance_id) == 204
        assert client.query_hrefs("AMF") == []

    def test_unknown_instance_get_is_404(self, server, client):
        status, _ = client.request("GET", f"/nnrf-nfm/v1/nf-instances/{uuid.uuid4()}")
        assert status == 404

    def test_unknown_route_is_404(self, server, client):
        status, _ = client.request("GET", "/nothing/here")
        assert status == 404


class TestTransports:
    def test_http1_fallback_on_same_port(self, server):
        response = httpx.get(f"{server.api_root}/nnrf-nfm/v1/nf-instances?nf-type=AMF")
        assert response.status_code == 200
        assert response.content == EXCERPT_BODY
        assert response.http_version == "HTTP/1.1"

    def test_http1_put_and_delete(self, server):
        profile = make_profile()
        put = httpx.put(
            f"{server.api_root}/nnrf-nfm/v1/nf-instances/{profile.nf_instance_id}",
            content=json.dumps(profile.to_dict()),
            headers={"content-type": "application/json"})
        assert put.status_code == 201
        assert httpx.delete(
            f"{server.api_root}/nnrf-nfm/v1/nf-instances/{profile.nf_instance_id}"
        ).status_code == 204

    def test_h1_only_mode(self):
        registry = NrfRegistry()
        server = SbiServer(registry, port=0, excerpt_exact=True, transport="h1")
        server.start()
        try:
            response = httpx.get(f"{server.api_root}/nnrf-nfm/v1/nf-instances?nf-type=AMF")
            assert response.content == EXCERPT_BODY
        finally:
            server.stop()

    def test_h2_client_many_sequential_requests_one_connection(self, server, client):
        for _ in range(20):
            status, payload = client.request(
                "GET", "/nnrf-nfm/v1/nf-instances?nf-type=AMF")
            assert (status, payload) == (200, EXCERPT_BODY)

    def test_concurrent_h2_queries(self, server):
        def query(_):
            sbi = SbiClient(server.api_root)
            try:
                return sbi.request("GET", "/nnrf-nfm/v1/nf-instances?nf-type=AMF")
            finally:
                sbi.close()
        with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(query, range(16)))
        assert all(r == (200, EXCERPT_BODY) for r in results)

    def test_unknown_transport_mode_rejected(self):
        with pytest.raises(ValueError):
            SbiServer(NrfRegistry(), transport="spdy")
