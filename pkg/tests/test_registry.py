"""NRF registry semantics: registration, discovery, idempotence."""

import uuid

import pytest

from coreagents.core.registry import (NrfRegistry, discovery_document,
                                      validate_put)
from coreagents.core.types import NfProfile, NfService, NfStatus, NfType
from coreagents.errors import ValidationError


def make_profile(nf_type=NfType.AMF, instance_id=None, status=NfStatus.REGISTERED,
                 ipv4="192.168.70.132", services=None):
    if services is None:
        services = [NfService("namf-comm", "v1")]
    return NfProfile(
        nf_instance_id=str(uuid.uuid4()) if instance_id is None else instance_id,
        nf_type=nf_type,
        nf_status=status,
        ipv4_address=ipv4,
        services=services,
    )


class TestValidation:
    def test_empty_instance_id_rejected(self):
        with pytest.raises(ValidationError):
            NrfRegistry().register(make_profile(instance_id=""))

    def test_non_uuid_instance_id_rejected(self):
        with pytest.raises(ValidationError):
            NrfRegistry().register(make_profile(instance_id="amf-1"))

    def test_bad_ipv4_rejected(self):
        with pytest.raises(ValidationError):
            NrfRegistry().register(make_profile(ipv4="not-an-ip"))

    def test_control_plane_nf_needs_services(self):
        with pytest.raises(ValidationError):
            NrfRegistry().register(make_profile(services=[]))

    def test_upf_may_have_no_services(self):
        registry = NrfRegistry()
        registry.register(make_profile(nf_type=NfType.UPF, ipv4="192.168.70.134",
                                       services=[]))
        assert len(registry.query(NfType.UPF)) == 1

    def test_service_version_pattern(self):
        with pytest.raises(ValidationError):
            NfService("namf-comm", "one").validate()
        NfService("namf-comm", "v1").validate()

    def test_put_body_id_must_match_path(self):
        profile = make_profile()
        with pytest.raises(ValidationError):
            validate_put(str(uuid.uuid4()), profile.to_dict())


class TestRegistryOperations:
    def test_register_then_query_contains_instance(self):
        registry = NrfRegistry()
        profile = make_profile()
        registry.register(profile)
        # Oracle: direct lookup of what we just inserted.
        found = registry.query("AMF")
        assert [p.nf_instance_id for p in found] == [profile.nf_instance_id]

    def test_repeated_registration_is_idempotent(self):
        registry = NrfRegistry()
        profile = make_profile()
        for _ in range(3):
            registry.register(profile)
        assert registry.size() == 1
        assert registry.snapshot() == {profile.nf_instance_id: profile.to_dict()}

    def test_replacement_updates_record(self):
        registry = NrfRegistry()
        profile = make_profile()
        registry.register(profile)
        replacement = make_profile(instance_id=profile.nf_instance_id,
                                   ipv4="192.168.70.99")
        registry.register(replacement)
        assert registry.get(profile.nf_instance_id).ipv4_address == "192.168.70.99"
        assert registry.size() == 1

    def test_deregister_then_query_empty(self):
        registry = NrfRegistry()
        profile = make_profile()
        registry.register(profile)
        registry.deregister(profile.nf_instance_id)
        assert registry.query("AMF") == []

    def test_deregister_absent_is_noop(self):
        registry = NrfRegistry()
        profile = make_profile()
        registry.register(profile)
        before = registry.snapshot()
        assert registry.deregister("00000000-0000-0000-0000-000000000000") is False
        assert registry.snapshot() == before

    def test_deregister_twice_same_as_once(self):
        registry = NrfRegistry()
        profile = make_profile()
        registry.register(profile)
        registry.deregister(profile.nf_instance_id)
        registry.deregister(profile.nf_instance_id)
        assert registry.size() == 0

    def test_suspended_instances_not_discovered(self):
        registry = NrfRegistry()
        registry.register(make_profile(status=NfStatus.SUSPENDED))
        assert registry.query("AMF") == []
        assert len(registry.instances_of(NfType.AMF)) == 1

    def test_query_never_registered_type_is_empty(self):
        assert NrfRegistry().query("UDM") == []


class TestDiscoveryDocument:
    def test_empty_doc_shape(self):
        doc = discovery_document(NrfRegistry(), "AMF", "http://127.0.0.1:8080", "")
        assert doc == {"_links": {"item": [], "self": ""}}

    def test_hrefs_render_from_registry_records(self):
        registry = NrfRegistry()
        profiles = [make_profile(), make_profile()]
        for profile in profiles:
            registry.register(profile)
        doc = discovery_document(registry, "AMF", "http://nrf:8080", "/x")
        # Oracle: the href template applied to each registered record.
        expected = [f"http://nrf:8080/nnrf-nfm/v1/nf-instances/{p.nf_instance_id}"
                    for p in profiles]
        assert [i["href"] for i in doc["_links"]["item"]] == expected
        assert doc["_links"]["self"] == "/x"

    def test_no_hrefs_for_other_types(self):
        registry = NrfRegistry()
        registry.register(make_profile(nf_type=NfType.SMF, ipv4="192.168.70.133",
                                       services=[NfService("nsmf-pdusession", "v1")]))
        doc = discovery_document(registry, "AMF", "http://nrf:8080", "")
        assert doc["_links"]["item"] == []
