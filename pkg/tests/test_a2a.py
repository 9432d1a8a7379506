"""A2A protocol: cards, message/send, task lifecycle, error mapping."""

import concurrent.futures
import json
import uuid

import httpx
import pytest

from coreagents import jsonrpc
from coreagents.a2a.client import A2AClient
from coreagents.a2a.server import A2AServer, CARD_PATH
from coreagents.a2a.types import A2ATask, AgentCard, AgentSkill, Role, TaskState
from coreagents.errors import (JsonRpcRemoteError, MalformedCard, TaskFailed,
                               Unreachable)
from coreagents.httpbase import HttpEndpoint, HttpResponse


def make_card(name="Echo Agent"):
    return AgentCard(name=name, description="test agent",
                     url="http://localhost:1",
                     skills=[AgentSkill("echo", "repeats text")])


@pytest.fixture()
def echo_server():
    server = A2AServer(make_card(), lambda text: text, port=0)
    server.start()
    yield server
    server.stop()


@pytest.fixture()
def client():
    instance = A2AClient()
    yield instance
    instance.close()


class TestAgentCard:
    def test_fetch_returns_served_card(self, echo_server, client):
        card = client.fetch_agent_card(echo_server.url)
        assert card.name == "Echo Agent"
        assert card.url == echo_server.url
        assert card.url.startswith("http://localhost:")
        assert card.skills[0].id == "echo"

    def test_monitoring_card_advertises_status_inspection(self, client):
        from coreagents.agents.subagent import monitoring_card
        card = monitoring_card()
        assert card.url == "http://localhost:8002"
        assert any("NF status inspection" in s.description for s in card.skills)

    def test_unreachable_endpoint(self, client):
        with pytest.raises(Unreachable):
            client.fetch_agent_card("http://127.0.0.1:1")

    def test_card_missing_url_is_malformed(self, client):
        endpoint = HttpEndpoint("127.0.0.1", 0, lambda req: HttpResponse(
            200, [("content-type", "application/json")],
            json.dumps({"name": "broken", "skills": [{"id": "x"}]}).encode()),
            "bad-card")
        endpoint.start()
        try:
            with pytest.raises(MalformedCard):
                client.fetch_agent_card(endpoint.url)
        finally:
            endpoint.stop()

    def test_card_with_empty_skills_is_malformed(self):
        with pytest.raises(MalformedCard):
            AgentCard.from_dict({"name": "x", "url": "http://h:1", "skills": []})

    def test_card_with_bad_url_is_malformed(self):
        with pytest.raises(MalformedCard):
            AgentCard.from_dict({"name": "x", "url": "not a url",
                                 "skills": [{"id": "s"}]})


class TestMessageSend:
    def test_echo_round_trip(self, echo_server, client):
        task = client.send_message(echo_server.url, "ping")
        assert task.state is TaskState.COMPLETED
        assert task.message.role is Role.AGENT
        assert task.message.text == "ping"

    def test_text_part_fidelity(self, echo_server, client):
        text = "Check ümlauts & <symbols>; keep  spacing\tand\nnewlines."
        task = client.send_message(echo_server.url, text)
        assert task.message.text == text

    def test_response_id_echoes_request_id(self, echo_server):
        request_id = "121aace5-78a6-4fce-adfd-93598a60b67b"
        envelope = jsonrpc.request("message/send", request_id, {
            "message": {"kind": "message", "role": "user",
                        "parts": [{"kind": "text", "text": "hi"}]}})
        reply = httpx.post(echo_server.url + "/", json=envelope).json()
        assert reply["id"] == request_id
        assert reply["jsonrpc"] == "2.0"
        assert reply["result"]["kind"] == "task"
        assert reply["result"]["status"]["state"] == "completed"

    def test_handler_exception_becomes_failed_task(self, client):
        def explode(text):
            raise RuntimeError("boom")
        server = A2AServer(make_card("Failing Agent"), explode, port=0)
        server.start()
        try:
            with pytest.raises(TaskFailed) as err:
                client.send_message(server.url, "anything")
            assert "boom" in err.value.diagnostic
        finally:
            server.stop()

    def test_wrong_jsonrpc_version_is_32600(self, echo_server):
        reply = httpx.post(echo_server.url + "/", json={
            "jsonrpc": "1.0", "id": 1, "method": "message/send",
            "params": {}}).json()
        assert reply["error"]["code"] == jsonrpc.INVALID_REQUEST

    def test_unknown_method_is_32601(self, echo_server):
        reply = httpx.post(echo_server.url + "/", json=jsonrpc.request(
            "message/stream", 2, {})).json()
        assert reply["error"]["code"] == jsonrpc.METHOD_NOT_FOUND

    def test_agent_role_on_request_is_invalid_params(self, echo_server):
        reply = httpx.post(echo_server.url + "/", json=jsonrpc.request(
            "message/send", 3, {"message": {
                "kind": "message", "role": "agent",
                "parts": [{"kind": "text", "text": "x"}]}})).json()
        assert reply["error"]["code"] == jsonrpc.INVALID_PARAMS

    def test_empty_parts_is_invalid_params(self, echo_server):
        reply = httpx.post(echo_server.url + "/", json=jsonrpc.request(
            "message/send", 4, {"message": {"kind": "message", "role": "user",
                                            "parts": []}})).json()
        assert reply["error"]["code"] == jsonrpc.INVALID_PARAMS

    def test_concurrent_sends_get_distinct_task_ids(self, echo_server):
        def send(index):
            client = A2AClient()
            try:
                envelope = jsonrpc.request("message/send", str(uuid.uuid4()), {
                    "message": {"kind": "message", "role": "user",
                                "parts": [{"kind": "text", "text": f"m{index}"}]}})
                reply = httpx.post(echo_server.url + "/", json=envelope).json()
                return reply["result"]["id"]
            finally:
                client.close()
        with concurrent.futures.ThreadPoolExecutor(max_workers=6) as pool:
            task_ids = list(pool.map(send, range(12)))
        assert len(set(task_ids)) == 12

    def test_remote_error_raises(self, echo_server, client):
        with pytest.raises((JsonRpcRemoteError, Unreachable)):
            client.send_message("http://127.0.0.1:1", "hello")


class TestTaskTypes:
    def test_completed_and_failed_shapes(self):
        done = A2ATask.completed("ok")
        assert done.to_dict()["status"]["state"] == "completed"
        assert done.to_dict()["status"]["message"]["role"] == "agent"
        failed = A2ATask.failed("broken")
        assert failed.state is TaskState.FAILED
        assert failed.message.text == "broken"

    def test_round_trip(self):
        task = A2ATask.completed("done")
        assert A2ATask.from_dict(task.to_dict()).message.text == "done"

    def test_card_path_constant(self):
        assert CARD_PATH == "/.well-known/agent.json"
