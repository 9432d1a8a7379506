"""Agent cards, messages and task objects exchanged over A2A."""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from enum import Enum
from typing import Any
from urllib.parse import urlsplit

from ..errors import MalformedCard


@dataclass
class AgentSkill:
    id: str
    description: str

    def to_dict(self) -> dict[str, str]:
        return {"id": self.id, "description": self.description}


@dataclass
class AgentCard:
    name: str
    description: str
    url: str
    skills: list[AgentSkill] = field(default_factory=list)

    def validate(self) -> None:
        if not self.name:
            raise MalformedCard("card name must be non-empty")
        split = urlsplit(self.url)
        if split.scheme not in ("http", "https") or not split.netloc:
            raise MalformedCard(f"card url is not an http(s) endpoint: {self.url!r}")
        if not self.skills:
            raise MalformedCard("card skills must be non-empty")

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "description": self.description,
                "url": self.url, "skills": [s.to_dict() for s in self.skills]}

    @classmethod
    def from_dict(cls, data: Any) -> "AgentCard":
        if not isinstance(data, dict):
            raise MalformedCard("card body must be a JSON object")
        if "url" not in data:
            raise MalformedCard("card is missing the url field")
        skills = data.get("skills", [])
        if not isinstance(skills, list):
            raise MalformedCard("card skills must be a list")
        card = cls(
            name=str(data.get("name", "")),
            description=str(data.get("description", "")),
            url=str(data["url"]),
            skills=[AgentSkill(str(s.get("id", "")), str(s.get("description", "")))
                    for s in skills if isinstance(s, dict)],
        )
        card.validate()
        return card


class Role(str, Enum):
    USER = "user"    # client-to-server
    AGENT = "agent"  # server-to-client


@dataclass
class A2AMessage:
    role: Role
    text: str
    message_id: str | None = None

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "kind": "message",
            "role": self.role.value,
            "parts": [{"kind": "text", "text": self.text}],
        }
        if self.message_id:
            doc["messageId"] = self.message_id
        return doc

    @classmethod
    def from_dict(cls, data: Any) -> "A2AMessage":
        if not isinstance(data, dict) or data.get("kind") != "message":
            raise ValueError('message kind must be "message"')
        try:
            role = Role(data.get("role"))
        except ValueError:
            raise ValueError(f"unknown role: {data.get('role')!r}") from None
        parts = data.get("parts")
        if not isinstance(parts, list) or not parts:
            raise ValueError("parts must be a non-empty list")
        first = parts[0]
        if not isinstance(first, dict) or first.get("kind") != "text" \
                or not isinstance(first.get("text"), str):
            raise ValueError("parts[0] must be a text part")
        return cls(role=role, text=first["text"], message_id=data.get("messageId"))


class TaskState(str, Enum):
    SUBMITTED = "submitted"
    WORKING = "working"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class A2ATask:
    id: str
    state: TaskState
    message: A2AMessage

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": "task",
            "status": {"state": self.state.value, "message": self.message.to_dict()},
        }

    @classmethod
    def from_dict(cls, data: Any) -> "A2ATask":
        if not isinstance(data, dict) or data.get("kind") != "task":
            raise ValueError('task kind must be "task"')
        status = data.get("status") or {}
        return cls(
            id=str(data.get("id", "")),
            state=TaskState(status.get("state", "failed")),
            message=A2AMessage.from_dict(status.get("message", {})),
        )

    @classmethod
    def completed(cls, text: str) -> "A2ATask":
        return cls(id=str(uuid.uuid4()), state=TaskState.COMPLETED,
                   message=A2AMessage(Role.AGENT, text, str(uuid.uuid4())))

    @classmethod
    def failed(cls, diagnostic: str) -> "A2ATask":
        return cls(id=str(uuid.uuid4()), state=TaskState.FAILED,
                   message=A2AMessage(Role.AGENT, diagnostic, str(uuid.uuid4())))
