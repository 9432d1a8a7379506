"""Shared fixtures: ephemeral stacks and canonical workflow expectations."""

from __future__ import annotations

import pytest

from coreagents.config import DeploymentConfig
from coreagents.stack import Stack

REPRESENTATIVE_PROMPT = ("Check the operational status of the AMF and start it "
                         "if it is inactive.")

TABLE_LABELS = ["A1", "A2", "M1", "M2", "S1", "M2'", "A3", "M3", "M4", "M4'"]
TABLE_INTERFACES = ["A2A", "A2A", "MCP", "MCP", "SBI", "MCP", "A2A", "MCP",
                    "MCP", "MCP"]

AGENT_NAMES = ("Host Agent", "Monitoring Agent", "Execution Agent")


@pytest.fixture()
def stack():
    """A fresh stack on OS-assigned ports with zero NF delays."""
    instance = Stack(DeploymentConfig.ephemeral()).up()
    yield instance
    instance.down()


@pytest.fixture(scope="module")
def shared_stack():
    """Module-wide stack for read-mostly integration tests."""
    instance = Stack(DeploymentConfig.ephemeral()).up()
    yield instance
    instance.down()
