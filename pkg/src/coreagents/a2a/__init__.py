"""Agent-to-agent protocol: agent cards, message/send, task objects."""
