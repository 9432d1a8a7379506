"""Agentic control plane for a simulated mobile core network."""

__version__ = "0.1.0"
