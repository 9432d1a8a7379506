"""MCP tool servers and client: JSON-RPC 2.0 over HTTP with SSE-framed responses."""
