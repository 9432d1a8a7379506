"""Cross-interface event tracing, trace tables and latency decomposition."""
