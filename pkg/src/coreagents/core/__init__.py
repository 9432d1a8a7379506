"""Simulated mobile core: NRF registry, SBI transport, NF lifecycle runtime."""
