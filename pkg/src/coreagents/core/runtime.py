"""NF lifecycle runtime: per-NF state machines coupled to the NRF registry.

Reaching Running registers the NF's profile with the NRF; reaching Stopped
deregisters every instance of that type. The default backend simulates
process start/stop in-process with configurable delays; a command backend
can shell out to a container runtime instead.
"""

from __future__ import annotations

import logging
import subprocess
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Any

from ..errors import BackendFailure, UnknownNf, ValidationError
from ..trace.events import Direction, Interface, Op, TraceCollector, TraceEvent
from .registry import NrfRegistry
from .types import (LifecycleAction, LifecycleOutcome, NfProfile,
                    NfRuntimeState, NfService, NfStatus, NfType, RuntimeState)

logger = logging.getLogger("coreagents.runtime")


class NfBackend:
    """Runtime backend interface: how an NF actually starts and stops."""

    def start(self, nf_type: NfType) -> str:
        raise NotImplementedError

    def stop(self, nf_type: NfType, handle: str) -> None:
        raise NotImplementedError


class InProcessBackend(NfBackend):
    """Deterministic simulated processes with per-NF start/stop delays."""

    def __init__(self, start_delays: dict[NfType, float] | None = None,
                 stop_delays: dict[NfType, float] | None = None):
        self.start_delays = dict(start_delays or {})
        self.stop_delays = dict(stop_delays or {})
        self._counter = 0
        self.fail_next: set[NfType] = set()  # test hook

    def start(self, nf_type: NfType) -> str:
        if nf_type in self.fail_next:
            self.fail_next.discard(nf_type)
            raise BackendFailure(f"simulated start failure for {nf_type.value}")
        time.sleep(self.start_delays.get(nf_type, 0.0))
        self._counter += 1
        return f"proc-{nf_type.value.lower()}-{self._counter}"

    def stop(self, nf_type: NfType, handle: str) -> None:
        time.sleep(self.stop_delays.get(nf_type, 0.0))


class CommandBackend(NfBackend):
    """Shells out to a container runtime (argv templates with {nf} holes)."""

    def __init__(self, start_argv: list[str], stop_argv: list[str]):
        self.start_argv = start_argv
        self.stop_argv = stop_argv

    def _run(self, argv: list[str], nf_type: NfType) -> None:
        cmd = [part.format(nf=nf_type.value.lower()) for part in argv]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        if proc.returncode != 0:
            raise BackendFailure(
                f"command {' '.join(cmd)} exited {proc.returncode}: {proc.stderr.strip()}")

    def start(self, nf_type: NfType) -> str:
        self._run(self.start_argv, nf_type)
        return f"container-{nf_type.value.lower()}"

    def stop(self, nf_type: NfType, handle: str) -> None:
        self._run(self.stop_argv, nf_type)


@dataclass
class NfSpec:
    """Static deployment facts for one simulated NF."""

    nf_type: NfType
    ipv4_address: str
    services: list[NfService] = field(default_factory=list)

    def make_profile(self, instance_id: str) -> NfProfile:
        return NfProfile(
            nf_instance_id=instance_id,
            nf_type=self.nf_type,
            nf_status=NfStatus.REGISTERED,
            ipv4_address=self.ipv4_address,
            services=list(self.services),
        )


def default_nf_specs() -> dict[NfType, NfSpec]:
    def svc(*names: str) -> list[NfService]:
        return [NfService(n, "v1") for n in names]

    return {
        NfType.AMF: NfSpec(NfType.AMF, "192.168.70.132", svc("namf-comm", "namf-evts")),
        NfType.SMF: NfSpec(NfType.SMF, "192.168.70.133", svc("nsmf-pdusession")),
        NfType.UPF: NfSpec(NfType.UPF, "192.168.70.134", []),
        NfType.UDR: NfSpec(NfType.UDR, "192.168.70.136", svc("nudr-dr")),
        NfType.UDM: NfSpec(NfType.UDM, "192.168.70.137", svc("nudm-sdm", "nudm-uecm")),
        NfType.AUSF: NfSpec(NfType.AUSF, "192.168.70.138", svc("nausf-auth")),
    }


NRF_SPEC = NfSpec(NfType.NRF, "192.168.70.130", [NfService("nnrf-nfm", "v1"),
                                                 NfService("nnrf-disc", "v1")])


class NfRuntime:
    """Drives the lifecycle state machines for a set of deployed NFs.

    Transitions for the same NF serialize on a per-NF lock; distinct NFs may
    transition in parallel. The NRF is not part of the controllable set.
    """

    def __init__(self, registry: NrfRegistry, specs: dict[NfType, NfSpec] | None = None,
                 backend: NfBackend | None = None,
                 collector: TraceCollector | None = None):
        self.registry = registry
        self.specs = specs if specs is not None else default_nf_specs()
        self.backend = backend or InProcessBackend()
        self.collector = collector if collector is not None else TraceCollector()
        self._states: dict[NfType, NfRuntimeState] = {
            t: NfRuntimeState(nf_type=t, state=RuntimeState.STOPPED)
            for t in self.specs
        }
        self._instance_ids: dict[NfType, str] = {
            t: str(uuid.uuid4()) for t in self.specs
        }
        self._locks: dict[NfType, threading.RLock] = {t: threading.RLock() for t in self.specs}
        self.config_store: dict[NfType, dict[str, str]] = {t: {} for t in self.specs}

    # -- state access ---------------------------------------------------------

    def state_of(self, nf_type: NfType) -> NfRuntimeState:
        if nf_type not in self._states:
            raise UnknownNf(f"{nf_type.value} is not deployed")
        return self._states[nf_type]

    def states(self) -> dict[NfType, NfRuntimeState]:
        return dict(self._states)

    def instance_id(self, nf_type: NfType) -> str:
        return self._instance_ids[nf_type]

    def resolve_nf(self, name: str) -> NfType:
        try:
            nf_type = NfType(name.upper())
        except ValueError:
            raise UnknownNf(f"unknown NF type: {name!r}") from None
        if nf_type not in self.specs:
            raise UnknownNf(f"{nf_type.value} is not deployed")
        return nf_type

    # -- lifecycle ------------------------------------------------------------

    def lifecycle(self, nf_type: NfType, action: LifecycleAction,
                  source: str = "System") -> LifecycleOutcome:
        """Drive one start/stop/restart action to its terminal state."""
        if nf_type is NfType.NRF:
            raise UnknownNf("NRF is not lifecycle-controllable")
        if nf_type not in self.specs:
            raise UnknownNf(f"{nf_type.value} is not deployed")
        with self._locks[nf_type]:
            corr = str(uuid.uuid4())
            self._trace_lifecycle(Direction.REQUEST, source, nf_type,
                                  f"{action.value.capitalize()} {nf_type.value}", corr)
            outcome = self._apply(nf_type, action, source)
            done = ("already " if outcome.already else "") + _past_tense(action)
            self._trace_lifecycle(Direction.RESPONSE, source, nf_type,
                                  f"{nf_type.value} {done}", corr)
            return outcome

    def _apply(self, nf_type: NfType, action: LifecycleAction, source: str) -> LifecycleOutcome:
        state = self._states[nf_type]
        if action is LifecycleAction.START:
            if state.state is RuntimeState.RUNNING:
                return LifecycleOutcome(nf_type, action, state, already=True)
            self._start(nf_type)
            return LifecycleOutcome(nf_type, action, state)
        if action is LifecycleAction.STOP:
            if state.state is RuntimeState.STOPPED:
                return LifecycleOutcome(nf_type, action, state, already=True)
            self._stop(nf_type)
            return LifecycleOutcome(nf_type, action, state)
        # restart: stop if running, then start
        if state.state is RuntimeState.RUNNING:
            self._stop(nf_type)
        self._start(nf_type)
        return LifecycleOutcome(nf_type, action, state)

    def _start(self, nf_type: NfType) -> None:
        state = self._states[nf_type]
        state.state = RuntimeState.STARTING
        try:
            handle = self.backend.start(nf_type)
        except BackendFailure:
            state.state = RuntimeState.STOPPED
            raise
        except Exception as exc:  # backend bug surfaces as BackendFailure
            state.state = RuntimeState.STOPPED
            raise BackendFailure(str(exc)) from exc
        state.backend_handle = handle
        state.state = RuntimeState.RUNNING
        self._register(nf_type)

    def _stop(self, nf_type: NfType) -> None:
        state = self._states[nf_type]
        state.state = RuntimeState.STOPPING
        try:
            self.backend.stop(nf_type, state.backend_handle)
        except BackendFailure:
            state.state = RuntimeState.RUNNING
            raise
        except Exception as exc:
            state.state = RuntimeState.RUNNING
            raise BackendFailure(str(exc)) from exc
        state.backend_handle = ""
        state.state = RuntimeState.STOPPED
        self._deregister(nf_type)

    def _register(self, nf_type: NfType) -> None:
        profile = self.specs[nf_type].make_profile(self._instance_ids[nf_type])
        self.registry.register(profile)
        corr = str(uuid.uuid4())
        for direction in (Direction.REQUEST, Direction.RESPONSE):
            self.collector.record(Interface.SYS, direction, nf_type.value, "NRF",
                                  f"Register {nf_type.value} with NRF", Op.REGISTER, corr)

    def _deregister(self, nf_type: NfType) -> None:
        self.registry.deregister_type(nf_type)
        corr = str(uuid.uuid4())
        for direction in (Direction.REQUEST, Direction.RESPONSE):
            self.collector.record(Interface.SYS, direction, nf_type.value, "NRF",
                                  f"Deregister {nf_type.value} from NRF", Op.DEREGISTER, corr)

    def _trace_lifecycle(self, direction: Direction, source: str, nf_type: NfType,
                         purpose: str, corr: str) -> None:
        self.collector.record_event(TraceEvent(
            interface=Interface.SYS, direction=direction, source=source,
            destination=f"{nf_type.value} runtime", purpose=purpose,
            op=Op.LIFECYCLE, correlation_id=corr))

    # -- config and scale -----------------------------------------------------

    def update_config(self, nf_type: NfType, key: str, value: str) -> tuple[str | None, str]:
        if nf_type not in self.specs:
            raise UnknownNf(f"{nf_type.value} is not deployed")
        if not key:
            raise ValidationError("config key must be non-empty")
        with self._locks[nf_type]:
            old = self.config_store[nf_type].get(key)
            self.config_store[nf_type][key] = value
            return old, value

    def scale(self, nf_type: NfType, replicas: int, source: str = "System") -> int:
        """Set the number of registered instances of one NF type.

        replicas=0 stops the NF; replicas>=1 ensures it is running and keeps
        exactly that many REGISTERED profiles (extras get fresh instance ids).
        """
        if nf_type not in self.specs:
            raise UnknownNf(f"{nf_type.value} is not deployed")
        if replicas < 0:
            raise ValidationError("replicas must be >= 0")
        with self._locks[nf_type]:
            if replicas == 0:
                if self._states[nf_type].state is RuntimeState.RUNNING:
                    self.lifecycle(nf_type, LifecycleAction.STOP, source=source)
                return 0
            if self._states[nf_type].state is not RuntimeState.RUNNING:
                self.lifecycle(nf_type, LifecycleAction.START, source=source)
            current = self.registry.query(nf_type)
            base_id = self._instance_ids[nf_type]
            extras = [p for p in current if p.nf_instance_id != base_id]
            while 1 + len(extras) < replicas:
                profile = self.specs[nf_type].make_profile(str(uuid.uuid4()))
                self.registry.register(profile)
                extras.append(profile)
            while 1 + len(extras) > replicas:
                victim = extras.pop()
                self.registry.deregister(victim.nf_instance_id)
            return len(self.registry.query(nf_type))


def _past_tense(action: LifecycleAction) -> str:
    return {LifecycleAction.START: "started",
            LifecycleAction.STOP: "stopped",
            LifecycleAction.RESTART: "restarted"}[action]
