"""
Single-threaded deterministic event loop over FIFO channels.

The network is a ported symmetric digraph: a message sent by u through outport p travels along the arc a leaving u
with outport p and arrives at t(a) through the inport of a. Loops are allowed, so runs on covering bases are possible.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Deque, Dict, List, Optional, Sequence, Tuple

from anoncover._settings import settings
from anoncover.consts import EventKinds, SchedulerIds
from anoncover.errors import GraphValidationError, ProtocolInvariantError, StepCapExceededError, TraceMismatchError
from anoncover.graphs.base import PortNumbering, SymDigraph, UGraph, dir_graph
from anoncover.graphs.io import graph_from_dict, graph_to_dict
from anoncover.protocols.base import ProcessContext, Protocol, Send
from anoncover.protocols.registry import get_protocol
from anoncover.simulator.schedulers import Event, Scheduler, make_scheduler
from anoncover.simulator.trace import SimTrace, TraceEvent, digest, to_jsonable

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimConfig:
    """
    Everything a run depends on; equal configurations give bitwise identical traces.

    :param network: Ported symmetric digraph.
    :param protocol: Protocol id, see ProtocolIds.
    :param seed: Seed of the random scheduler.
    :param scheduler: Scheduler id, see SchedulerIds.
    :param n_known: Network size exposed to the processes, defaults to the number of vertices.
    :param inputs: Optional per-vertex input to the first phase.
    :param step_cap: Maximal number of wakeups and deliveries, defaults to settings.step_cap.
    """
    network: SymDigraph
    protocol: str
    seed: int = 0
    scheduler: str = SchedulerIds.random
    n_known: Optional[int] = None
    inputs: Optional[Tuple[Any, ...]] = None
    step_cap: Optional[int] = None

    def __post_init__(self):
        if not self.network.has_ports:
            raise GraphValidationError("simulation network needs outports")
        if self.inputs is not None and len(self.inputs) != self.network.n:
            raise GraphValidationError(f"{len(self.inputs)} inputs for {self.network.n} vertices")

    @classmethod
    def from_graph(cls, g: UGraph, ports: PortNumbering, protocol: str, **kwargs) -> "SimConfig":
        return cls(network=dir_graph(g, ports), protocol=protocol, **kwargs)

    def to_dict(self) -> dict:
        return {
            "network": graph_to_dict(self.network),
            "protocol": self.protocol,
            "seed": self.seed,
            "scheduler": self.scheduler,
            "n_known": self.n_known,
            "inputs": to_jsonable(self.inputs) if self.inputs is not None else None,
            "step_cap": self.step_cap,
        }

    @classmethod
    def from_dict(cls, x: dict) -> "SimConfig":
        network, _ = graph_from_dict(x["network"])
        if not isinstance(network, SymDigraph):
            raise GraphValidationError("configuration network needs to be a ported symmetric digraph")
        return cls(
            network=network,
            protocol=x["protocol"],
            seed=int(x.get("seed", 0)),
            scheduler=x.get("scheduler", SchedulerIds.random),
            n_known=x.get("n_known"),
            inputs=tuple(x["inputs"]) if x.get("inputs") is not None else None,
            step_cap=x.get("step_cap"),
        )


@dataclass
class SimResult:
    """
    Outcome of a run.

    states holds the final states of the last phase reached, phase_states the final states of every phase.
    quiescent is False if the run stopped early, which only happens when a replayed trace is exhausted.
    """
    trace: SimTrace
    states: List[Any]
    phase_states: List[List[Any]] = field(default_factory=list)
    messages_per_phase: List[int] = field(default_factory=list)
    quiescent: bool = True

    @property
    def phases(self) -> int:
        return len(self.phase_states)

    @property
    def messages(self) -> int:
        return sum(self.messages_per_phase)

    def states_digest(self) -> str:
        return digest(self.phase_states)

    def states_dict(self) -> dict:
        return {str(v): to_jsonable(s) for v, s in enumerate(self.states)}

    def to_dict(self) -> dict:
        return {
            "states": self.states_dict(),
            "phases": self.phases,
            "messages": self.messages,
            "messages_per_phase": list(self.messages_per_phase),
            "quiescent": self.quiescent,
            "trace_digest": self.trace.digest(),
            "states_digest": self.states_digest(),
        }


class Simulation:
    """
    Mutable state of one run: process states, channel contents, pending wakeups and the trace.

    Drivers call enabled() and apply(); phase changes happen through next_phase() at quiescence.
    """

    def __init__(self, network: SymDigraph, protocol: Protocol, n_known: Optional[int] = None,
                 inputs: Optional[Sequence[Any]] = None):
        self.network = network
        self.protocol = protocol
        self.phase_protocols = list(protocol.phases())
        for p in self.phase_protocols:
            p.check_network(network)
        self.phase = 0
        n_known = network.n if n_known is None else n_known
        self.ctx = [ProcessContext(degree=network.degree(v), n_known=n_known) for v in range(network.n)]
        first = self.phase_protocols[0]
        self.states = [first.initial_state(self.ctx[v], None if inputs is None else inputs[v])
                       for v in range(network.n)]
        self.channels: Dict[int, Deque[Tuple[Any, str]]] = {a: deque() for a in range(network.n_arcs)}
        self._arc_out = {(network.src(a), network.outport(a)): a for a in range(network.n_arcs)}
        self._arc_in = {(network.tgt(a), network.inport(a)): a for a in range(network.n_arcs)}
        self.pending = set(range(network.n))
        self.trace = SimTrace()
        self.step = 0
        self.messages_per_phase = [0]
        self.phase_states: List[List[Any]] = []

    @property
    def current(self) -> Protocol:
        return self.phase_protocols[self.phase]

    def enabled(self) -> List[Event]:
        events = [Event(EventKinds.wakeup, v) for v in sorted(self.pending)]
        events.extend(sorted(Event(EventKinds.deliver, self.network.tgt(a), self.network.inport(a))
                             for a, q in self.channels.items() if q))
        return events

    def channel_sizes(self) -> List[Tuple[int, int, int]]:
        """(vertex, inport, number of messages in flight) of the non-empty channels, ascending."""
        return sorted((self.network.tgt(a), self.network.inport(a), len(q)) for a, q in self.channels.items() if q)

    def head_digest(self, vertex: int, port: int) -> Optional[str]:
        q = self.channels[self._arc_in[(vertex, port)]]
        return q[0][1] if q else None

    def quiescent(self) -> bool:
        return not self.pending and not any(self.channels.values())

    def _record(self, kind: str, vertex: int, port: Optional[int] = None, dg: Optional[str] = None):
        self.trace.append(TraceEvent(step=self.step, phase=self.phase, kind=kind, vertex=vertex, port=port,
                                     digest=dg))

    def _emit(self, v: int, sends: List[Send]):
        for port, payload in sends:
            a = self._arc_out.get((v, port))
            if a is None:
                raise ProtocolInvariantError(f"process at vertex {v} sent through port {port}, its degree is "
                                             f"{self.network.degree(v)}")
            dg = digest(payload)
            self.channels[a].append((payload, dg))
            self.messages_per_phase[-1] += 1
            self._record(EventKinds.send, v, port, dg)

    def apply(self, event: Event):
        proto = self.current
        v = event.vertex
        before = self.states[v]
        if event.kind == EventKinds.wakeup:
            if v not in self.pending:
                raise TraceMismatchError(f"vertex {v} has no pending wakeup")
            self.pending.discard(v)
            self._record(EventKinds.wakeup, v)
            state, sends = proto.on_wakeup(before, self.ctx[v])
        elif event.kind == EventKinds.deliver:
            a = self._arc_in.get((v, event.port))
            if a is None or not self.channels[a]:
                raise TraceMismatchError(f"no message in flight towards vertex {v} port {event.port}")
            payload, dg = self.channels[a].popleft()
            self._record(EventKinds.deliver, v, event.port, dg)
            state, sends = proto.on_receive(before, event.port, payload, self.ctx[v])
        else:
            raise ValueError(f"event kind {event.kind!r} cannot be scheduled")
        self.step += 1
        self.states[v] = state
        self._emit(v, sends)
        if proto.is_halted(state) and not proto.is_halted(before):
            self._record(EventKinds.halt, v)

    def next_phase(self) -> bool:
        """Closes the current phase at quiescence and starts the next one, if any."""
        self.phase_states.append(list(self.states))
        if self.phase + 1 >= len(self.phase_protocols):
            return False
        self.states = [self.protocol.handoff(self.phase, s, self.ctx[v]) for v, s in enumerate(self.states)]
        self.phase += 1
        self.pending = set(range(self.network.n))
        self.messages_per_phase.append(0)
        log.debug(f"phase {self.phase} starts after {self.step} steps")
        return True

    def result(self, quiescent: bool) -> SimResult:
        phase_states = list(self.phase_states)
        if not quiescent:
            phase_states.append(list(self.states))
        return SimResult(trace=self.trace, states=list(self.states), phase_states=phase_states,
                         messages_per_phase=list(self.messages_per_phase), quiescent=quiescent)


def drive(sim: Simulation, scheduler: Scheduler, step_cap: Optional[int] = None) -> SimResult:
    step_cap = settings.step_cap if step_cap is None else step_cap
    scheduler.start_phase(sim)
    while True:
        if sim.quiescent():
            if not sim.next_phase():
                return sim.result(quiescent=True)
            scheduler.start_phase(sim)
            continue
        event = scheduler.choose(sim)
        if event is None:
            log.debug(f"schedule exhausted after {sim.step} steps")
            return sim.result(quiescent=False)
        if sim.step >= step_cap:
            raise StepCapExceededError(f"no quiescence within {step_cap} steps", trace=sim.trace)
        sim.apply(event)


def run(cfg: SimConfig, protocol: Optional[Protocol] = None, trace: Optional[SimTrace] = None) -> SimResult:
    """
    Runs cfg to quiescence.

    :param cfg: Configuration.
    :param protocol: Protocol object overriding cfg.protocol.
    :param trace: Recorded trace, needed by the replay scheduler.
    :raises StepCapExceededError: carrying the trace so far.
    """
    proto = get_protocol(cfg.protocol) if protocol is None else protocol
    sim = Simulation(cfg.network, proto, n_known=cfg.n_known, inputs=cfg.inputs)
    scheduler = make_scheduler(cfg.scheduler, seed=cfg.seed, trace=trace)
    result = drive(sim, scheduler, step_cap=cfg.step_cap)
    log.debug(f"{proto.id} finished after {sim.step} steps and {result.messages} messages")
    return result


def replay_trace(trace: SimTrace, cfg: SimConfig, protocol: Optional[Protocol] = None) -> SimResult:
    """
    Re-executes the scheduling decisions of trace under cfg.

    A truncated trace yields the states after its last decision.

    :raises TraceMismatchError: if the trace violates FIFO or does not fit cfg.
    """
    trace.check_fifo(cfg.network)
    proto = get_protocol(cfg.protocol) if protocol is None else protocol
    sim = Simulation(cfg.network, proto, n_known=cfg.n_known, inputs=cfg.inputs)
    result = drive(sim, make_scheduler(SchedulerIds.replay, trace=trace), step_cap=cfg.step_cap)
    recorded, replayed = trace.events, result.trace.events
    for i, e in enumerate(recorded):
        if i >= len(replayed) or replayed[i] != e:
            raise TraceMismatchError(f"record {i} of the trace ({e.kind} at vertex {e.vertex}) is not reproduced")
    return result
