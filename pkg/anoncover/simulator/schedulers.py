"""
Schedulers pick the next enabled event of a simulation: a pending wakeup or the delivery of a channel head.
"""
import abc
import logging
from collections import deque
from typing import Deque, Iterator, NamedTuple, Optional

import numpy as np

from anoncover.consts import EventKinds, SchedulerIds
from anoncover.errors import TraceMismatchError

log = logging.getLogger(__name__)


class Event(NamedTuple):
    kind: str
    vertex: int
    port: Optional[int] = None


class Scheduler(abc.ABC):

    def start_phase(self, sim):
        """Called when a new phase begins, with all wakeups pending and no message in flight."""
        pass

    @abc.abstractmethod
    def choose(self, sim) -> Optional[Event]:
        """Next event, which needs to be enabled in sim, or None to stop the run."""
        pass


class RandomScheduler(Scheduler):
    """Uniform choice over the enabled events, sorted by (kind, vertex, port), from a seeded generator."""

    def __init__(self, seed: int = 0):
        self.rng = np.random.default_rng(seed)

    def choose(self, sim) -> Optional[Event]:
        enabled = sim.enabled()
        return enabled[int(self.rng.integers(len(enabled)))]


class LockstepScheduler(Scheduler):
    """
    Synchronous rounds.

    A round either wakes all pending processes in vertex order or, if none is pending, delivers every message that is
    in flight at the start of the round: vertex by vertex, port by port, oldest first. Messages sent during a round are
    delivered in the next one.
    """

    def __init__(self):
        self.queue: Deque[Event] = deque()
        self.rounds = 0

    def start_phase(self, sim):
        self.queue.clear()

    def _next_round(self, sim):
        self.rounds += 1
        if sim.pending:
            self.queue.extend(Event(EventKinds.wakeup, v) for v in sorted(sim.pending))
            return
        for v, port, size in sim.channel_sizes():
            self.queue.extend(Event(EventKinds.deliver, v, port) for _ in range(size))

    def choose(self, sim) -> Optional[Event]:
        if not self.queue:
            self._next_round(sim)
        return self.queue.popleft()


class ReplayScheduler(Scheduler):
    """
    Replays the wakeups and deliveries of a recorded trace.

    Every replayed delivery needs to hand over a message with the recorded digest.
    """

    def __init__(self, trace):
        self._events: Iterator = iter(trace.inputs())
        self.replayed = 0

    def choose(self, sim) -> Optional[Event]:
        record = next(self._events, None)
        if record is None:
            return None
        if record.phase != sim.phase:
            raise TraceMismatchError(f"step {record.step}: recorded phase {record.phase}, simulation is in phase "
                                     f"{sim.phase}")
        event = Event(record.kind, record.vertex, record.port)
        if event not in sim.enabled():
            raise TraceMismatchError(f"step {record.step}: {record.kind} at vertex {record.vertex} port {record.port} "
                                     f"is not enabled")
        if record.kind == EventKinds.deliver and sim.head_digest(record.vertex, record.port) != record.digest:
            raise TraceMismatchError(f"step {record.step}: message at the head of port {record.port} of vertex "
                                     f"{record.vertex} differs from the recorded one")
        self.replayed += 1
        return event


SCHEDULERS = {
    SchedulerIds.random: RandomScheduler,
    SchedulerIds.lockstep: LockstepScheduler,
    SchedulerIds.replay: ReplayScheduler,
}


def make_scheduler(name: str, seed: int = 0, trace=None) -> Scheduler:
    if name not in SCHEDULERS:
        raise ValueError(f"scheduler {name!r} not recognized, choose from {list(SCHEDULERS.keys())}")
    if name == SchedulerIds.random:
        return RandomScheduler(seed=seed)
    if name == SchedulerIds.replay:
        if trace is None:
            raise ValueError("replay scheduler needs a trace")
        return ReplayScheduler(trace=trace)
    return LockstepScheduler()
