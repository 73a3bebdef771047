"""
Replayable event logs of simulation runs and the canonical payload serialization they are digested from.
"""
import dataclasses
import hashlib
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Deque, Dict, List, Optional

from anoncover.consts import EventKinds
from anoncover.errors import TraceMismatchError
from anoncover.graphs.base import SymDigraph

log = logging.getLogger(__name__)

INPUT_KINDS = (EventKinds.wakeup, EventKinds.deliver)


def to_jsonable(obj: Any) -> Any:
    """Canonical JSON-compatible form: sets become sorted lists, tuples lists, dataclasses dicts of their fields."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (set, frozenset)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items, key=lambda x: json.dumps(x, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__} canonically")


def canonical_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    """Platform independent payload digest, sha256 of the canonical JSON text."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class TraceEvent:
    """
    One trace record.

    wakeup: vertex woke up, port is None.
    deliver: the head message of the channel entering vertex through port was delivered.
    send: vertex sent a message through port.
    halt: the process at vertex reached a halting state.
    """
    step: int
    phase: int
    kind: str
    vertex: int
    port: Optional[int] = None
    digest: Optional[str] = None

    def to_dict(self) -> dict:
        return {"step": self.step, "phase": self.phase, "kind": self.kind, "vertex": self.vertex, "port": self.port,
                "digest": self.digest}

    @classmethod
    def from_dict(cls, x: dict) -> "TraceEvent":
        try:
            return cls(step=int(x["step"]), phase=int(x["phase"]), kind=str(x["kind"]), vertex=int(x["vertex"]),
                       port=None if x.get("port") is None else int(x["port"]), digest=x.get("digest"))
        except (KeyError, TypeError, ValueError) as e:
            raise TraceMismatchError(f"malformed trace record {x!r}: {e}") from e


@dataclass
class SimTrace:
    events: List[TraceEvent] = field(default_factory=list)

    def append(self, event: TraceEvent):
        self.events.append(event)

    def inputs(self) -> List[TraceEvent]:
        """Scheduler decisions, i.e. wakeups and deliveries, in order."""
        return [e for e in self.events if e.kind in INPUT_KINDS]

    def truncated(self, n_inputs: int) -> "SimTrace":
        """Prefix of the trace holding the first n_inputs scheduler decisions and their consequences."""
        out = SimTrace()
        seen = 0
        for e in self.events:
            if e.kind in INPUT_KINDS:
                if seen == n_inputs:
                    break
                seen += 1
            out.append(e)
        return out

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_dict(), sort_keys=True) + "\n" for e in self.events)

    @classmethod
    def from_jsonl(cls, text: str) -> "SimTrace":
        trace = cls()
        for i, line in enumerate(text.splitlines()):
            if not line.strip():
                continue
            try:
                x = json.loads(line)
            except json.JSONDecodeError as e:
                raise TraceMismatchError(f"line {i + 1} of the trace is not JSON: {e}") from e
            trace.append(TraceEvent.from_dict(x))
        return trace

    def digest(self) -> str:
        return hashlib.sha256(self.to_jsonl().encode("utf-8")).hexdigest()

    def count(self, kind: str) -> int:
        return sum(1 for e in self.events if e.kind == kind)

    def check_fifo(self, network: SymDigraph):
        """
        Checks that every delivery hands over the oldest undelivered message sent along its channel.

        Channels are reset at phase boundaries, which are quiescent.

        :raises TraceMismatchError: naming the first offending record.
        """
        channels: Dict[int, Deque[str]] = {}
        phase = None
        for e in self.events:
            if e.phase != phase:
                leftover = [a for a, q in channels.items() if q]
                if leftover:
                    raise TraceMismatchError(f"phase {phase} ended with messages in flight on arcs {leftover}")
                channels = {}
                phase = e.phase
            if e.kind == EventKinds.send:
                a = network.arc_at_outport(e.vertex, e.port)
                channels.setdefault(a, deque()).append(e.digest)
            elif e.kind == EventKinds.deliver:
                a = network.arc_at_inport(e.vertex, e.port)
                queue = channels.get(a)
                if not queue:
                    raise TraceMismatchError(f"step {e.step}: delivery at vertex {e.vertex} port {e.port} without a "
                                             f"message in flight")
                head = queue.popleft()
                if head != e.digest:
                    raise TraceMismatchError(f"step {e.step}: delivery at vertex {e.vertex} port {e.port} does not "
                                             f"match the oldest message of its channel")
