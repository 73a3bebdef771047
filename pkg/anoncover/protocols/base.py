"""
Interface of anonymous message passing protocols.

Handlers are pure: they map (local state, event) to (new state, sends) and never see vertex ids. A send is a pair
(outport, payload).
"""
import abc
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

from anoncover.graphs.base import SymDigraph

Send = Tuple[int, Any]


@dataclass(frozen=True)
class ProcessContext:
    """What a process knows about its environment: its degree and, if the protocol needs it, the network size."""
    degree: int
    n_known: Optional[int] = None


class Protocol(abc.ABC):
    """
    A protocol runs in one or more phases separated by global quiescence.

    Single-phase protocols implement the handlers directly. Composite protocols return their phases and implement
    handoff, the local transformation of a final state of one phase into the initial state of the next.
    """

    id: str = ""

    def phases(self) -> Sequence["Protocol"]:
        return [self]

    def handoff(self, phase: int, state: Any, ctx: ProcessContext) -> Any:
        raise NotImplementedError(f"{type(self).__name__} has a single phase")

    @abc.abstractmethod
    def initial_state(self, ctx: ProcessContext, inp: Any = None) -> Any:
        pass

    @abc.abstractmethod
    def on_wakeup(self, state: Any, ctx: ProcessContext) -> Tuple[Any, List[Send]]:
        pass

    @abc.abstractmethod
    def on_receive(self, state: Any, port: int, payload: Any, ctx: ProcessContext) -> Tuple[Any, List[Send]]:
        pass

    def check_network(self, network: SymDigraph):
        """Raises GraphValidationError if the protocol is undefined on network."""
        pass

    def is_halted(self, state: Any) -> bool:
        return False
