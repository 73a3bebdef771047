"""
Leader or co-leader election on trees by leaf elimination.

A process waits until it heard from all but one neighbour and then sends a token to the remaining one; leaves start
right away. A process that heard from every neighbour before sending is the leader. Two neighbours whose tokens cross
on their common edge both become co-leaders.
"""
import logging
from dataclasses import dataclass, replace
from typing import FrozenSet, List, Optional, Tuple

from anoncover.consts import ElectionStatus, ProtocolIds
from anoncover.errors import GraphValidationError
from anoncover.graphs.base import SymDigraph
from anoncover.protocols.base import ProcessContext, Protocol, Send

log = logging.getLogger(__name__)

TOKEN = "tok"


@dataclass(frozen=True)
class ElectionState:
    """
    :param rec: Ports a token arrived through.
    :param status: One of ElectionStatus; leader and co-leader are final.
    :param sent_port: Port the own token was sent through.
    :param woken: Decisions are only taken after wakeup.
    """
    rec: FrozenSet[int] = frozenset()
    status: str = ElectionStatus.idle
    sent_port: Optional[int] = None
    woken: bool = False

    @property
    def elected(self) -> bool:
        return self.status in (ElectionStatus.leader, ElectionStatus.co_leader)


def _decide(state: ElectionState, degree: int) -> Tuple[ElectionState, List[Send]]:
    if not state.woken or state.elected:
        return state, []
    if state.status == ElectionStatus.idle:
        if len(state.rec) == degree:
            return replace(state, status=ElectionStatus.leader), []
        if len(state.rec) == degree - 1:
            p = min(set(range(1, degree + 1)) - state.rec)
            return replace(state, status=ElectionStatus.sent, sent_port=p), [(p, TOKEN)]
        return state, []
    if state.status == ElectionStatus.sent and state.sent_port in state.rec:
        return replace(state, status=ElectionStatus.co_leader), []
    return state, []


def tree_election_step(state: ElectionState, degree: int, port: Optional[int] = None) -> Tuple[ElectionState,
                                                                                                 List[Send]]:
    """
    Handles a wakeup (port None) or the arrival of a token through port.

    Tokens reaching an elected process are ignored; they cannot occur on trees.
    """
    if port is None:
        state = replace(state, woken=True)
    elif not state.elected:
        state = replace(state, rec=state.rec | {port})
    return _decide(state, degree)


class TreeElection(Protocol):
    id = ProtocolIds.election_tree

    def check_network(self, network: SymDigraph):
        if network.has_loops() or not network.is_simple() or network.n_arcs != 2 * (network.n - 1) or \
                not network.is_connected():
            raise GraphValidationError(f"{self.id} runs on trees only, got {network!r}")

    def initial_state(self, ctx: ProcessContext, inp=None) -> ElectionState:
        return ElectionState()

    def on_wakeup(self, state: ElectionState, ctx: ProcessContext):
        return tree_election_step(state, ctx.degree)

    def on_receive(self, state: ElectionState, port: int, payload, ctx: ProcessContext):
        return tree_election_step(state, ctx.degree, port)

    def is_halted(self, state: ElectionState) -> bool:
        return state.elected


def elected(states) -> dict:
    """Vertices per final status, for run summaries."""
    out = {ElectionStatus.leader: [], ElectionStatus.co_leader: []}
    for v, s in enumerate(states):
        if s.status in out:
            out[s.status].append(v)
    return out
