"""
Spanning tree construction by token traversal from a leader or from two adjacent co-leaders.

The token never crosses the same channel twice in the same direction and goes back to the parent only when nothing
else is left; going back is the acknowledgment that the subtree is complete. A process entered for the first time
joins the tree through the port the token came in and reports in-the-tree, later arrivals are answered with
already-in-the-tree. Co-leaders start with their common edge in the tree and run one traversal each; each one tells
the other when its own traversal is complete.
"""
import logging
from dataclasses import dataclass, replace
from typing import Any, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from anoncover.consts import ProtocolIds, TarryMessages, TarryRoles
from anoncover.errors import ProtocolInvariantError
from anoncover.graphs.base import SymDigraph
from anoncover.protocols.base import ProcessContext, Protocol, Send

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TarryState:
    """
    :param role: One of TarryRoles.
    :param tree: Ports of tree edges, the parent, the children and the co-leader edge included.
    :param other: Ports known to lead to non-tree edges.
    :param parent: Port the first token came in, None for initiators.
    :param children: Ports whose neighbour joined the tree through this process.
    :param used: Ports the token was forwarded through.
    :param co_port: Port towards the other co-leader.
    :param visited: The token has been here; initiators start visited.
    :param started: The own traversal step has begun.
    :param waiting_on: Port of the token currently out, None while not waiting for an answer.
    :param finished: Every port is settled and the parent was acknowledged.
    :param co_acked: The other co-leader reported its traversal complete.
    :param terminated: Termination detected, only ever set at initiators.
    """
    role: str = TarryRoles.none
    tree: FrozenSet[int] = frozenset()
    other: FrozenSet[int] = frozenset()
    parent: Optional[int] = None
    children: FrozenSet[int] = frozenset()
    used: FrozenSet[int] = frozenset()
    co_port: Optional[int] = None
    visited: bool = False
    started: bool = False
    waiting_on: Optional[int] = None
    finished: bool = False
    co_acked: bool = False
    terminated: bool = False

    @property
    def initiator(self) -> bool:
        return self.role != TarryRoles.none


def initial_tarry_state(role: str = TarryRoles.none, co_port: Optional[int] = None) -> TarryState:
    if role == TarryRoles.co_leader:
        if co_port is None:
            raise ValueError("a co-leader needs the port towards the other co-leader")
        return TarryState(role=role, tree=frozenset({co_port}), co_port=co_port, visited=True)
    if role == TarryRoles.leader:
        return TarryState(role=role, visited=True)
    if role != TarryRoles.none:
        raise ValueError(f"role {role!r} not recognized, choose from {[TarryRoles.leader, TarryRoles.co_leader]}")
    return TarryState()


def parse_role(inp: Any) -> TarryState:
    """
    Initial state from a per-vertex input.

    Accepted are None, a role name, a dict with keys role and port, or a pair (role, port).
    """
    if inp is None:
        return initial_tarry_state()
    if isinstance(inp, str):
        return initial_tarry_state(inp)
    if isinstance(inp, dict):
        return initial_tarry_state(inp.get("role", TarryRoles.none), inp.get("port"))
    if isinstance(inp, (list, tuple)) and len(inp) == 2:
        return initial_tarry_state(str(inp[0]), None if inp[1] is None else int(inp[1]))
    raise ValueError(f"cannot read a role from input {inp!r}")


def _move(state: TarryState, degree: int) -> Tuple[TarryState, List[Send]]:
    """Forwards the token through the smallest unsettled port, or completes the own traversal step."""
    free = set(range(1, degree + 1)) - state.used - state.other - state.tree
    if free:
        p = min(free)
        return replace(state, used=state.used | {p}, waiting_on=p), [(p, TarryMessages.token)]
    state = replace(state, finished=True, waiting_on=None)
    if state.role == TarryRoles.leader:
        return replace(state, terminated=True), []
    if state.role == TarryRoles.co_leader:
        return replace(state, terminated=state.co_acked), [(state.co_port, TarryMessages.ack)]
    if state.parent is None:
        raise ProtocolInvariantError("process without parent ran out of moves")
    return state, [(state.parent, TarryMessages.ack)]


def tarry_step(state: TarryState, degree: int, port: Optional[int] = None,
               msg: Optional[str] = None) -> Tuple[TarryState, List[Send]]:
    """Handles a wakeup (port None) or the arrival of msg through port."""
    if port is None:
        if state.initiator and not state.started:
            return _move(replace(state, started=True), degree)
        return state, []
    if msg == TarryMessages.token:
        if state.visited:
            return replace(state, other=state.other | {port}), [(port, TarryMessages.already_in_the_tree)]
        state = replace(state, visited=True, started=True, parent=port, tree=state.tree | {port})
        state, sends = _move(state, degree)
        return state, [(port, TarryMessages.in_the_tree)] + sends
    if msg == TarryMessages.in_the_tree:
        if state.waiting_on != port:
            raise ProtocolInvariantError(f"in-the-tree through port {port} while waiting on {state.waiting_on}")
        return replace(state, tree=state.tree | {port}, children=state.children | {port}), []
    if msg == TarryMessages.already_in_the_tree:
        state = replace(state, other=state.other | {port})
        if state.waiting_on == port:
            return _move(replace(state, waiting_on=None), degree)
        return state, []
    if msg == TarryMessages.ack:
        if state.role == TarryRoles.co_leader and port == state.co_port:
            return replace(state, co_acked=True, terminated=state.finished), []
        if port not in state.children or state.waiting_on != port:
            raise ProtocolInvariantError(f"acknowledgment through port {port}, which is not the active child")
        return _move(replace(state, waiting_on=None), degree)
    raise ProtocolInvariantError(f"message {msg!r} not recognized")


class Tarry(Protocol):
    """Initiators are set through the per-vertex inputs, see parse_role."""
    id = ProtocolIds.tarry

    def initial_state(self, ctx: ProcessContext, inp=None) -> TarryState:
        return parse_role(inp)

    def on_wakeup(self, state: TarryState, ctx: ProcessContext):
        return tarry_step(state, ctx.degree)

    def on_receive(self, state: TarryState, port: int, payload, ctx: ProcessContext):
        return tarry_step(state, ctx.degree, port, payload)

    def is_halted(self, state: TarryState) -> bool:
        return state.terminated


def tree_from_states(network: SymDigraph, states: Sequence[TarryState]) -> List[Tuple[int, int]]:
    """
    Edges {u, v}, u < v, with the connecting ports in the tree sets of both ends.

    :raises ProtocolInvariantError: if an edge is in the tree at one end only.
    """
    edges = set()
    for v, s in enumerate(states):
        for p in s.tree:
            a = network.arc_at_outport(v, p)
            w = network.tgt(a)
            if network.inport(a) not in states[w].tree:
                raise ProtocolInvariantError(f"edge {v}-{w} is in the tree at vertex {v} only")
            edges.add((min(v, w), max(v, w)))
    return sorted(edges)


def is_spanning_tree(n: int, edges: Sequence[Tuple[int, int]]) -> bool:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return nx.is_tree(g)
