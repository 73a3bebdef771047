"""
Two-phase protocols built on the enumeration protocol.

Both start with a run of the enumeration protocol to quiescence; each process then rebuilds the quotient graph from
its mailbox. The spanning tree protocol turns the quotient into a leader or a co-leader pair and continues with the
token traversal, the topology protocol lifts the quotient back to the network size and outputs the lift if it is the
only simple connected one.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from anoncover._settings import settings
from anoncover.consts import ProtocolIds, SpanningTreeDecisions, TarryRoles
from anoncover.errors import ProtocolInvariantError
from anoncover.graphs.base import SymDigraph
from anoncover.graphs.io import dump_graph
from anoncover.lifts.enumerate import enumerate_lifts
from anoncover.protocols.base import ProcessContext, Protocol
from anoncover.protocols.mazurkiewicz import MazState, Mazurkiewicz, build_quotient_from_mailbox
from anoncover.protocols.tarry import Tarry, TarryState, initial_tarry_state, is_spanning_tree, tree_from_states

log = logging.getLogger(__name__)


def _n_known(ctx: ProcessContext) -> int:
    if ctx.n_known is None:
        raise ProtocolInvariantError("composite protocols need the network size")
    return ctx.n_known


def role_from_quotient(state: MazState, n: int) -> TarryState:
    """
    Initial traversal state of a process after the enumeration phase.

    With k = n the process numbered 1 leads. With 2k = n and a loop in the quotient, the two processes numbered by the
    smallest loop vertex are adjacent; each finds the port towards the other as the triple of its view that carries
    its own number. Otherwise nobody initiates.
    """
    quotient = build_quotient_from_mailbox(state)
    k = quotient.k
    if k == n:
        return initial_tarry_state(TarryRoles.leader if state.number == 1 else TarryRoles.none)
    if 2 * k == n and quotient.graph.has_loops():
        smallest = min(quotient.graph.loop_vertices()) + 1
        if state.number != smallest:
            return initial_tarry_state()
        ports = sorted(q for m, p, q in state.view if m == smallest)
        return initial_tarry_state(TarryRoles.co_leader, ports[0])
    return initial_tarry_state()


class _Composite(Protocol):
    """Enumeration phase followed by second, the handoff between them is local to every process."""

    def __init__(self, second: Protocol):
        self._phases = [Mazurkiewicz(), second]

    def phases(self) -> Sequence[Protocol]:
        return self._phases

    def initial_state(self, ctx: ProcessContext, inp=None):
        return self._phases[0].initial_state(ctx, inp)

    def on_wakeup(self, state, ctx: ProcessContext):
        raise NotImplementedError(f"{self.id} is driven phase by phase")

    def on_receive(self, state, port: int, payload, ctx: ProcessContext):
        raise NotImplementedError(f"{self.id} is driven phase by phase")


class SpanningTreeComposite(_Composite):
    id = ProtocolIds.spanning_tree

    def __init__(self):
        super().__init__(Tarry())

    def handoff(self, phase: int, state: MazState, ctx: ProcessContext) -> TarryState:
        return role_from_quotient(state, _n_known(ctx))


@dataclass
class SpanningTreeOutcome:
    """
    decision is leader, co-leaders or manifest; a manifest means the quotient neither has n vertices nor is a 2-sheeted
    base with a loop, so no initiator could be chosen.
    """
    decision: str
    k: int
    n: int
    initiators: List[int] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)
    valid_tree: bool = False
    manifest: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "decision": self.decision,
            "k": self.k,
            "n": self.n,
            "initiators": list(self.initiators),
            "edges": [list(e) for e in self.edges],
            "valid_tree": self.valid_tree,
            "manifest": self.manifest,
        }


def spanning_tree_outcome(result, network: SymDigraph) -> SpanningTreeOutcome:
    """Summary of a finished run of SpanningTreeComposite."""
    maz_states, tarry_states = result.phase_states[0], result.phase_states[1]
    k = max(s.number for s in maz_states)
    n = network.n
    leaders = [v for v, s in enumerate(tarry_states) if s.role == TarryRoles.leader]
    co_leaders = [v for v, s in enumerate(tarry_states) if s.role == TarryRoles.co_leader]
    if not leaders and not co_leaders:
        reason = f"quotient has {k} vertices for {n} processes" if 2 * k != n else \
            f"quotient has {k} vertices for {n} processes but no loop"
        log.warning(f"no initiator could be chosen: {reason}")
        return SpanningTreeOutcome(decision=SpanningTreeDecisions.manifest, k=k, n=n, manifest=reason)
    edges = tree_from_states(network, tarry_states)
    return SpanningTreeOutcome(
        decision=SpanningTreeDecisions.leader if leaders else SpanningTreeDecisions.co_leaders,
        k=k,
        n=n,
        initiators=leaders or co_leaders,
        edges=edges,
        valid_tree=is_spanning_tree(n, edges),
    )


@dataclass(frozen=True)
class TopologyState:
    """
    Output of a process of the topology protocol.

    :param output: SymDigraph JSON of the recognized graph, None if it was not unique.
    :param classes: Number of simple connected lifts of the quotient found.
    :param complete: The lift enumeration was not cut by its budget.
    """
    number: int
    k: int
    q: int
    classes: int
    complete: bool
    output: Optional[str] = None

    @property
    def ambiguous(self) -> bool:
        return self.classes >= 2


def recognize(state: MazState, n: int, budget: Optional[int] = None) -> TopologyState:
    """
    Lifts the quotient of state to n vertices; processes with equal mailboxes share one enumeration.

    :param budget: Lift budget, defaults to settings.lift_budget.
    """
    return _recognize(state, n, settings.lift_budget if budget is None else budget)


@lru_cache(maxsize=256)
def _recognize(state: MazState, n: int, budget: int) -> TopologyState:
    quotient = build_quotient_from_mailbox(state)
    if n % quotient.k != 0:
        raise ProtocolInvariantError(f"quotient with {quotient.k} vertices does not divide {n} processes")
    q = n // quotient.k
    lifts = enumerate_lifts(quotient.graph.without_ports(), q, simple=True, connected=True, budget=budget)
    output = dump_graph(lifts.classes[0].total) if lifts.complete and len(lifts.classes) == 1 else None
    if len(lifts.classes) >= 2:
        log.info(f"quotient with {quotient.k} vertices has {len(lifts.classes)} simple connected {q}-sheeted lifts")
    return TopologyState(number=state.number, k=quotient.k, q=q, classes=len(lifts.classes), complete=lifts.complete,
                         output=output)


class Output(Protocol):
    """Silent last phase holding the per-process result of a handoff."""
    id = ProtocolIds.output

    def initial_state(self, ctx: ProcessContext, inp=None):
        return inp

    def on_wakeup(self, state, ctx: ProcessContext):
        return state, []

    def on_receive(self, state, port: int, payload, ctx: ProcessContext):
        raise ProtocolInvariantError("output phase received a message")

    def is_halted(self, state) -> bool:
        return True


class TopologyComposite(_Composite):
    id = ProtocolIds.topology

    def __init__(self):
        super().__init__(Output())

    def handoff(self, phase: int, state: MazState, ctx: ProcessContext) -> TopologyState:
        return recognize(state, _n_known(ctx))

