"""
Enumeration protocol on anonymous ported networks.

Every process holds a number, a local view and a mailbox. The local view records, per port, the number of the
neighbour behind it and the port through which that neighbour reaches back; the mailbox collects every (number, view)
pair ever broadcast. At quiescence every process can rebuild from its mailbox the same quotient graph, which the
ported network covers symmetrically.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from anoncover._settings import settings
from anoncover.consts import ProtocolIds
from anoncover.coverings.morphism import CoveringMap
from anoncover.errors import ProtocolInvariantError
from anoncover.graphs.base import SymDigraph
from anoncover.protocols.base import ProcessContext, Protocol, Send

log = logging.getLogger(__name__)

Triple = Tuple[int, int, int]
View = FrozenSet[Triple]
Mailbox = FrozenSet[Tuple[int, View]]


@dataclass(frozen=True)
class MazState:
    """
    :param number: 0 while unchosen.
    :param view: Triples (m, p, q): the neighbour behind port q has number m and sees this process behind its port p.
    :param mailbox: Every (number, view) pair known.
    """
    number: int = 0
    view: View = frozenset()
    mailbox: Mailbox = frozenset()


@dataclass(frozen=True)
class MazMessage:
    """Current and previous number of the sender, its mailbox and the port it was sent through."""
    number: int
    old_number: int
    mailbox: Mailbox
    port: int


def view_order_cmp(n1: View, n2: View) -> int:
    """
    Total order on views: n1 < n2 iff the largest triple of the symmetric difference lies in n2.

    :return: -1, 0 or 1.
    """
    diff = set(n1) ^ set(n2)
    if not diff:
        return 0
    return -1 if max(diff) in n2 else 1


def _broadcast(state: MazState, old_number: int, degree: int) -> List[Send]:
    return [(p, MazMessage(number=state.number, old_number=old_number, mailbox=state.mailbox, port=p))
            for p in range(1, degree + 1)]


def maz_on_init(state: MazState, degree: int) -> Tuple[MazState, List[Send]]:
    """Chooses number 1 and broadcasts; a no-op once a number was chosen on receipt of a message."""
    if state.number != 0:
        return state, []
    new = MazState(number=1, view=frozenset(), mailbox=frozenset({(1, frozenset())}))
    return new, _broadcast(new, 0, degree)


def maz_on_receive(state: MazState, msg: MazMessage, q: int, degree: int) -> Tuple[MazState, List[Send]]:
    """
    Merges the mailbox of msg, renumbers if the own number is unchosen or claimed by a stronger view, records the
    sender in the view and broadcasts if the mailbox changed.

    :param q: Port through which msg arrived.
    """
    old_mailbox = state.mailbox
    old_number = state.number
    mailbox = state.mailbox | msg.mailbox
    number = state.number
    if number == 0 or any(m == number and view_order_cmp(state.view, view) < 0 for m, view in mailbox):
        number = 1 + max(m for m, _ in mailbox)
    view = (state.view - {(msg.old_number, msg.port, q)}) | {(msg.number, msg.port, q)}
    mailbox = mailbox | {(number, view)}
    new = MazState(number=number, view=view, mailbox=mailbox)
    if mailbox == old_mailbox:
        return new, []
    return new, _broadcast(new, old_number, degree)


class Mazurkiewicz(Protocol):
    id = ProtocolIds.mazurkiewicz

    def initial_state(self, ctx: ProcessContext, inp=None) -> MazState:
        return MazState()

    def on_wakeup(self, state: MazState, ctx: ProcessContext):
        return maz_on_init(state, ctx.degree)

    def on_receive(self, state: MazState, port: int, payload: MazMessage, ctx: ProcessContext):
        return maz_on_receive(state, payload, port, ctx.degree)


@dataclass(frozen=True)
class Quotient:
    """Graph rebuilt from a mailbox; vertex i - 1 stands for number i, identifier is the own vertex in graph."""
    graph: SymDigraph
    identifier: int

    @property
    def k(self) -> int:
        return self.graph.n


def maximal_views(mailbox: Mailbox) -> Dict[int, View]:
    """The largest view stored for every number."""
    best: Dict[int, View] = {}
    for m, view in mailbox:
        if m not in best or view_order_cmp(best[m], view) < 0:
            best[m] = view
    return best


def build_quotient_from_mailbox(state: MazState) -> Quotient:
    """
    Ported quotient graph encoded by a final mailbox.

    Every triple (m, p, q) in the view of number i gives an arc i -> m with outport q; its sym is the arc m -> i with
    outport p.

    :raises ProtocolInvariantError: if numbers are missing or views do not pair up.
    """
    if state.number == 0:
        raise ProtocolInvariantError("process never chose a number")
    views = maximal_views(state.mailbox)
    k = max(views.keys())
    missing = sorted(set(range(1, k + 1)) - set(views.keys()))
    if missing:
        raise ProtocolInvariantError(f"mailbox holds no view for numbers {missing}")
    keys = sorted((i, q) for i in range(1, k + 1) for _, _, q in views[i])
    arc_of = {key: a for a, key in enumerate(keys)}
    arcs, sym, outports = [], [], []
    for i, q in keys:
        triples = [(m, p) for m, p, qq in views[i] if qq == q]
        if len(triples) != 1:
            raise ProtocolInvariantError(f"view of number {i} has {len(triples)} entries for port {q}")
        m, p = triples[0]
        if m not in views or (i, q, p) not in views[m]:
            raise ProtocolInvariantError(f"arc from number {i} port {q} to number {m} port {p} has no counterpart")
        arcs.append((i - 1, m - 1))
        sym.append(arc_of[(m, p)])
        outports.append(q)
    graph = SymDigraph(n=k, arcs=arcs, sym=sym, outports=outports)
    return Quotient(graph=graph, identifier=state.number - 1)


def lemma_fundamental_violations(states: Sequence[MazState], network: SymDigraph) -> List[str]:
    """
    Properties of a quiescent run, one message per violation.

    Numbers are exactly 1..k with k at most n, all mailboxes are equal and contain every (number, view) pair, equal
    numbers come with equal views, and every view describes the numbered neighbourhood exactly.
    """
    out = []
    numbers = sorted({s.number for s in states})
    k = max(numbers)
    if numbers != list(range(1, k + 1)) or k > network.n:
        out.append(f"numbers in use are {numbers}, need 1..k with k <= {network.n}")
    mailboxes = {s.mailbox for s in states}
    if len(mailboxes) != 1:
        out.append(f"{len(mailboxes)} different final mailboxes")
    for v, s in enumerate(states):
        for t in states:
            if (s.number, s.view) not in t.mailbox:
                out.append(f"pair of vertex {v} is missing from a mailbox")
                break
    by_number: Dict[int, View] = {}
    for v, s in enumerate(states):
        if s.number in by_number and by_number[s.number] != s.view:
            out.append(f"vertex {v} has number {s.number} with a view differing from another vertex with that number")
        by_number.setdefault(s.number, s.view)
    for v, s in enumerate(states):
        expected = set()
        for a in network.out_arcs(v):
            w = network.tgt(a)
            expected.add((states[w].number, network.inport(a), network.outport(a)))
        if set(s.view) != expected:
            out.append(f"view of vertex {v} is {sorted(s.view)}, its neighbourhood gives {sorted(expected)}")
    return out


def maz_message_report(messages: int, network: SymDigraph) -> dict:
    """Message count of a run against the envelope c * m^2 * n, m the number of edges; exceeding it only warns."""
    m = len(network.sym_pairs())
    envelope = settings.message_envelope_factor * m * m * network.n
    within = messages <= envelope
    if not within:
        log.warning(f"{messages} messages exceed the envelope of {envelope}")
    return {"messages": messages, "envelope": envelope, "m": m, "n": network.n, "within_envelope": within}


def quotient_covering(network: SymDigraph, states: Sequence[MazState]) -> CoveringMap:
    """
    Map from the ported network onto the quotient rebuilt from the final mailbox, sending every vertex to its number.

    Arc a leaving v through outport q goes to the quotient arc leaving number(v) through outport q.
    """
    quotient = build_quotient_from_mailbox(states[0]).graph
    arc_of = {(quotient.src(b), quotient.outport(b)): b for b in range(quotient.n_arcs)}
    vmap = [s.number - 1 for s in states]
    amap = []
    for a in range(network.n_arcs):
        key = (vmap[network.src(a)], network.outport(a))
        if key not in arc_of:
            raise ProtocolInvariantError(f"quotient has no arc leaving number {key[0] + 1} through port {key[1]}")
        amap.append(arc_of[key])
    return CoveringMap(total=network, base=quotient, vmap=tuple(vmap), amap=tuple(amap))
