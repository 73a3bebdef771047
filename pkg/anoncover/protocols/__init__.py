from anoncover.protocols.base import ProcessContext, Protocol, Send
from anoncover.protocols.composite import SpanningTreeComposite, SpanningTreeOutcome, TopologyComposite, \
    TopologyState, recognize, role_from_quotient, spanning_tree_outcome
from anoncover.protocols.election import ElectionState, TreeElection, elected, tree_election_step
from anoncover.protocols.mazurkiewicz import MazMessage, MazState, Mazurkiewicz, Quotient, \
    build_quotient_from_mailbox, lemma_fundamental_violations, maz_message_report, maz_on_init, maz_on_receive, \
    maximal_views, quotient_covering, view_order_cmp
from anoncover.protocols.registry import PROTOCOLS, get_protocol
from anoncover.protocols.tarry import Tarry, TarryState, initial_tarry_state, is_spanning_tree, parse_role, \
    tarry_step, tree_from_states
