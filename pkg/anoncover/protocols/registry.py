from typing import Dict, Type

from anoncover.consts import ProtocolIds
from anoncover.protocols.base import Protocol
from anoncover.protocols.composite import SpanningTreeComposite, TopologyComposite
from anoncover.protocols.election import TreeElection
from anoncover.protocols.mazurkiewicz import Mazurkiewicz
from anoncover.protocols.tarry import Tarry

PROTOCOLS: Dict[str, Type[Protocol]] = {
    ProtocolIds.mazurkiewicz: Mazurkiewicz,
    ProtocolIds.election_tree: TreeElection,
    ProtocolIds.tarry: Tarry,
    ProtocolIds.spanning_tree: SpanningTreeComposite,
    ProtocolIds.topology: TopologyComposite,
}


def get_protocol(name: str) -> Protocol:
    if name not in PROTOCOLS:
        raise ValueError(f"protocol {name!r} not recognized, choose from {list(PROTOCOLS.keys())}")
    return PROTOCOLS[name]()
