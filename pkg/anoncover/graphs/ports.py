"""
Port numbering generation for undirected graphs and symmetric digraphs, and transport of ports along coverings.
"""
import logging
from typing import Dict, Optional, Tuple

import numpy as np

from anoncover.coverings.morphism import CoveringMap, classify_covering
from anoncover.errors import CoveringError, GraphValidationError
from anoncover.graphs.base import PortNumbering, SymDigraph, UGraph, dir_graph

log = logging.getLogger(__name__)

PORT_MODES = ["canonical", "random"]


def _check_mode(mode: str):
    if mode not in PORT_MODES:
        raise ValueError(f"port mode {mode!r} not recognized, choose from {PORT_MODES}")


def assign_ports(g: UGraph, mode: str = "canonical", seed: Optional[int] = None) -> PortNumbering:
    """
    Port numbering of g.

    :param g: Graph.
    :param mode: "canonical" numbers the edges of every vertex by ascending neighbour id, "random" shuffles them with a
        generator seeded by seed.
    :param seed: Seed of the random mode, defaults to 0.
    """
    _check_mode(mode)
    rng = np.random.default_rng(0 if seed is None else seed)
    table: Dict[Tuple[int, int], int] = {}
    for u in range(g.n):
        neighbors = list(g.neighbors(u))
        if mode == "random":
            neighbors = [neighbors[i] for i in rng.permutation(len(neighbors))]
        for p, v in enumerate(neighbors, start=1):
            table[(u, v)] = p
    return PortNumbering(g, table)


def assign_arc_ports(d: SymDigraph, mode: str = "canonical", seed: Optional[int] = None) -> SymDigraph:
    """
    Copy of d with outports, ascending in arc id per vertex or seeded random.

    Needed to port a base graph that was built without ports before transporting ports with lift_ports.
    """
    _check_mode(mode)
    rng = np.random.default_rng(0 if seed is None else seed)
    outports = [0] * d.n_arcs
    for v in range(d.n):
        arcs = list(d.out_arcs(v))
        if mode == "random":
            arcs = [arcs[i] for i in rng.permutation(len(arcs))]
        for p, a in enumerate(arcs, start=1):
            outports[a] = p
    return d.with_outports(outports)


def lift_ports(g: UGraph, base: SymDigraph, cover: CoveringMap) -> PortNumbering:
    """
    Port numbering of g pulled back from the ported base along a symmetric covering dir(g) -> base.

    Every arc of dir(g) receives the outport of its image, which makes the covering port-preserving.

    :param g: Total graph.
    :param base: Base with outports.
    :param cover: Symmetric covering whose total graph is dir(g), arc ids included.
    :raises CoveringError: naming the violated covering condition.
    """
    if not base.has_ports:
        raise GraphValidationError("base needs outports to lift them")
    if cover.total.without_ports() != dir_graph(g).without_ports():
        raise CoveringError("total graph of the covering is not dir(g) with the arc ids of dir_graph")
    if cover.base.without_ports() != base.without_ports():
        raise CoveringError("base of the covering differs from the ported base")
    report = classify_covering(cover)
    if not report.is_symmetric_covering:
        failed = [k for k, v in report.to_dict().items() if v is False]
        raise CoveringError(f"map is not a symmetric covering, failed {failed}: {report.witnesses}")
    table = {}
    for a in cover.total.arcs:
        table[(a.s, a.t)] = base.outport(cover.amap[a.id])
    return PortNumbering(g, table)
