"""
Seeded random graph generators for property tests and batch runs.
"""
from typing import Optional

import networkx as nx
import numpy as np

from anoncover.graphs.base import UGraph


def random_tree(n: int, seed: Optional[int] = None, name: Optional[str] = None) -> UGraph:
    """Random recursive tree: vertex v > 0 is attached to a uniformly chosen earlier vertex."""
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    return UGraph(n=n, edges=edges, name=name)


def random_connected_graph(n: int, p: float = 0.3, seed: Optional[int] = None, name: Optional[str] = None) -> UGraph:
    """
    Random tree with every further vertex pair added independently with probability p.

    :param n: Number of vertices.
    :param p: Probability of each non-tree edge.
    :param seed: Seed of numpy.random.default_rng.
    """
    if not 0. <= p <= 1.:
        raise ValueError(f"edge probability needs to be in [0, 1], was {p}")
    rng = np.random.default_rng(seed)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((int(rng.integers(0, v)), v) for v in range(1, n))
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v) and rng.random() < p:
                g.add_edge(u, v)
    return UGraph(n=n, edges=list(g.edges()), name=name)
