"""
Matching decompositions used to turn equitable partitions into covering quotients.

Edges are carried around as (u, v, key) triples so that callers can map matchings back to arc ids; parallel edges are
allowed.
"""
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from anoncover.errors import CoveringError

Edge = Tuple[int, int, Hashable]


def regular_bipartite_factorization(left: Sequence[int], right: Sequence[int], edges: Sequence[Edge]) -> List[List]:
    """
    Decomposes a regular bipartite multigraph into perfect matchings.

    :param left: Left vertices.
    :param right: Right vertices, may overlap with left as labels (sides are kept apart internally).
    :param edges: (left vertex, right vertex, key).
    :return: List of matchings, each a list of edge keys.
    """
    remaining: Dict[Tuple[int, int], List[Hashable]] = {}
    for u, v, key in edges:
        remaining.setdefault((u, v), []).append(key)
    n_rounds = len(edges) // len(left) if left else 0
    if n_rounds * len(left) != len(edges) or len(left) != len(right):
        raise CoveringError(f"bipartite graph with {len(left)}+{len(right)} vertices and {len(edges)} edges is not "
                            f"regular")
    matchings = []
    for _ in range(n_rounds):
        g = nx.Graph()
        top = [("l", u) for u in left]
        g.add_nodes_from(top)
        g.add_nodes_from(("r", v) for v in right)
        g.add_edges_from((("l", u), ("r", v)) for (u, v), keys in remaining.items() if keys)
        matching = bipartite.hopcroft_karp_matching(g, top_nodes=top)
        pairs = [(u, matching[("l", u)][1]) for u in left if ("l", u) in matching]
        if len(pairs) != len(left):
            raise CoveringError("bipartite graph is not regular, no perfect matching left")
        matchings.append([remaining[p].pop() for p in pairs])
    return matchings


def perfect_matching(nodes: Sequence[int], edges: Sequence[Edge]) -> Optional[List[Hashable]]:
    """
    Any perfect matching of a general graph.

    :return: Edge keys of the matching, or None if the graph has no perfect matching.
    """
    if len(nodes) % 2 == 1:
        return None
    g = nx.Graph()
    g.add_nodes_from(nodes)
    key_of = {}
    for u, v, key in edges:
        if u != v:
            g.add_edge(u, v)
            key_of.setdefault(frozenset((u, v)), key)
    matching = nx.max_weight_matching(g, maxcardinality=True)
    if 2 * len(matching) != len(nodes):
        return None
    return [key_of[frozenset(e)] for e in matching]


def iter_perfect_matchings(nodes: Sequence[int], edges: Sequence[Edge]) -> Iterator[List[Hashable]]:
    """Enumerates all perfect matchings by always matching the smallest uncovered vertex first."""
    nodes = sorted(nodes)
    incident: Dict[int, List[Edge]] = {v: [] for v in nodes}
    for e in edges:
        if e[0] != e[1]:
            incident[e[0]].append(e)
            incident[e[1]].append(e)
    covered = set()
    chosen: List[Hashable] = []

    def rec():
        free = [v for v in nodes if v not in covered]
        if not free:
            yield list(chosen)
            return
        v = free[0]
        for u, w, key in incident[v]:
            other = w if u == v else u
            if other in covered:
                continue
            covered.update((v, other))
            chosen.append(key)
            yield from rec()
            chosen.pop()
            covered.difference_update((v, other))

    yield from rec()


def disjoint_perfect_matchings(nodes: Sequence[int], edges: Sequence[Edge], k: int) -> Optional[List[List[Hashable]]]:
    """
    k pairwise edge-disjoint perfect matchings, found by exhaustive search.

    :return: The matchings or None if k disjoint ones do not exist.
    """
    if k == 0:
        return []
    if k == 1:
        m = perfect_matching(nodes, edges)
        return None if m is None else [m]
    all_matchings = [frozenset(m) for m in iter_perfect_matchings(nodes, edges)]
    chosen: List[frozenset] = []

    def rec(start: int) -> bool:
        if len(chosen) == k:
            return True
        used = frozenset().union(*chosen) if chosen else frozenset()
        for i in range(start, len(all_matchings)):
            if all_matchings[i].isdisjoint(used):
                chosen.append(all_matchings[i])
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    if not rec(0):
        return None
    return [sorted(m) for m in chosen]


def two_factorization(nodes: Sequence[int], edges: Sequence[Edge]) -> List[List[Tuple[int, int, Hashable]]]:
    """
    Decomposes an even-regular graph into 2-factors.

    Every connected component is oriented along an Euler circuit, which gives in-degree = out-degree everywhere; the
    resulting regular bipartite out/in graph is then split into perfect matchings, each of which is a 2-factor.

    :return: List of 2-factors, each a list of oriented edges (tail, head, key).
    """
    if not edges:
        return []
    g = nx.MultiGraph()
    g.add_nodes_from(nodes)
    for u, v, key in edges:
        g.add_edge(u, v, key=key)
    degrees = {d for _, d in g.degree()}
    if len(degrees) != 1 or next(iter(degrees)) % 2 == 1:
        raise CoveringError(f"graph is not even-regular, degrees are {sorted(degrees)}")
    oriented = []
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        for u, v, key in nx.eulerian_circuit(sub, keys=True):
            oriented.append((u, v, key))
    heads = {key: (u, v) for u, v, key in oriented}
    matchings = regular_bipartite_factorization(left=list(nodes), right=list(nodes), edges=oriented)
    return [[(heads[key][0], heads[key][1], key) for key in m] for m in matchings]
