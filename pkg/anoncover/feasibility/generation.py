"""
Generation of connected graphs with a prescribed degree sequence, up to isomorphism.
"""
import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from anoncover._settings import settings
from anoncover.errors import BudgetExhaustedError
from anoncover.graphs.base import UGraph, dir_graph
from anoncover.lifts.canonical import canonical_form

log = logging.getLogger(__name__)


def graphs_with_degree_sequence(degrees: Sequence[int], budget: Optional[int] = None) -> Iterator[UGraph]:
    """
    Connected simple graphs realizing a degree sequence, each isomorphism class once.

    Vertices are processed in order of decreasing degree; vertex i picks its remaining neighbours among the later
    vertices. Later vertices without any edge yet are interchangeable within their degree class, so only a prefix of
    each such class is offered. Completed graphs are deduplicated by canonical form.

    :param degrees: Degree of every vertex; vertex ids of the output follow the sorted (decreasing) sequence.
    :param budget: Maximal number of search nodes, defaults to settings.search_budget.
    :raises BudgetExhaustedError: if the search exceeds its budget; graphs yielded before remain valid.
    """
    budget = settings.search_budget if budget is None else budget
    target = sorted((int(x) for x in degrees), reverse=True)
    n = len(target)
    if n == 0 or sum(target) % 2 == 1 or any(x < 0 or x >= n for x in target) or (n > 1 and 0 in target):
        return
    remaining = list(target)
    adj: List[List[int]] = [[] for _ in range(n)]
    seen = set()
    nodes = [0]

    def candidates(i: int) -> List[int]:
        out = []
        offered: Dict[int, int] = {}
        for j in range(i + 1, n):
            if remaining[j] == 0:
                continue
            if adj[j]:
                out.append(j)
                continue
            offered[target[j]] = offered.get(target[j], 0) + 1
            if offered[target[j]] <= remaining[i]:
                out.append(j)
        return out

    def closed_off(i: int) -> bool:
        """The vertices reached so far have no free degree left although unreached vertices remain."""
        reached = set(range(i + 1)) | {j for j in range(n) if adj[j]}
        if len(reached) == n:
            return False
        return all(remaining[v] == 0 for v in reached)

    def rec(i: int) -> Iterator[UGraph]:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExhaustedError(f"degree sequence search exceeded {budget} nodes")
        if i == n:
            edges: List[Tuple[int, int]] = [(u, v) for u in range(n) for v in adj[u] if u < v]
            g = nx.Graph()
            g.add_nodes_from(range(n))
            g.add_edges_from(edges)
            if not nx.is_connected(g):
                return
            ug = UGraph(n=n, edges=edges)
            cert = canonical_form(dir_graph(ug)).certificate
            if cert not in seen:
                seen.add(cert)
                yield ug
            return
        need = remaining[i]
        for chosen in itertools.combinations(candidates(i), need):
            for j in chosen:
                adj[i].append(j)
                adj[j].append(i)
                remaining[j] -= 1
            remaining[i] = 0
            if not closed_off(i):
                yield from rec(i + 1)
            remaining[i] = need
            for j in chosen:
                adj[i].pop()
                adj[j].pop()
                remaining[j] += 1

    yield from rec(0)
    log.debug(f"degree sequence {target}: {len(seen)} classes in {nodes[0]} search nodes")


def regular_graphs(n: int, d: int, budget: Optional[int] = None) -> Iterator[UGraph]:
    """Connected d-regular graphs on n vertices up to isomorphism."""
    yield from graphs_with_degree_sequence([d] * n, budget=budget)
