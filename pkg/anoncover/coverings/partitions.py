"""
Fibre partitions: colour refinement and the enumeration of equitable equal-block partitions.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from anoncover._settings import settings
from anoncover.errors import BudgetExhaustedError, CoveringError
from anoncover.graphs.base import SymDigraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FibrePartition:
    """
    Partition of the vertices of a total graph into blocks of equal size q.

    Blocks are sorted tuples, ordered by their smallest vertex.
    """
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1 or 0 in sizes:
            raise CoveringError(f"blocks need to be non-empty and of equal size, got sizes {sorted(len(b) for b in blocks)}")
        members = [v for b in blocks for v in b]
        if sorted(members) != list(range(len(members))):
            raise CoveringError("blocks need to partition the vertices 0..n-1")

    @property
    def q(self) -> int:
        return len(self.blocks[0])

    @property
    def n(self) -> int:
        return self.q * len(self.blocks)

    def block_of(self) -> List[int]:
        x = [0] * self.n
        for i, b in enumerate(self.blocks):
            for v in b:
                x[v] = i
        return x

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "FibrePartition":
        blocks: Dict[int, List[int]] = {}
        for v, x in enumerate(labels):
            blocks.setdefault(x, []).append(v)
        return cls(blocks=tuple(tuple(b) for b in blocks.values()))


def block_counts(d: SymDigraph, p: FibrePartition) -> List[List[int]]:
    """Number of arcs from each vertex into each block."""
    label = p.block_of()
    counts = [[0] * len(p.blocks) for _ in range(d.n)]
    for a in d.arcs:
        counts[a.s][label[a.t]] += 1
    return counts


def is_equitable(d: SymDigraph, p: FibrePartition) -> bool:
    counts = block_counts(d, p)
    return all(len({tuple(counts[v]) for v in b}) == 1 for b in p.blocks)


def refine_colors(out_neighbors: Sequence[Sequence[int]], initial: Sequence[Hashable]) -> List[int]:
    """
    Colour refinement to the stable colouring.

    New colours are ranks of (old colour, sorted multiset of neighbour colours), so colour names only depend on the
    isomorphism type of what a vertex sees, which makes colourings of different graphs comparable when refined
    together on their disjoint union.

    :param out_neighbors: Out-neighbours of every vertex, with multiplicity.
    :param initial: Initial colours, any sortable values.
    :return: Stable colour per vertex, integers 0..k-1.
    """
    ranks = {c: i for i, c in enumerate(sorted(set(initial)))}
    colors = [ranks[c] for c in initial]
    while True:
        signatures = [(colors[v], tuple(sorted(colors[w] for w in out_neighbors[v]))) for v in range(len(colors))]
        ranks = {s: i for i, s in enumerate(sorted(set(signatures)))}
        new_colors = [ranks[s] for s in signatures]
        if len(ranks) == len(set(colors)):
            return new_colors
        colors = new_colors


def coarsest_equitable_partition(d: SymDigraph) -> List[int]:
    """Stable colouring of d started from the trivial colouring; every equitable partition refines it."""
    return refine_colors([[d.tgt(a) for a in d.out_arcs(v)] for v in range(d.n)], [0] * d.n)


def _search_order(d: SymDigraph) -> List[int]:
    g = nx.Graph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from((a.s, a.t) for a in d.arcs)
    order = []
    for comp_root in range(d.n):
        if comp_root in order:
            continue
        order.extend(v for v in nx.bfs_tree(g, comp_root) if v not in order)
    return order


def equitable_partitions(d: SymDigraph, q: int, budget: Optional[int] = None) -> Iterator[FibrePartition]:
    """
    Enumerates all equitable partitions of d into blocks of size q.

    Backtracking assigns block labels vertex by vertex in breadth-first order. Vertices of a block need to share their
    colour in the coarsest equitable partition, and partial neighbour-block counts of a vertex may never exceed the
    final counts of a completed vertex of the same block.

    :param d: Total graph.
    :param q: Block size, needs to divide the number of vertices.
    :param budget: Maximal number of search nodes, defaults to settings.search_budget.
    :raises BudgetExhaustedError: when the budget runs out, after yielding what was found so far.
    """
    n = d.n
    if q < 1 or n % q != 0:
        raise CoveringError(f"block size {q} does not divide {n}")
    if d.has_loops():
        raise CoveringError("equitable partition search expects a loop-free total graph")
    budget = settings.search_budget if budget is None else budget
    n_blocks = n // q
    colors = coarsest_equitable_partition(d)
    for c in set(colors):
        if colors.count(c) % q != 0:
            log.debug(f"colour class of size {colors.count(c)} is not a union of blocks of size {q}")
            return
    order = _search_order(d)
    neighbors = [[d.tgt(a) for a in d.out_arcs(v)] for v in range(n)]
    label = [-1] * n
    size = [0] * n_blocks
    block_color = [-1] * n_blocks
    counts = [[0] * n_blocks for _ in range(n)]
    pending = [len(neighbors[v]) for v in range(n)]
    reference: List[Optional[List[int]]] = [None] * n_blocks
    nodes = [0]

    def consistent(v: int) -> bool:
        ref = reference[label[v]]
        if ref is None:
            return True
        if pending[v] == 0:
            return counts[v] == ref
        return all(x <= y for x, y in zip(counts[v], ref))

    def assign(v: int, b: int) -> Tuple[bool, List[int], List[int]]:
        """Returns (ok, vertices whose counters changed, blocks whose reference was set here)."""
        label[v] = b
        size[b] += 1
        touched = [v]
        for w in neighbors[v]:
            if label[w] >= 0:
                counts[w][b] += 1
                pending[w] -= 1
                counts[v][label[w]] += 1
                pending[v] -= 1
                touched.append(w)
        set_refs = []
        for w in set(touched):
            if pending[w] == 0 and reference[label[w]] is None:
                reference[label[w]] = list(counts[w])
                set_refs.append(label[w])
        ok = all(consistent(w) for w in set(touched))
        return ok, touched, set_refs

    def unassign(v: int, touched: List[int], set_refs: List[int]):
        b = label[v]
        for blk in set_refs:
            reference[blk] = None
        for w in neighbors[v]:
            if label[w] >= 0:
                counts[w][b] -= 1
                pending[w] += 1
                counts[v][label[w]] -= 1
                pending[v] += 1
        size[b] -= 1
        label[v] = -1

    def rec(i: int, used: int):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExhaustedError(f"equitable partition search for q={q} exceeded {budget} nodes")
        if i == n:
            yield FibrePartition.from_labels(label)
            return
        v = order[i]
        options = list(range(used))
        if used < n_blocks:
            options.append(used)
        for b in options:
            if size[b] >= q:
                continue
            new_block = b == used
            if not new_block and block_color[b] != colors[v]:
                continue
            if new_block:
                block_color[b] = colors[v]
            ok, touched, set_refs = assign(v, b)
            if ok:
                yield from rec(i + 1, used + 1 if new_block else used)
            unassign(v, touched, set_refs)
            if new_block:
                block_color[b] = -1

    yield from rec(0, 0)
    log.debug(f"equitable partition search for q={q} visited {nodes[0]} nodes")
