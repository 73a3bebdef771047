"""
Exhaustive base search over a fixed fibre partition.

This is deliberately independent of the matching based construction in quotient.py: every edge of the total graph is
assigned to an arc fibre by backtracking and only the local covering and sym constraints are enforced. It serves as
the reference the construction is validated against.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from anoncover._settings import settings
from anoncover.coverings.morphism import CoveringMap, classify_covering
from anoncover.coverings.partitions import FibrePartition
from anoncover.errors import CoveringError
from anoncover.graphs.base import SymDigraph

log = logging.getLogger(__name__)

CROSS = "cross"
MATCHING = "matching"
ORIENTED = "oriented"


@dataclass
class _Fibre:
    """
    A future base arc fibre under construction.

    cross: one perfect matching between two blocks (a sym-paired arc pair in the base).
    matching: a perfect matching inside a block (a self-symmetric loop).
    oriented: a permutation without fixed points inside a block (a sym-paired loop pair).
    """
    kind: str
    blocks: Tuple[int, int]
    out_used: set = field(default_factory=set)
    in_used: set = field(default_factory=set)
    arcs: List[int] = field(default_factory=list)


def brute_force_base_oracle(d: SymDigraph, p: FibrePartition) -> Optional[Tuple[SymDigraph, CoveringMap]]:
    """
    Searches a symmetric covering of d whose vertex fibres are the blocks of p.

    :param d: Symmetric digraph of a simple graph with at most settings.oracle_max_vertices vertices.
    :param p: Partition with equal block sizes.
    :return: (base, covering map) or None if no symmetric covering has these fibres.
    """
    if d.n > settings.oracle_max_vertices:
        raise CoveringError(f"brute force oracle is limited to {settings.oracle_max_vertices} vertices, got {d.n}")
    if not d.is_simple():
        raise CoveringError("brute force oracle expects the symmetric digraph of a simple graph")
    if p.n != d.n:
        raise CoveringError(f"partition covers {p.n} vertices, graph has {d.n}")
    label = p.block_of()
    edges = sorted((a.s, a.t, a.id) for a in d.arcs if a.s < a.t)
    remaining = [d.degree(v) for v in range(d.n)]
    fibres: List[_Fibre] = []

    def complete_for(f: _Fibre, v: int) -> bool:
        if f.kind == ORIENTED:
            return v in f.out_used and v in f.in_used
        return v in f.out_used

    def touches(f: _Fibre, v: int) -> bool:
        return label[v] in f.blocks

    def closed_vertices_ok(vertices) -> bool:
        for v in vertices:
            if remaining[v] == 0 and not all(complete_for(f, v) for f in fibres if touches(f, v)):
                return False
        return True

    def options(u: int, v: int):
        """(fibre index or None for a new one, kind, oriented tail) for edge {u, v}."""
        bu, bv = label[u], label[v]
        for i, f in enumerate(fibres):
            if bu != bv:
                if f.kind == CROSS and f.blocks == (min(bu, bv), max(bu, bv)) and u not in f.out_used and \
                        v not in f.out_used:
                    yield i, CROSS, u
            elif f.blocks == (bu, bu):
                if f.kind == MATCHING and u not in f.out_used and v not in f.out_used:
                    yield i, MATCHING, u
                if f.kind == ORIENTED:
                    for tail, head in ((u, v), (v, u)):
                        if tail not in f.out_used and head not in f.in_used:
                            yield i, ORIENTED, tail
        if bu != bv:
            yield None, CROSS, u
        else:
            yield None, MATCHING, u
            yield None, ORIENTED, u

    def apply(f: _Fibre, kind: str, u: int, v: int, tail: int):
        if kind == ORIENTED:
            head = v if tail == u else u
            f.out_used.add(tail)
            f.in_used.add(head)
        else:
            f.out_used.update((u, v))

    def revert(f: _Fibre, kind: str, u: int, v: int, tail: int):
        if kind == ORIENTED:
            head = v if tail == u else u
            f.out_used.discard(tail)
            f.in_used.discard(head)
        else:
            f.out_used.difference_update((u, v))

    def new_fibre_allowed(blocks: Tuple[int, int]) -> bool:
        members = [w for w in range(d.n) if label[w] in blocks]
        return all(remaining[w] > 0 for w in members)

    def rec(i: int) -> bool:
        if i == len(edges):
            return all(complete_for(f, w) for f in fibres for w in range(d.n) if touches(f, w))
        u, v, a = edges[i]
        for idx, kind, tail in list(options(u, v)):
            created = idx is None
            if created:
                blocks = (min(label[u], label[v]), max(label[u], label[v]))
                if not new_fibre_allowed(blocks):
                    continue
                fibres.append(_Fibre(kind=kind, blocks=blocks))
                idx = len(fibres) - 1
            f = fibres[idx]
            apply(f, kind, u, v, tail)
            arc = a if tail == u else d.sym(a)
            f.arcs.append(arc)
            remaining[u] -= 1
            remaining[v] -= 1
            if closed_vertices_ok((u, v)) and rec(i + 1):
                return True
            remaining[u] += 1
            remaining[v] += 1
            f.arcs.pop()
            revert(f, kind, u, v, tail)
            if created:
                fibres.pop()
        return False

    if not rec(0):
        return None
    base_arcs: List[Tuple[int, int]] = []
    base_sym: List[int] = []
    amap: Dict[int, int] = {}
    for f in fibres:
        x, y = f.blocks
        if f.kind == MATCHING:
            loop = len(base_arcs)
            base_arcs.append((x, x))
            base_sym.append(loop)
            for arc in f.arcs:
                amap[arc] = loop
                amap[d.sym(arc)] = loop
            continue
        forward, backward = len(base_arcs), len(base_arcs) + 1
        base_sym.extend([backward, forward])
        if f.kind == ORIENTED:
            base_arcs.extend([(x, x), (x, x)])
            for arc in f.arcs:
                amap[arc] = forward
                amap[d.sym(arc)] = backward
        else:
            base_arcs.extend([(x, y), (y, x)])
            for arc in f.arcs:
                forward_arc = arc if label[d.src(arc)] == x else d.sym(arc)
                amap[forward_arc] = forward
                amap[d.sym(forward_arc)] = backward
    base = SymDigraph(n=len(p.blocks), arcs=base_arcs, sym=base_sym)
    cover = CoveringMap(total=d, base=base, vmap=tuple(label), amap=tuple(amap[a] for a in range(d.n_arcs)))
    if not classify_covering(cover).is_symmetric_covering:
        raise CoveringError("oracle produced a map that is not a symmetric covering")
    return base, cover
