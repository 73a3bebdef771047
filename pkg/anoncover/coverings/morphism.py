"""
Morphisms between symmetric digraphs: covering maps, their classification and arc map search.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from anoncover._settings import settings
from anoncover.coverings.factorization import regular_bipartite_factorization
from anoncover.errors import BudgetExhaustedError, CoveringError
from anoncover.graphs.base import SymDigraph, UGraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoveringMap:
    """
    Vertex and arc map from a total to a base symmetric digraph.

    q is the common fibre size if all vertex fibres have equal size, otherwise None.
    """
    total: SymDigraph
    base: SymDigraph
    vmap: Tuple[int, ...]
    amap: Tuple[int, ...]
    q: Optional[int] = field(init=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "vmap", tuple(int(x) for x in self.vmap))
        object.__setattr__(self, "amap", tuple(int(x) for x in self.amap))
        sizes = [0] * self.base.n
        for x in self.vmap:
            if 0 <= x < self.base.n:
                sizes[x] += 1
        if len(set(sizes)) == 1 and sizes[0] > 0 and sizes[0] * self.base.n == self.total.n:
            object.__setattr__(self, "q", sizes[0])

    def fibre(self, x: int) -> List[int]:
        """Vertices of the total graph mapped to base vertex x."""
        return [v for v, y in enumerate(self.vmap) if y == x]

    def arc_fibre(self, b: int) -> List[int]:
        return [a for a, y in enumerate(self.amap) if y == b]

    def to_dict(self) -> dict:
        return {
            "total": self.total.name,
            "base": self.base.name,
            "vmap": list(self.vmap),
            "amap": list(self.amap),
            "q": self.q,
        }


@dataclass
class MorphismReport:
    is_homomorphism: bool
    is_fibration: bool
    is_opfibration: bool
    is_covering: bool
    is_symmetric_covering: bool
    is_port_preserving: Optional[bool]
    q: Optional[int] = None
    witnesses: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "is_homomorphism": self.is_homomorphism,
            "is_fibration": self.is_fibration,
            "is_opfibration": self.is_opfibration,
            "is_covering": self.is_covering,
            "is_symmetric_covering": self.is_symmetric_covering,
            "is_port_preserving": self.is_port_preserving,
            "q": self.q,
            "witnesses": dict(self.witnesses),
        }


def _check_total(total: SymDigraph, base: SymDigraph, vmap: Sequence[int], amap: Sequence[int]):
    if len(vmap) != total.n:
        raise CoveringError(f"vertex map has {len(vmap)} entries, total graph has {total.n} vertices")
    if len(amap) != total.n_arcs:
        raise CoveringError(f"arc map has {len(amap)} entries, total graph has {total.n_arcs} arcs")
    for v, x in enumerate(vmap):
        if not 0 <= x < base.n:
            raise CoveringError(f"vertex {v} is mapped to {x}, which is not a base vertex")
    for a, b in enumerate(amap):
        if not 0 <= b < base.n_arcs:
            raise CoveringError(f"arc {a} is mapped to {b}, which is not a base arc")


def classify_morphism(total: SymDigraph, base: SymDigraph, vmap: Sequence[int], amap: Sequence[int]) -> MorphismReport:
    """
    Computes all morphism flags of (vmap, amap): total -> base independently.

    :return: Report with one witness per false flag.
    """
    _check_total(total, base, vmap, amap)
    witnesses = {}
    hom = True
    for a in range(total.n_arcs):
        b = amap[a]
        if vmap[total.src(a)] != base.src(b) or vmap[total.tgt(a)] != base.tgt(b):
            hom = False
            witnesses["is_homomorphism"] = f"arc {a} ({total.src(a)}->{total.tgt(a)}) is mapped to arc {b} " \
                                           f"({base.src(b)}->{base.tgt(b)}) but its ends go to " \
                                           f"{vmap[total.src(a)]}->{vmap[total.tgt(a)]}"
            break
    fib = True
    for v in range(total.n):
        if sorted(amap[a] for a in total.in_arcs(v)) != sorted(base.in_arcs(vmap[v])):
            fib = False
            witnesses["is_fibration"] = f"incoming arcs of vertex {v} are not mapped bijectively onto those of {vmap[v]}"
            break
    opfib = True
    for v in range(total.n):
        if sorted(amap[a] for a in total.out_arcs(v)) != sorted(base.out_arcs(vmap[v])):
            opfib = False
            witnesses["is_opfibration"] = f"outgoing arcs of vertex {v} are not mapped bijectively onto those of " \
                                          f"{vmap[v]}"
            break
    cov = hom and fib and opfib
    if not cov:
        witnesses["is_covering"] = "not a locally bijective homomorphism"
    sym = cov
    if cov:
        for a in range(total.n_arcs):
            if amap[total.sym(a)] != base.sym(amap[a]):
                sym = False
                witnesses["is_symmetric_covering"] = f"sym({a}) = {total.sym(a)} is mapped to {amap[total.sym(a)]}, " \
                                                     f"but sym of the image of {a} is {base.sym(amap[a])}"
                break
    else:
        witnesses["is_symmetric_covering"] = "not a covering"
    ported = None
    if total.has_ports and base.has_ports:
        ported = cov
        if not cov:
            witnesses["is_port_preserving"] = "not a covering"
        else:
            for a in range(total.n_arcs):
                if total.outport(a) != base.outport(amap[a]):
                    ported = False
                    witnesses["is_port_preserving"] = f"arc {a} has outport {total.outport(a)}, its image has " \
                                                      f"{base.outport(amap[a])}"
                    break
    q = CoveringMap(total=total, base=base, vmap=vmap, amap=amap).q if cov else None
    return MorphismReport(
        is_homomorphism=hom,
        is_fibration=fib,
        is_opfibration=opfib,
        is_covering=cov,
        is_symmetric_covering=sym,
        is_port_preserving=ported,
        q=q,
        witnesses=witnesses,
    )


def classify_covering(c: CoveringMap) -> MorphismReport:
    return classify_morphism(c.total, c.base, c.vmap, c.amap)


def sheets_of(c: CoveringMap) -> int:
    """
    Number of sheets of a covering.

    :raises CoveringError: if c is not a covering or if its fibres have unequal size.
    """
    report = classify_covering(c)
    if not report.is_covering:
        raise CoveringError(f"map is not a covering: {report.witnesses['is_covering']}")
    sizes = [len(c.fibre(x)) for x in range(c.base.n)]
    if len(set(sizes)) != 1:
        raise CoveringError(f"vertex fibres have unequal sizes {sizes}")
    if sizes[0] * c.base.n != c.total.n:
        raise CoveringError(f"{sizes[0]} sheets over {c.base.n} base vertices do not account for {c.total.n} vertices")
    return sizes[0]


def identity_covering(d: SymDigraph) -> CoveringMap:
    return CoveringMap(total=d, base=d, vmap=tuple(range(d.n)), amap=tuple(range(d.n_arcs)))


def compose(f: CoveringMap, g: CoveringMap) -> CoveringMap:
    """Covering map g after f, for f: A -> B and g: B -> C."""
    if f.base != g.total:
        raise CoveringError("base of the first map is not the total graph of the second map")
    return CoveringMap(
        total=f.total,
        base=g.base,
        vmap=tuple(g.vmap[x] for x in f.vmap),
        amap=tuple(g.amap[b] for b in f.amap),
    )


def _dfs_arc_order(d: SymDigraph) -> List[int]:
    """Arcs grouped by source, sources in depth-first preorder from vertex 0."""
    g = nx.Graph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from((a.s, a.t) for a in d.arcs)
    order = []
    for v in nx.dfs_preorder_nodes(g, source=0):
        order.extend(d.out_arcs(v))
    seen = set(order)
    order.extend(a for a in range(d.n_arcs) if a not in seen)
    return order


def _plain_arc_map(total: SymDigraph, base: SymDigraph, vmap: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Covering arc map for vmap by 1-factorization of the regular bipartite fibre-to-fibre arc graphs."""
    amap = [-1] * total.n_arcs
    for x in range(base.n):
        for y in range(base.n):
            base_arcs = [b for b in base.out_arcs(x) if base.tgt(b) == y]
            arcs = [a for v in range(total.n) if vmap[v] == x for a in total.out_arcs(v) if vmap[total.tgt(a)] == y]
            if not base_arcs and not arcs:
                continue
            left = [v for v in range(total.n) if vmap[v] == x]
            right = [v for v in range(total.n) if vmap[v] == y]
            deg_left = {v: 0 for v in left}
            deg_right = {v: 0 for v in right}
            for a in arcs:
                deg_left[total.src(a)] += 1
                deg_right[total.tgt(a)] += 1
            if set(deg_left.values()) != {len(base_arcs)} or set(deg_right.values()) != {len(base_arcs)}:
                return None
            matchings = regular_bipartite_factorization(
                left=left,
                right=right,
                edges=[(total.src(a), total.tgt(a), a) for a in arcs],
            )
            for b, matching in zip(base_arcs, matchings):
                for a in matching:
                    amap[a] = b
    return tuple(amap)


def bouquet(d: int, name: Optional[str] = None) -> SymDigraph:
    """One vertex with d loops: a self-symmetric loop first if d is odd, then sym-paired loop pairs."""
    arcs, sym = [], []
    if d % 2 == 1:
        arcs.append((0, 0))
        sym.append(0)
    while len(arcs) < d:
        a = len(arcs)
        arcs.extend([(0, 0), (0, 0)])
        sym.extend([a + 1, a])
    return SymDigraph(n=1, arcs=arcs, sym=sym, name=name)


def covering_from_factorization(total: SymDigraph) -> CoveringMap:
    """
    Plain covering of a d-regular symmetric digraph onto the d-bouquet.

    The arc graph is split into d perfect matchings, each one becoming the fibre of one loop. The map is a covering
    but in general does not commute with sym.

    :raises CoveringError: if total is not regular.
    """
    degrees = set(total.degrees)
    if len(degrees) != 1:
        raise CoveringError(f"only regular graphs cover a bouquet, found degrees {sorted(degrees)}")
    base = bouquet(degrees.pop())
    vmap = tuple([0] * total.n)
    amap = _plain_arc_map(total, base, vmap)
    if amap is None:
        raise CoveringError("arc graph of a regular graph has no 1-factorization")
    return CoveringMap(total=total, base=base, vmap=vmap, amap=amap)


def search_arc_maps(
        total: SymDigraph,
        base: SymDigraph,
        vmap: Sequence[int],
        symmetric: bool = True,
        budget: Optional[int] = None,
) -> Optional[Tuple[int, ...]]:
    """
    Finds an arc map that turns vmap into a (symmetric) covering.

    The plain case is decided constructively. The symmetric case is an exhaustive backtracking search, so None is a
    proof that no arc map over vmap commutes with sym.

    :param total: Total graph.
    :param base: Base graph.
    :param vmap: Fixed vertex map.
    :param symmetric: Whether the arc map needs to commute with sym.
    :param budget: Maximal number of search nodes, defaults to settings.search_budget.
    :return: Arc map or None.
    :raises BudgetExhaustedError: if the symmetric search exceeds its budget.
    """
    if len(vmap) != total.n or any(not 0 <= x < base.n for x in vmap):
        raise CoveringError("vertex map is not a total function into the base")
    if any(len(total.out_arcs(v)) != len(base.out_arcs(vmap[v])) for v in range(total.n)):
        return None
    if not symmetric:
        return _plain_arc_map(total, base, vmap)
    budget = settings.search_budget if budget is None else budget
    order = [a for a in _dfs_arc_order(total) if a <= total.sym(a)]
    candidates = {}
    for a in order:
        candidates[a] = [b for b in base.out_arcs(vmap[total.src(a)]) if base.tgt(b) == vmap[total.tgt(a)]]
    amap = [-1] * total.n_arcs
    out_used = [set() for _ in range(total.n)]
    in_used = [set() for _ in range(total.n)]
    nodes = [0]

    def place(a: int, b: int) -> bool:
        s, t = total.src(a), total.tgt(a)
        if b in out_used[s] or b in in_used[t]:
            return False
        out_used[s].add(b)
        in_used[t].add(b)
        amap[a] = b
        return True

    def unplace(a: int):
        b = amap[a]
        out_used[total.src(a)].discard(b)
        in_used[total.tgt(a)].discard(b)
        amap[a] = -1

    def rec(i: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExhaustedError(f"symmetric arc map search exceeded {budget} nodes")
        if i == len(order):
            return True
        a = order[i]
        a_bar = total.sym(a)
        for b in candidates[a]:
            b_bar = base.sym(b)
            if a == a_bar:
                if b != b_bar or not place(a, b):
                    continue
                if rec(i + 1):
                    return True
                unplace(a)
                continue
            if not place(a, b):
                continue
            if place(a_bar, b_bar):
                if rec(i + 1):
                    return True
                unplace(a_bar)
            unplace(a)
        return False

    found = rec(0)
    log.debug(f"symmetric arc map search visited {nodes[0]} nodes, found={found}")
    return tuple(amap) if found else None


def fibre_forest_check(c: CoveringMap, tree: Sequence[int]) -> bool:
    """
    Checks that the preimage of a spanning tree of the base is a disjoint union of q trees, each mapped bijectively
    onto the tree.

    :param c: Covering map.
    :param tree: Arc ids of the base spanning tree (both arcs of every tree edge, or one per edge).
    """
    tree_arcs = set(tree) | {c.base.sym(b) for b in tree}
    g = nx.Graph()
    g.add_nodes_from(range(c.total.n))
    for a in range(c.total.n_arcs):
        if c.amap[a] in tree_arcs:
            g.add_edge(c.total.src(a), c.total.tgt(a))
    components = list(nx.connected_components(g))
    if c.q is None or len(components) != c.q:
        return False
    for comp in components:
        sub = g.subgraph(comp)
        if not nx.is_tree(sub):
            return False
        if sorted(c.vmap[v] for v in comp) != list(range(c.base.n)):
            return False
    return True


def undirected_covering(g: UGraph, h: UGraph, vmap: Sequence[int]) -> bool:
    """Simple undirected covering: vmap is onto and maps every neighbourhood bijectively onto a neighbourhood."""
    if len(vmap) != g.n or set(vmap) != set(range(h.n)):
        return False
    for v in range(g.n):
        image = sorted(vmap[w] for w in g.neighbors(v))
        if image != list(h.neighbors(vmap[v])):
            return False
    return True
