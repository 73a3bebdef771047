"""
Core graph model: simple undirected communication graphs, port numberings and symmetric digraphs.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from anoncover.errors import GraphValidationError

log = logging.getLogger(__name__)


class UGraph:
    """
    Simple connected undirected graph on vertices 0..n-1.

    :param n: Number of vertices.
    :param edges: Unordered vertex pairs.
    :param name: Optional label, used in serialized output.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]], name: Optional[str] = None):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise GraphValidationError(f"vertex count needs to be a positive integer, was {n!r}")
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise GraphValidationError(f"edge {list(e)} is not a vertex pair")
            u, v = int(e[0]), int(e[1])
            for x in (u, v):
                if not 0 <= x < n:
                    raise GraphValidationError(f"edge {[u, v]} references vertex {x} outside 0..{n - 1}")
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}, graph needs to be simple")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphValidationError(f"duplicate edge {list(key)}")
            seen.add(key)
        self._n = n
        self._edges = tuple(sorted(seen))
        self.name = name
        adj: List[List[int]] = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(x)) for x in adj)
        unreachable = self._unreachable()
        if unreachable is not None:
            raise GraphValidationError(f"graph is disconnected, vertex {unreachable} is not reachable from vertex 0")

    def _unreachable(self) -> Optional[int]:
        reached = nx.node_connected_component(self.to_networkx(), 0)
        for v in range(self._n):
            if v not in reached:
                return v
        return None

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edges as sorted pairs (u < v), in ascending order."""
        return self._edges

    def neighbors(self, u: int) -> Tuple[int, ...]:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    @property
    def degrees(self) -> List[int]:
        return [len(x) for x in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def is_tree(self) -> bool:
        return self.m == self._n - 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self._edges)
        return g

    def __eq__(self, other):
        return isinstance(other, UGraph) and self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"UGraph(name={self.name!r}, n={self._n}, m={self.m})"


class PortNumbering:
    """
    Per-vertex bijection from incident edges to ports 1..deg(u).

    :param g: Graph the numbering belongs to.
    :param table: Maps (u, v) to the port of edge {u, v} at u.
    """

    def __init__(self, g: UGraph, table: Mapping[Tuple[int, int], int]):
        self.graph = g
        ports: List[Dict[int, int]] = [dict() for _ in range(g.n)]
        for (u, v), p in table.items():
            if not 0 <= u < g.n or not g.has_edge(u, v):
                raise GraphValidationError(f"port entry {[u, v, p]} does not belong to an edge of the graph")
            ports[u][v] = int(p)
        for u in range(g.n):
            if set(ports[u].keys()) != set(g.neighbors(u)):
                missing = sorted(set(g.neighbors(u)) - set(ports[u].keys()))
                raise GraphValidationError(f"vertex {u} has no port for edges towards {missing}")
            if sorted(ports[u].values()) != list(range(1, g.degree(u) + 1)):
                raise GraphValidationError(
                    f"ports of vertex {u} are {sorted(ports[u].values())}, need a bijection onto 1..{g.degree(u)}"
                )
        self._ports = tuple(ports)
        self._neighbor_at = tuple({p: v for v, p in x.items()} for x in ports)

    def port(self, u: int, v: int) -> int:
        """Port of edge {u, v} at vertex u."""
        return self._ports[u][v]

    def neighbor(self, u: int, p: int) -> int:
        """Neighbour of u behind port p."""
        return self._neighbor_at[u][p]

    def as_triples(self) -> List[List[int]]:
        return sorted([u, v, p] for u in range(self.graph.n) for v, p in self._ports[u].items())

    def __eq__(self, other):
        return isinstance(other, PortNumbering) and self.graph == other.graph and self._ports == other._ports

    def __hash__(self):
        return hash(tuple(tuple(sorted(x.items())) for x in self._ports))


class Arc(NamedTuple):
    id: int
    s: int
    t: int


class SymDigraph:
    """
    Directed multigraph with loops, endowed with an arc involution sym such that s(a) = t(sym(a)).

    Arcs are identified by their position 0..len(arcs)-1. Outports are optional; if given, the outports of the arcs
    leaving a vertex v form a bijection onto 1..deg(v).

    :param n: Number of vertices.
    :param arcs: (source, target) per arc.
    :param sym: Involution on arc ids.
    :param outports: Optional port per arc at its source.
    :param name: Optional label.
    """

    def __init__(
            self,
            n: int,
            arcs: Sequence[Sequence[int]],
            sym: Sequence[int],
            outports: Optional[Sequence[int]] = None,
            name: Optional[str] = None,
    ):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise GraphValidationError(f"vertex count needs to be a positive integer, was {n!r}")
        if len(sym) != len(arcs):
            raise GraphValidationError(f"sym has {len(sym)} entries for {len(arcs)} arcs")
        src, tgt = [], []
        for a, x in enumerate(arcs):
            s, t = int(x[0]), int(x[1])
            for v in (s, t):
                if not 0 <= v < n:
                    raise GraphValidationError(f"arc {a} references vertex {v} outside 0..{n - 1}")
            src.append(s)
            tgt.append(t)
        sym = [int(b) for b in sym]
        for a, b in enumerate(sym):
            if not 0 <= b < len(arcs):
                raise GraphValidationError(f"sym({a}) = {b} is not an arc id")
            if sym[b] != a:
                raise GraphValidationError(f"sym is not an involution on arc {a}: sym(sym({a})) = {sym[b]}")
            if src[a] != tgt[b]:
                raise GraphValidationError(f"arc {a} starts at {src[a]} but sym({a}) = {b} ends at {tgt[b]}")
        self._n = n
        self._src = tuple(src)
        self._tgt = tuple(tgt)
        self._sym = tuple(sym)
        out_arcs: List[List[int]] = [[] for _ in range(n)]
        in_arcs: List[List[int]] = [[] for _ in range(n)]
        for a in range(len(src)):
            out_arcs[src[a]].append(a)
            in_arcs[tgt[a]].append(a)
        self._out = tuple(tuple(x) for x in out_arcs)
        self._in = tuple(tuple(x) for x in in_arcs)
        self.name = name
        if outports is not None:
            outports = tuple(int(p) for p in outports)
            if len(outports) != len(src):
                raise GraphValidationError(f"outports has {len(outports)} entries for {len(src)} arcs")
            for v in range(n):
                got = sorted(outports[a] for a in self._out[v])
                if got != list(range(1, len(self._out[v]) + 1)):
                    raise GraphValidationError(
                        f"outports at vertex {v} are {got}, need a bijection onto 1..{len(self._out[v])}"
                    )
        self._outports = outports

    @property
    def n(self) -> int:
        return self._n

    @property
    def n_arcs(self) -> int:
        return len(self._src)

    @property
    def arcs(self) -> List[Arc]:
        return [Arc(a, self._src[a], self._tgt[a]) for a in range(len(self._src))]

    def src(self, a: int) -> int:
        return self._src[a]

    def tgt(self, a: int) -> int:
        return self._tgt[a]

    def sym(self, a: int) -> int:
        return self._sym[a]

    @property
    def sym_map(self) -> Tuple[int, ...]:
        return self._sym

    def out_arcs(self, v: int) -> Tuple[int, ...]:
        return self._out[v]

    def in_arcs(self, v: int) -> Tuple[int, ...]:
        return self._in[v]

    def degree(self, v: int) -> int:
        return len(self._out[v])

    @property
    def degrees(self) -> List[int]:
        return [len(x) for x in self._out]

    @property
    def has_ports(self) -> bool:
        return self._outports is not None

    @property
    def outports(self) -> Optional[Tuple[int, ...]]:
        return self._outports

    def outport(self, a: int) -> int:
        return self._outports[a]

    def inport(self, a: int) -> int:
        """Port through which a message sent along a arrives at t(a)."""
        return self._outports[self._sym[a]]

    def arc_at_outport(self, v: int, p: int) -> int:
        for a in self._out[v]:
            if self._outports[a] == p:
                return a
        raise GraphValidationError(f"vertex {v} has no outport {p}")

    def arc_at_inport(self, v: int, p: int) -> int:
        for a in self._in[v]:
            if self.inport(a) == p:
                return a
        raise GraphValidationError(f"vertex {v} has no inport {p}")

    def is_loop(self, a: int) -> bool:
        return self._src[a] == self._tgt[a]

    def is_self_symmetric(self, a: int) -> bool:
        return self._sym[a] == a

    def has_loops(self) -> bool:
        return any(s == t for s, t in zip(self._src, self._tgt))

    def loop_vertices(self) -> List[int]:
        return sorted({s for s, t in zip(self._src, self._tgt) if s == t})

    def is_simple(self) -> bool:
        """No loops and no multi-arcs."""
        if self.has_loops():
            return False
        return len(set(zip(self._src, self._tgt))) == len(self._src)

    def sym_pairs(self) -> List[Tuple[int, int]]:
        """One (a, sym(a)) per orbit of sym, with a <= sym(a)."""
        return [(a, b) for a, b in enumerate(self._sym) if a <= b]

    def is_connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(zip(self._src, self._tgt))
        return nx.is_connected(g)

    def multiplicity_matrix(self) -> np.ndarray:
        """Number of arcs from i to j; self-symmetric loops and other loops are both counted on the diagonal."""
        x = np.zeros((self._n, self._n), dtype=np.int64)
        for s, t in zip(self._src, self._tgt):
            x[s, t] += 1
        return x

    def self_symmetric_loop_counts(self) -> List[int]:
        x = [0] * self._n
        for a, b in enumerate(self._sym):
            if a == b:
                x[self._src[a]] += 1
        return x

    def with_outports(self, outports: Optional[Sequence[int]]) -> "SymDigraph":
        return SymDigraph(n=self._n, arcs=list(zip(self._src, self._tgt)), sym=self._sym, outports=outports,
                          name=self.name)

    def without_ports(self) -> "SymDigraph":
        return self.with_outports(None)

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(self._n))
        for a in range(self.n_arcs):
            g.add_edge(self._src[a], self._tgt[a], key=a, self_symmetric=self._sym[a] == a)
        return g

    def __eq__(self, other):
        return isinstance(other, SymDigraph) and self._n == other._n and self._src == other._src and \
            self._tgt == other._tgt and self._sym == other._sym and self._outports == other._outports

    def __hash__(self):
        return hash((self._n, self._src, self._tgt, self._sym, self._outports))

    def __repr__(self):
        return f"SymDigraph(name={self.name!r}, n={self._n}, arcs={self.n_arcs}, ported={self.has_ports})"


@dataclass(frozen=True)
class GraphMetrics:
    n: int
    m: int
    max_degree: int
    diameter: int


def graph_metrics(g: UGraph) -> GraphMetrics:
    return GraphMetrics(n=g.n, m=g.m, max_degree=max(g.degrees), diameter=nx.diameter(g.to_networkx()))


def dir_graph(g: UGraph, ports: Optional[PortNumbering] = None) -> SymDigraph:
    """
    Symmetric digraph of g: edge i = {u, v} with u < v becomes arcs 2i = (u, v) and 2i + 1 = (v, u).

    :param g: Undirected graph.
    :param ports: If given, the outport of arc (u, v) is the port of {u, v} at u.
    :return: Symmetric digraph with 2 * |E(g)| arcs.
    """
    if ports is not None and ports.graph != g:
        raise GraphValidationError("port numbering belongs to a different graph")
    arcs, sym, outports = [], [], []
    for i, (u, v) in enumerate(g.edges):
        arcs.extend([(u, v), (v, u)])
        sym.extend([2 * i + 1, 2 * i])
        if ports is not None:
            outports.extend([ports.port(u, v), ports.port(v, u)])
    return SymDigraph(n=g.n, arcs=arcs, sym=sym, outports=outports if ports is not None else None, name=g.name)


def undirected_of(d: SymDigraph, name: Optional[str] = None) -> UGraph:
    """Inverse of dir_graph for simple symmetric digraphs."""
    if not d.is_simple():
        raise GraphValidationError(f"{d!r} has loops or multi-arcs and has no simple undirected counterpart")
    return UGraph(n=d.n, edges=[(a.s, a.t) for a in d.arcs if a.s < a.t], name=name if name is not None else d.name)


def relabel(d: SymDigraph, perm: Sequence[int]) -> SymDigraph:
    """Moves vertex v to perm[v], arc ids and ports are kept."""
    if sorted(perm) != list(range(d.n)):
        raise GraphValidationError(f"{list(perm)} is not a permutation of 0..{d.n - 1}")
    return SymDigraph(
        n=d.n,
        arcs=[(perm[a.s], perm[a.t]) for a in d.arcs],
        sym=d.sym_map,
        outports=d.outports,
        name=d.name,
    )
