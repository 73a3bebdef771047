"""
Construction of symmetric covering quotients from fibre partitions, base enumeration and minimality.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from anoncover._settings import settings
from anoncover.coverings.factorization import disjoint_perfect_matchings, regular_bipartite_factorization, \
    two_factorization
from anoncover.coverings.morphism import CoveringMap, classify_covering
from anoncover.coverings.partitions import FibrePartition, block_counts, equitable_partitions, is_equitable
from anoncover.errors import BudgetExhaustedError, CoveringError
from anoncover.graphs.base import SymDigraph
from anoncover.lifts.canonical import canonical_form

log = logging.getLogger(__name__)


def _check_partition(d: SymDigraph, p: FibrePartition):
    if not d.is_simple():
        raise CoveringError("quotient construction expects the symmetric digraph of a simple graph")
    if p.n != d.n:
        raise CoveringError(f"partition covers {p.n} vertices, graph has {d.n}")
    if not is_equitable(d, p):
        counts = block_counts(d, p)
        for i, b in enumerate(p.blocks):
            if len({tuple(counts[v]) for v in b}) > 1:
                raise CoveringError(f"partition is not equitable: vertices of block {i} {list(b)} see the blocks "
                                    f"with counts {[counts[v] for v in b]}")


def _internal_edges(d: SymDigraph, block: Sequence[int]) -> List[Tuple[int, int, int]]:
    """Edges inside a block as (u, v, arc id of u -> v) with u < v."""
    members = set(block)
    return [(a.s, a.t, a.id) for a in d.arcs if a.s in members and a.t in members and a.s < a.t]


def internal_degree(d: SymDigraph, p: FibrePartition, i: int) -> int:
    members = set(p.blocks[i])
    v = p.blocks[i][0]
    return sum(1 for a in d.out_arcs(v) if d.tgt(a) in members)


def block_loop_options(d: SymDigraph, p: FibrePartition, i: int) -> List[int]:
    """
    Achievable numbers of self-symmetric loops at the base vertex of block i.

    k self-symmetric loops need k edge-disjoint perfect matchings of the internal graph; the remaining even-regular
    graph always splits into 2-factors, so no further condition applies.
    """
    c = internal_degree(d, p, i)
    edges = _internal_edges(d, p.blocks[i])
    return [k for k in range(c % 2, c + 1, 2) if disjoint_perfect_matchings(p.blocks[i], edges, k) is not None]


def partition_to_base(
        d: SymDigraph,
        p: FibrePartition,
        self_loops: Optional[Sequence[int]] = None,
) -> Optional[Tuple[SymDigraph, CoveringMap]]:
    """
    Symmetric covering quotient of d over the fibre partition p.

    Cross-block arcs are split into perfect matchings of the regular bipartite cross graphs, one sym-paired base arc
    pair each. Inside a block, perfect matchings become self-symmetric loops and 2-factors become sym-paired loop pairs.

    :param d: Symmetric digraph of a simple graph.
    :param p: Equitable partition with equal block sizes.
    :param self_loops: Requested number of self-symmetric loops per block, defaults to the smallest possible (internal
        degree mod 2).
    :return: (base, covering map) or None if p does not admit a symmetric covering with these loop counts.
    """
    _check_partition(d, p)
    label = p.block_of()
    n_blocks = len(p.blocks)
    base_arcs: List[Tuple[int, int]] = []
    base_sym: List[int] = []
    amap = [-1] * d.n_arcs

    def new_pair(x: int, y: int) -> Tuple[int, int]:
        a, b = len(base_arcs), len(base_arcs) + 1
        base_arcs.extend([(x, y), (y, x)])
        base_sym.extend([b, a])
        return a, b

    for i in range(n_blocks):
        c = internal_degree(d, p, i)
        k = (c % 2) if self_loops is None else int(self_loops[i])
        if k < 0 or k > c or (c - k) % 2 == 1:
            return None
        edges = _internal_edges(d, p.blocks[i])
        matchings = disjoint_perfect_matchings(p.blocks[i], edges, k)
        if matchings is None:
            log.debug(f"block {i} with internal degree {c} has no {k} disjoint perfect matchings")
            return None
        for m in matchings:
            loop = len(base_arcs)
            base_arcs.append((i, i))
            base_sym.append(loop)
            for a in m:
                amap[a] = loop
                amap[d.sym(a)] = loop
        matched = {a for m in matchings for a in m}
        rest = [e for e in edges if e[2] not in matched]
        for factor in two_factorization(p.blocks[i], rest):
            forward, backward = new_pair(i, i)
            for u, v, a in factor:
                arc = a if d.src(a) == u else d.sym(a)
                amap[arc] = forward
                amap[d.sym(arc)] = backward
    for i, j in itertools.combinations(range(n_blocks), 2):
        cross = [(a.s, a.t, a.id) for a in d.arcs if label[a.s] == i and label[a.t] == j]
        if not cross:
            continue
        for m in regular_bipartite_factorization(left=list(p.blocks[i]), right=list(p.blocks[j]), edges=cross):
            forward, backward = new_pair(i, j)
            for a in m:
                amap[a] = forward
                amap[d.sym(a)] = backward
    base = SymDigraph(n=n_blocks, arcs=base_arcs, sym=base_sym)
    cover = CoveringMap(total=d, base=base, vmap=tuple(label), amap=tuple(amap))
    report = classify_covering(cover)
    if not report.is_symmetric_covering:
        raise CoveringError(f"constructed quotient is not a symmetric covering: {report.witnesses}")
    return base, cover


def admits_covering(d: SymDigraph, p: FibrePartition) -> bool:
    """p is a symmetric covering fibre partition iff every block of odd internal degree has a perfect matching."""
    _check_partition(d, p)
    for i in range(len(p.blocks)):
        if internal_degree(d, p, i) % 2 == 1:
            if disjoint_perfect_matchings(p.blocks[i], _internal_edges(d, p.blocks[i]), 1) is None:
                return False
    return True


@dataclass
class BaseEnumeration:
    """Bases found by a search; complete is False if the search ran out of budget."""
    bases: List[Tuple[SymDigraph, CoveringMap]] = field(default_factory=list)
    complete: bool = True
    partitions_seen: int = 0

    def of_sheets(self, q: int) -> List[Tuple[SymDigraph, CoveringMap]]:
        return [(b, c) for b, c in self.bases if c.q == q]


def _divisors(n: int) -> List[int]:
    return [q for q in range(1, n + 1) if n % q == 0]


def enumerate_bases(
        d: SymDigraph,
        max_q: Optional[int] = None,
        budget: Optional[int] = None,
        sheets: Optional[Sequence[int]] = None,
) -> BaseEnumeration:
    """
    All proper symmetric covering bases of d up to isomorphism.

    For every q >= 2 dividing n, every equitable partition into blocks of size q is turned into one base per
    achievable vector of self-symmetric loop counts.

    :param d: Symmetric digraph of a simple connected graph.
    :param max_q: Largest sheet count considered.
    :param budget: Search node budget per sheet count, defaults to settings.search_budget.
    :param sheets: Restrict the search to these sheet counts.
    """
    result = BaseEnumeration()
    seen: Dict[Tuple, int] = {}
    qs = [q for q in _divisors(d.n) if q >= 2 and (max_q is None or q <= max_q)]
    if sheets is not None:
        qs = [q for q in qs if q in set(sheets)]
    for q in qs:
        try:
            for p in equitable_partitions(d, q, budget=budget):
                result.partitions_seen += 1
                options = [block_loop_options(d, p, i) for i in range(len(p.blocks))]
                for loops in itertools.product(*options):
                    found = partition_to_base(d, p, self_loops=loops)
                    if found is None:
                        continue
                    cert = canonical_form(found[0]).certificate
                    if cert not in seen:
                        seen[cert] = len(result.bases)
                        result.bases.append(found)
        except BudgetExhaustedError as e:
            log.warning(f"base enumeration incomplete: {e}")
            result.complete = False
    log.debug(f"found {len(result.bases)} bases over {result.partitions_seen} equitable partitions")
    return result


@dataclass
class MinimalityResult:
    """minimal is None if the search was cut by its budget."""
    minimal: Optional[bool]
    witness: Optional[CoveringMap] = None
    partitions_seen: int = 0
    sheets_checked: List[int] = field(default_factory=list)


def is_minimal(d: SymDigraph, budget: Optional[int] = None) -> MinimalityResult:
    """
    Decides whether d admits no proper symmetric covering, exiting at the first base found.

    Sheet counts are tried from large to small since the single block case is a perfect matching test.
    """
    budget = settings.search_budget if budget is None else budget
    partitions_seen = 0
    checked = []
    complete = True
    for q in sorted((q for q in _divisors(d.n) if q >= 2), reverse=True):
        try:
            for p in equitable_partitions(d, q, budget=budget):
                partitions_seen += 1
                if admits_covering(d, p):
                    _, cover = partition_to_base(d, p)
                    return MinimalityResult(minimal=False, witness=cover, partitions_seen=partitions_seen,
                                            sheets_checked=checked + [q])
        except BudgetExhaustedError as e:
            log.warning(f"minimality search incomplete: {e}")
            complete = False
        checked.append(q)
    return MinimalityResult(minimal=True if complete else None, partitions_seen=partitions_seen, sheets_checked=checked)
