"""
Lifts of a base symmetric digraph built from q copies of a spanning tree and permutations on the cotree arcs.

Sheets and permutations are 0-based internally: sigma[a][i] is the sheet reached when leaving sheet i along arc a.
"""
import logging
import re
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, List, Mapping, Optional, Tuple

from anoncover.coverings.morphism import CoveringMap
from anoncover.errors import GraphValidationError
from anoncover.graphs.base import SymDigraph

log = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def perm_from_cycles(cycles: str, q: int) -> Perm:
    """
    Parses 1-based cycle notation such as "(1)(23)" or "(1,2)(3)" into a 0-based permutation tuple.

    Multi-digit sheet numbers need commas.
    """
    perm = list(range(q))
    for body in re.findall(r"\(([^)]*)\)", cycles):
        items = [x for x in re.split(r"[,\s]+", body.strip()) if x] if ("," in body or " " in body.strip()) \
            else list(body.strip())
        idx = [int(x) - 1 for x in items]
        for i, x in enumerate(idx):
            if not 0 <= x < q:
                raise ValueError(f"sheet {x + 1} in {cycles!r} is outside 1..{q}")
            perm[x] = idx[(i + 1) % len(idx)]
    if sorted(perm) != list(range(q)):
        raise ValueError(f"{cycles!r} does not describe a permutation of 1..{q}")
    return tuple(perm)


def inverse(perm: Perm) -> Perm:
    inv = [0] * len(perm)
    for i, x in enumerate(perm):
        inv[x] = i
    return tuple(inv)


def is_involution(perm: Perm) -> bool:
    return all(perm[perm[i]] == i for i in range(len(perm)))


def bfs_spanning_tree(base: SymDigraph) -> FrozenSet[int]:
    """
    Breadth-first spanning tree from vertex 0, over sym pairs of non-loop arcs in ascending arc id.

    :return: Arc ids of the tree, both arcs of every tree edge.
    """
    seen = {0}
    tree = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for a in base.out_arcs(v):
            w = base.tgt(a)
            if w not in seen:
                seen.add(w)
                tree.update((a, base.sym(a)))
                queue.append(w)
    if len(seen) != base.n:
        raise GraphValidationError(f"base is disconnected, {base.n - len(seen)} vertices unreachable from vertex 0")
    return frozenset(tree)


def cotree_representatives(base: SymDigraph, tree: FrozenSet[int]) -> List[int]:
    """One arc per sym orbit outside the tree, the smaller id of each pair; self-symmetric loops represent themselves."""
    return [a for a in range(base.n_arcs) if a not in tree and a <= base.sym(a)]


@dataclass(frozen=True)
class PermAssignment:
    """
    Spanning tree of the base plus one permutation per cotree sym orbit.

    sigma is keyed by cotree representatives (see cotree_representatives); the arc sym(a) implicitly carries the
    inverse permutation.
    """
    q: int
    tree: FrozenSet[int]
    sigma: Mapping[int, Perm] = field(default_factory=dict)

    def validate(self, base: SymDigraph):
        if self.q < 1:
            raise GraphValidationError(f"sheet count needs to be positive, was {self.q}")
        tree = set(self.tree)
        for a in tree:
            if base.sym(a) not in tree:
                raise GraphValidationError(f"tree contains arc {a} but not sym({a}) = {base.sym(a)}")
            if base.is_loop(a):
                raise GraphValidationError(f"tree contains loop {a}")
        if len(tree) != 2 * (base.n - 1):
            raise GraphValidationError(f"tree has {len(tree) // 2} edges, a spanning tree of the base has {base.n - 1}")
        parent = list(range(base.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in tree:
            if a < base.sym(a):
                x, y = find(base.src(a)), find(base.tgt(a))
                if x == y:
                    raise GraphValidationError(f"tree arcs close a cycle at arc {a}")
                parent[x] = y
        reps = cotree_representatives(base, frozenset(tree))
        if set(self.sigma.keys()) != set(reps):
            raise GraphValidationError(f"permutations given for arcs {sorted(self.sigma.keys())}, cotree "
                                       f"representatives are {reps}")
        for a, perm in self.sigma.items():
            if sorted(perm) != list(range(self.q)):
                raise GraphValidationError(f"sigma of arc {a} is not a permutation of {self.q} sheets: {perm}")
            if base.sym(a) == a and not is_involution(perm):
                raise GraphValidationError(f"arc {a} is a self-symmetric loop, its permutation {perm} needs to be an "
                                           f"involution")

    def permutation(self, base: SymDigraph, a: int) -> Perm:
        if a in self.tree:
            return tuple(range(self.q))
        if a in self.sigma:
            return tuple(self.sigma[a])
        return inverse(tuple(self.sigma[base.sym(a)]))

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "tree": sorted(self.tree),
            "sigma": {str(a): [x + 1 for x in p] for a, p in sorted(self.sigma.items())},
        }


def lift_arrays(base: SymDigraph, pa: PermAssignment) -> Tuple[List[Tuple[int, int]], List[int]]:
    """
    Arc endpoints and sym of the lift, without validation.

    Vertex (u, i) gets id u * q + i, arc (a, i) leaving sheet i gets id a * q + i.
    """
    q = pa.q
    arcs: List[Tuple[int, int]] = []
    sym: List[int] = []
    perms = [pa.permutation(base, a) for a in range(base.n_arcs)]
    for a in range(base.n_arcs):
        s, t, b = base.src(a), base.tgt(a), base.sym(a)
        for i in range(q):
            j = perms[a][i]
            arcs.append((s * q + i, t * q + j))
            sym.append(b * q + j)
    return arcs, sym


def reidemeister_lift(base: SymDigraph, pa: PermAssignment, name: Optional[str] = None) -> Tuple[SymDigraph,
                                                                                                 CoveringMap]:
    """
    q-sheeted lift of base defined by pa.

    Tree arcs connect equal sheets, a cotree arc a leads from sheet i to sheet sigma_a(i). Outports of the base, if any,
    are inherited.

    :return: (lift, covering map onto the base).
    """
    pa.validate(base)
    arcs, sym = lift_arrays(base, pa)
    q = pa.q
    outports = None
    if base.has_ports:
        outports = [base.outport(a) for a in range(base.n_arcs) for _ in range(q)]
    total = SymDigraph(n=base.n * q, arcs=arcs, sym=sym, outports=outports, name=name)
    cover = CoveringMap(
        total=total,
        base=base,
        vmap=tuple(u for u in range(base.n) for _ in range(q)),
        amap=tuple(a for a in range(base.n_arcs) for _ in range(q)),
    )
    return total, cover
