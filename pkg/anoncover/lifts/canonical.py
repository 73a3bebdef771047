"""
Canonical forms and isomorphism of symmetric digraphs.

Two symmetric digraphs are isomorphic iff they have the same number of arcs between every ordered vertex pair and the
same numbers of self-symmetric and of other loops at every vertex, so the certificate is built from exactly these
quantities under a canonical vertex order. The order is found by individualization and refinement.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from anoncover._settings import settings
from anoncover.errors import GraphValidationError
from anoncover.graphs.base import SymDigraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanonicalForm:
    certificate: Tuple
    order: Tuple[int, ...]


@dataclass(frozen=True)
class Isomorphism:
    vmap: Tuple[int, ...]
    amap: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"vmap": list(self.vmap), "amap": list(self.amap)}


def _invariants(d: SymDigraph) -> Tuple[np.ndarray, List[Tuple[int, int, int]]]:
    mult = d.multiplicity_matrix()
    self_sym = d.self_symmetric_loop_counts()
    inv = []
    for v in range(d.n):
        loops = int(mult[v, v])
        inv.append((d.degree(v), self_sym[v], loops - self_sym[v]))
    np.fill_diagonal(mult, 0)
    return mult, inv


def _refine(cells: List[List[int]], mult: np.ndarray) -> List[List[int]]:
    """Splits ordered cells by arc counts into the cells until stable; the split order is label independent."""
    n = mult.shape[0]
    while True:
        indicator = np.zeros((n, len(cells)), dtype=np.int64)
        for i, cell in enumerate(cells):
            indicator[cell, i] = 1
        signature = mult @ indicator
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                groups.setdefault(tuple(signature[v].tolist()), []).append(v)
            for key in sorted(groups.keys()):
                new_cells.append(groups[key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def canonical_form(d: SymDigraph) -> CanonicalForm:
    """
    Canonical certificate of d, equal for two graphs iff they are isomorphic.

    :param d: Symmetric digraph, at most settings.iso_max_vertices vertices.
    :return: Certificate and the vertex order realizing it (order[i] is the vertex placed at position i).
    """
    if d.n > settings.iso_max_vertices:
        raise GraphValidationError(f"isomorphism is limited to {settings.iso_max_vertices} vertices, got {d.n}")
    mult, inv = _invariants(d)
    groups: Dict[Tuple[int, int, int], List[int]] = {}
    for v in range(d.n):
        groups.setdefault(inv[v], []).append(v)
    cells = [groups[k] for k in sorted(groups.keys())]
    best: List[Optional[Tuple]] = [None, None]

    def certificate(order: List[int]) -> Tuple:
        sub = mult[np.ix_(order, order)]
        return tuple(inv[v] for v in order), tuple(sub.flatten().tolist())

    def search(cells: List[List[int]]):
        cells = _refine(cells, mult)
        if all(len(c) == 1 for c in cells):
            order = [c[0] for c in cells]
            cert = certificate(order)
            if best[0] is None or cert < best[0]:
                best[0] = cert
                best[1] = tuple(order)
            return
        target = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        for v in cells[target]:
            rest = [w for w in cells[target] if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(cells)
    return CanonicalForm(certificate=(d.n, d.n_arcs) + best[0], order=best[1])


def is_isomorphic(d1: SymDigraph, d2: SymDigraph) -> Tuple[bool, Optional[Isomorphism]]:
    """
    Decides isomorphism of two symmetric digraphs, ports are ignored.

    :return: (decision, isomorphism d1 -> d2 preserving sources, targets and sym, or None).
    """
    if d1.n != d2.n or d1.n_arcs != d2.n_arcs or sorted(d1.degrees) != sorted(d2.degrees):
        return False, None
    c1, c2 = canonical_form(d1), canonical_form(d2)
    if c1.certificate != c2.certificate:
        return False, None
    vmap = [0] * d1.n
    for x, y in zip(c1.order, c2.order):
        vmap[x] = y
    amap = [-1] * d1.n_arcs

    def bundle(d: SymDigraph, u: int, v: int) -> List[int]:
        return sorted(a for a in d.out_arcs(u) if d.tgt(a) == v)

    for u in range(d1.n):
        for v in range(u, d1.n):
            arcs1, arcs2 = bundle(d1, u, v), bundle(d2, vmap[u], vmap[v])
            if u != v:
                for a, b in zip(arcs1, arcs2):
                    amap[a], amap[d1.sym(a)] = b, d2.sym(b)
                continue
            selfsym1 = [a for a in arcs1 if d1.sym(a) == a]
            selfsym2 = [b for b in arcs2 if d2.sym(b) == b]
            for a, b in zip(selfsym1, selfsym2):
                amap[a] = b
            pairs1 = [a for a in arcs1 if a < d1.sym(a)]
            pairs2 = [b for b in arcs2 if b < d2.sym(b)]
            for a, b in zip(pairs1, pairs2):
                amap[a], amap[d1.sym(a)] = b, d2.sym(b)
    return True, Isomorphism(vmap=tuple(vmap), amap=tuple(amap))
