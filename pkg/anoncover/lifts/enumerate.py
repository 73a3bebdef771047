"""
Exhaustive enumeration of the q-sheeted symmetric coverings of a base.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Optional, Tuple

from anoncover._settings import settings
from anoncover.coverings.morphism import CoveringMap
from anoncover.errors import BudgetExhaustedError
from anoncover.graphs.base import SymDigraph
from anoncover.lifts.canonical import canonical_form
from anoncover.lifts.reidemeister import PermAssignment, bfs_spanning_tree, cotree_representatives, is_involution, \
    lift_arrays, reidemeister_lift

log = logging.getLogger(__name__)


@dataclass
class LiftClass:
    total: SymDigraph
    cover: CoveringMap
    assignment: PermAssignment


@dataclass
class LiftEnumeration:
    """Isomorphism classes of lifts in order of first appearance; complete is False if the budget cut the search."""
    classes: List[LiftClass] = field(default_factory=list)
    complete: bool = True
    assignments_tried: int = 0

    @property
    def graphs(self) -> List[SymDigraph]:
        return [x.total for x in self.classes]


def _is_simple(n: int, arcs: List[Tuple[int, int]]) -> bool:
    if any(s == t for s, t in arcs):
        return False
    return len(set(arcs)) == len(arcs)


def _is_connected(n: int, arcs: List[Tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = n
    for s, t in arcs:
        x, y = find(s), find(t)
        if x != y:
            parent[x] = y
            components -= 1
    return components == 1


def n_involutions(q: int) -> int:
    a, b = 1, 1
    for k in range(2, q + 1):
        a, b = b, b + (k - 1) * a
    return b


def n_assignments(base: SymDigraph, q: int, tree: Optional[FrozenSet[int]] = None) -> int:
    """Number of permutation assignments enumerate_lifts iterates over."""
    tree = bfs_spanning_tree(base) if tree is None else tree
    total = 1
    for a in cotree_representatives(base, tree):
        total *= n_involutions(q) if base.sym(a) == a else math.factorial(q)
    return total


def _involutions(q: int) -> Iterator[Tuple[int, ...]]:
    return (p for p in itertools.permutations(range(q)) if is_involution(p))


def _assignments(reps: List[int], base: SymDigraph, q: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Lazy lexicographic product of the per-arc permutation choices."""
    chosen: List[Tuple[int, ...]] = []

    def rec(i: int):
        if i == len(reps):
            yield tuple(chosen)
            return
        options = _involutions(q) if base.sym(reps[i]) == reps[i] else itertools.permutations(range(q))
        for p in options:
            chosen.append(p)
            yield from rec(i + 1)
            chosen.pop()

    return rec(0)


def enumerate_lifts(
        base: SymDigraph,
        q: int,
        simple: bool = False,
        connected: bool = False,
        tree: Optional[FrozenSet[int]] = None,
        budget: Optional[int] = None,
) -> LiftEnumeration:
    """
    All q-sheeted symmetric coverings of base up to isomorphism.

    Every covering arises from some permutation assignment over any fixed spanning tree, so iterating all assignments
    over one tree is complete. Assignments are visited in lexicographic order of their permutation tuples, which makes
    the first representative of each class deterministic.

    :param base: Connected base graph.
    :param q: Number of sheets.
    :param simple: Keep only lifts without loops and multi-arcs.
    :param connected: Keep only connected lifts.
    :param tree: Spanning tree, defaults to bfs_spanning_tree(base).
    :param budget: Maximal number of assignments, defaults to settings.lift_budget.
    """
    if q < 1:
        raise ValueError(f"sheet count needs to be positive, was {q}")
    budget = settings.lift_budget if budget is None else budget
    tree = bfs_spanning_tree(base) if tree is None else frozenset(tree)
    reps = cotree_representatives(base, tree)
    result = LiftEnumeration()
    seen = set()
    if n_assignments(base, q, tree) > budget:
        log.warning(f"{n_assignments(base, q, tree)} assignments for {q} sheets exceed the budget of {budget}")
    for combo in _assignments(reps, base, q):
        if result.assignments_tried >= budget:
            log.warning(f"lift enumeration of {q} sheets stopped after {budget} assignments")
            result.complete = False
            break
        result.assignments_tried += 1
        pa = PermAssignment(q=q, tree=tree, sigma=dict(zip(reps, combo)))
        arcs, _ = lift_arrays(base, pa)
        if simple and not _is_simple(base.n * q, arcs):
            continue
        if connected and not _is_connected(base.n * q, arcs):
            continue
        total, cover = reidemeister_lift(base, pa)
        cert = canonical_form(total).certificate
        if cert in seen:
            continue
        seen.add(cert)
        result.classes.append(LiftClass(total=total, cover=cover, assignment=pa))
    log.debug(f"{result.assignments_tried} assignments gave {len(result.classes)} lift classes")
    return result


def unique_simple_connected_lift(base: SymDigraph, q: int, budget: Optional[int] = None) -> Optional[SymDigraph]:
    """
    The simple connected q-sheeted lift of base if there is exactly one up to isomorphism.

    :raises BudgetExhaustedError: if the enumeration was cut before the answer was certain.
    """
    lifts = enumerate_lifts(base, q, simple=True, connected=True, budget=budget)
    if len(lifts.classes) >= 2:
        return None
    if not lifts.complete:
        raise BudgetExhaustedError(f"lift enumeration of {q} sheets was cut with {len(lifts.classes)} classes",
                                   partial=lifts)
    return lifts.classes[0].total if lifts.classes else None
