"""
The sufficient condition for topology recognition from the literature on anonymous computability: no other graph of
the same size shares a finite common covering with g.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from anoncover._settings import settings
from anoncover.coverings.partitions import refine_colors
from anoncover.errors import BudgetExhaustedError
from anoncover.feasibility.generation import graphs_with_degree_sequence
from anoncover.graphs.base import UGraph, dir_graph
from anoncover.graphs.io import graph_to_dict
from anoncover.lifts.canonical import is_isomorphic

log = logging.getLogger(__name__)


def share_degree_refinement(g: UGraph, h: UGraph) -> bool:
    """
    Whether two connected graphs have the same degree refinement, i.e. a finite common covering.

    Colour refinement runs on the disjoint union; both graphs need to end up with the same set of stable colours.
    """
    neighbors = [list(g.neighbors(v)) for v in range(g.n)] + [[w + g.n for w in h.neighbors(v)] for v in range(h.n)]
    colors = refine_colors(neighbors, [0] * (g.n + h.n))
    return set(colors[:g.n]) == set(colors[g.n:])


@dataclass
class YKResult:
    """holds is None if the search was cut before it could decide."""
    holds: Optional[bool]
    witness: Optional[UGraph] = None
    graphs_searched: int = 0

    def to_dict(self) -> dict:
        return {
            "holds": "unknown" if self.holds is None else self.holds,
            "witness": graph_to_dict(self.witness) if self.witness is not None else None,
            "graphs_searched": self.graphs_searched,
        }


def yk_sufficient_condition(g: UGraph, search_budget: Optional[int] = None) -> YKResult:
    """
    Checks that no non-isomorphic connected graph on as many vertices has the degree refinement of g.

    Graphs with equal degree refinement have equal degree sequences, so the search runs over the realizations of the
    degree sequence of g. The general search is limited to settings.yk_max_vertices vertices; regular graphs are always
    searched, since any other connected regular graph of the same degree is a witness.

    :param g: Graph.
    :param search_budget: Node budget of the graph generation, defaults to settings.search_budget.
    :return: holds=False with a witness, True, or None if the search was cut.
    """
    regular = len(set(g.degrees)) == 1
    if g.n > settings.yk_max_vertices and not regular:
        log.warning(f"{g.n} vertices exceed yk_max_vertices={settings.yk_max_vertices}, condition left undecided")
        return YKResult(holds=None)
    result = YKResult(holds=True)
    d = dir_graph(g)
    try:
        for h in graphs_with_degree_sequence(g.degrees, budget=search_budget):
            result.graphs_searched += 1
            if is_isomorphic(d, dir_graph(h))[0]:
                continue
            if share_degree_refinement(g, h):
                result.holds = False
                result.witness = h
                return result
    except BudgetExhaustedError as e:
        log.warning(f"condition undecided: {e}")
        result.holds = None
    return result
