"""
Search for pairs of minimal regular graphs that share a finite common covering.

Such a pair defeats the sufficient condition of yk.py while topology recognition is feasible on both graphs.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from tqdm import tqdm

from anoncover.coverings.quotient import is_minimal
from anoncover.errors import BudgetExhaustedError
from anoncover.feasibility.generation import regular_graphs
from anoncover.feasibility.yk import share_degree_refinement
from anoncover.graphs.base import UGraph, dir_graph
from anoncover.graphs.io import graph_to_dict
from anoncover.lifts.canonical import is_isomorphic

log = logging.getLogger(__name__)


@dataclass
class CounterexampleReport:
    """
    Pairs found for every searched size.

    searched lists (n, number of d-regular graphs, number of minimal ones); cut lists the sizes at which a budget
    ran out.
    """
    degree: int
    pairs: List[Tuple[UGraph, UGraph]] = field(default_factory=list)
    searched: List[Tuple[int, int, int]] = field(default_factory=list)
    cut: List[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.cut

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "pairs": [[graph_to_dict(a), graph_to_dict(b)] for a, b in self.pairs],
            "searched": [list(x) for x in self.searched],
            "cut": list(self.cut),
            "complete": self.complete,
        }


def counterexample_search(
        d: int,
        n_max: int,
        budget: Optional[int] = None,
        progress: bool = False,
) -> CounterexampleReport:
    """
    Pairs (A, B) of connected d-regular non-isomorphic graphs on the same number of vertices with dir(A) and dir(B)
    both minimal.

    :param d: Degree, at least 3.
    :param n_max: Largest vertex count searched.
    :param budget: Budget of graph generation and of every minimality check.
    :param progress: Show a tqdm bar over the vertex counts.
    """
    if d < 3:
        raise ValueError(f"degree needs to be at least 3, was {d}")
    report = CounterexampleReport(degree=d)
    sizes = [n for n in range(d + 1, n_max + 1) if (n * d) % 2 == 0]
    for n in tqdm(sizes, disable=not progress, desc="vertex counts"):
        minimal: List[UGraph] = []
        count = 0
        try:
            for g in regular_graphs(n, d, budget=budget):
                count += 1
                result = is_minimal(dir_graph(g), budget=budget)
                if result.minimal is None:
                    report.cut.append(n)
                elif result.minimal:
                    minimal.append(g)
        except BudgetExhaustedError as e:
            log.warning(f"{d}-regular graphs on {n} vertices: {e}")
            report.cut.append(n)
        report.searched.append((n, count, len(minimal)))
        for i in range(len(minimal)):
            for j in range(i + 1, len(minimal)):
                report.pairs.append((minimal[i], minimal[j]))
        log.debug(f"n={n}: {count} graphs, {len(minimal)} minimal")
    report.cut = sorted(set(report.cut))
    return report


@dataclass
class PairVerification:
    same_size: bool
    regular_degree: Optional[int]
    non_isomorphic: bool
    minimal_a: Optional[bool]
    minimal_b: Optional[bool]
    common_covering: bool

    @property
    def is_counterexample(self) -> Optional[bool]:
        """None if a minimality search was cut."""
        if not (self.same_size and self.regular_degree is not None and self.non_isomorphic and self.common_covering):
            return False
        if self.minimal_a is False or self.minimal_b is False:
            return False
        if self.minimal_a is None or self.minimal_b is None:
            return None
        return True

    def to_dict(self) -> dict:
        x = {k: v for k, v in self.__dict__.items()}
        x["is_counterexample"] = self.is_counterexample
        return x


def verify_counterexample_pair(a: UGraph, b: UGraph, budget: Optional[int] = None) -> PairVerification:
    """Checks every property of a counterexample pair, with the given minimality budget."""
    degrees = set(a.degrees) | set(b.degrees)
    result = PairVerification(
        same_size=a.n == b.n,
        regular_degree=degrees.pop() if len(degrees) == 1 else None,
        non_isomorphic=not is_isomorphic(dir_graph(a), dir_graph(b))[0] if a.n == b.n else True,
        minimal_a=is_minimal(dir_graph(a), budget=budget).minimal,
        minimal_b=is_minimal(dir_graph(b), budget=budget).minimal,
        common_covering=share_degree_refinement(a, b),
    )
    log.info(f"pair verification: {result.to_dict()}")
    return result
