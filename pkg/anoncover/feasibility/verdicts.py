"""
Decisions for spanning tree construction and topology recognition, each carrying re-verifiable witnesses.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from anoncover.consts import VerdictDecisions, VerdictReasons
from anoncover.coverings.morphism import CoveringMap
from anoncover.coverings.quotient import BaseEnumeration, enumerate_bases
from anoncover.graphs.base import SymDigraph, UGraph, dir_graph
from anoncover.graphs.io import graph_to_dict
from anoncover.lifts.enumerate import enumerate_lifts

log = logging.getLogger(__name__)


@dataclass
class Witness:
    """
    A covering of the input onto base, or two non-isomorphic simple connected lifts of base.

    kind is "covering" or "lift-pair".
    """
    kind: str
    base: SymDigraph
    cover: Optional[CoveringMap] = None
    lifts: List[SymDigraph] = field(default_factory=list)

    @property
    def q(self) -> Optional[int]:
        if self.cover is not None:
            return self.cover.q
        return self.lifts[0].n // self.base.n if self.lifts else None

    def to_dict(self) -> dict:
        x = {"kind": self.kind, "q": self.q, "base": graph_to_dict(self.base)}
        if self.cover is not None:
            x["map"] = {"vmap": list(self.cover.vmap), "amap": list(self.cover.amap), "q": self.cover.q}
        if self.lifts:
            x["lifts"] = [graph_to_dict(d) for d in self.lifts]
        return x


@dataclass
class FeasibilityVerdict:
    """
    decision is one of VerdictDecisions, reason one of VerdictReasons.

    certificate describes the search that backs the decision (partitions seen, sheet counts, completeness).
    """
    decision: str
    reason: str
    witnesses: List[Witness] = field(default_factory=list)
    certificate: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "decision": self.decision,
            "reason": self.reason,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "certificate": dict(self.certificate),
        }


def _certificate(bases: BaseEnumeration) -> Dict[str, Any]:
    return {
        "complete": bases.complete,
        "partitions_seen": bases.partitions_seen,
        "bases": sorted((c.q, b.n) for b, c in bases.bases),
    }


def _covering_witness(base: SymDigraph, cover: CoveringMap) -> Witness:
    return Witness(kind="covering", base=base, cover=cover)


def spanning_tree_feasible(g: UGraph, budget: Optional[int] = None) -> FeasibilityVerdict:
    """
    Spanning tree construction is feasible on g iff dir(g) is minimal, or dir(g) covers a base with a loop in two
    sheets and no base in more than two sheets.

    :param g: Graph.
    :param budget: Search budget per sheet count, defaults to settings.search_budget.
    """
    bases = enumerate_bases(dir_graph(g), budget=budget)
    certificate = _certificate(bases)
    larger = [(b, c) for b, c in bases.bases if c.q > 2]
    if larger:
        b, c = min(larger, key=lambda x: (x[1].q, x[0].n_arcs))
        verdict = FeasibilityVerdict(decision=VerdictDecisions.infeasible, reason=VerdictReasons.q_gt_2_cover,
                                     witnesses=[_covering_witness(b, c)], certificate=certificate)
    elif not bases.complete:
        verdict = FeasibilityVerdict(decision=VerdictDecisions.unknown, reason=VerdictReasons.budget,
                                     witnesses=[_covering_witness(b, c) for b, c in bases.bases],
                                     certificate=certificate)
    elif not bases.bases:
        verdict = FeasibilityVerdict(decision=VerdictDecisions.feasible, reason=VerdictReasons.minimal,
                                     certificate=certificate)
    else:
        looped = [(b, c) for b, c in bases.bases if b.has_loops()]
        if looped:
            verdict = FeasibilityVerdict(decision=VerdictDecisions.feasible, reason=VerdictReasons.two_sheet_loop,
                                         witnesses=[_covering_witness(*looped[0])], certificate=certificate)
        else:
            verdict = FeasibilityVerdict(decision=VerdictDecisions.infeasible,
                                         reason=VerdictReasons.loopless_2_cover,
                                         witnesses=[_covering_witness(b, c) for b, c in bases.bases],
                                         certificate=certificate)
    log.info(f"spanning tree on {g.name or 'graph'}: {verdict.decision} ({verdict.reason})")
    return verdict


def topology_recognition_feasible(
        g: UGraph,
        budget: Optional[int] = None,
        lift_budget: Optional[int] = None,
) -> FeasibilityVerdict:
    """
    Topology recognition is feasible on g iff every base of dir(g) has exactly one simple connected lift with as many
    sheets as it has towards dir(g).

    dir(g) is itself such a lift of each of its bases, so a second, non-isomorphic one is the infeasibility witness.

    :param g: Graph.
    :param budget: Base search budget per sheet count, defaults to settings.search_budget.
    :param lift_budget: Assignment budget per lift enumeration, defaults to settings.lift_budget.
    """
    bases = enumerate_bases(dir_graph(g), budget=budget)
    certificate = _certificate(bases)
    complete = bases.complete
    lift_counts = []
    for b, c in bases.bases:
        lifts = enumerate_lifts(b, c.q, simple=True, connected=True, budget=lift_budget)
        lift_counts.append([c.q, b.n, len(lifts.classes), lifts.complete])
        if len(lifts.classes) >= 2:
            certificate["lift_counts"] = lift_counts
            verdict = FeasibilityVerdict(
                decision=VerdictDecisions.infeasible,
                reason=VerdictReasons.ambiguous_lifts,
                witnesses=[Witness(kind="lift-pair", base=b, cover=None, lifts=lifts.graphs[:2]),
                           _covering_witness(b, c)],
                certificate=certificate,
            )
            log.info(f"topology recognition on {g.name or 'graph'}: infeasible, {len(lifts.classes)} lifts of a "
                     f"{c.q}-sheeted base")
            return verdict
        complete = complete and lifts.complete
    certificate["lift_counts"] = lift_counts
    if not complete:
        return FeasibilityVerdict(decision=VerdictDecisions.unknown, reason=VerdictReasons.budget,
                                  certificate=certificate)
    reason = VerdictReasons.minimal if not bases.bases else VerdictReasons.unique_lifts
    log.info(f"topology recognition on {g.name or 'graph'}: feasible ({reason})")
    return FeasibilityVerdict(decision=VerdictDecisions.feasible, reason=reason,
                              witnesses=[_covering_witness(b, c) for b, c in bases.bases], certificate=certificate)
