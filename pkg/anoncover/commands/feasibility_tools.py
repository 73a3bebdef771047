import logging
from typing import Optional

from anoncover.commands.utils import as_ugraph, emit, exit_code_of, resolve_graph, stderr_console
from anoncover.consts import ExitCodes, VerdictDecisions
from anoncover.feasibility.counterexample import counterexample_search, verify_counterexample_pair
from anoncover.feasibility.verdicts import FeasibilityVerdict, spanning_tree_feasible, topology_recognition_feasible
from anoncover.feasibility.yk import yk_sufficient_condition

log = logging.getLogger(__name__)

DECISION_EXIT_CODES = {
    VerdictDecisions.feasible: ExitCodes.ok,
    VerdictDecisions.infeasible: ExitCodes.negative,
    VerdictDecisions.unknown: ExitCodes.unknown,
}


class FeasibilityChecker:

    def __init__(self, budget: Optional[int] = None):
        self.budget = budget
        self.console = stderr_console()

    def _report(self, problem: str, ref: str, verdict: FeasibilityVerdict) -> int:
        emit(verdict.to_dict())
        color = {VerdictDecisions.feasible: "green", VerdictDecisions.infeasible: "red"}.get(verdict.decision, "yellow")
        self.console.print(f"[bold {color}]{problem} on {ref}: {verdict.decision} ({verdict.reason})")
        return DECISION_EXIT_CODES[verdict.decision]

    def spanning_tree(self, ref: str) -> int:
        g = as_ugraph(resolve_graph(ref)[0], ref)
        return self._report("spanning tree", ref, spanning_tree_feasible(g, budget=self.budget))

    def topology(self, ref: str, lift_budget: Optional[int] = None) -> int:
        g = as_ugraph(resolve_graph(ref)[0], ref)
        verdict = topology_recognition_feasible(g, budget=self.budget, lift_budget=lift_budget)
        return self._report("topology recognition", ref, verdict)

    def yk_check(self, ref: str) -> int:
        g = as_ugraph(resolve_graph(ref)[0], ref)
        result = yk_sufficient_condition(g, search_budget=self.budget)
        emit(result.to_dict())
        return exit_code_of(result.holds)

    def counterexample(self, degree: int, max_n: int, progress: bool = True) -> int:
        report = counterexample_search(degree, max_n, budget=self.budget, progress=progress)
        emit(report.to_dict())
        self.console.print(f"[bold blue]{len(report.pairs)} pairs, searched sizes "
                           f"{[n for n, _, _ in report.searched]}")
        return ExitCodes.ok if report.complete else ExitCodes.unknown

    def verify_pair(self, ref_a: str, ref_b: str) -> int:
        a = as_ugraph(resolve_graph(ref_a)[0], ref_a)
        b = as_ugraph(resolve_graph(ref_b)[0], ref_b)
        result = verify_counterexample_pair(a, b, budget=self.budget)
        emit(result.to_dict())
        return exit_code_of(result.is_counterexample)
