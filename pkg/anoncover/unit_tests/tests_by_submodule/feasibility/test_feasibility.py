import pytest

from anoncover.consts import VerdictDecisions, VerdictReasons
from anoncover.coverings import classify_covering, is_minimal
from anoncover.feasibility import counterexample_search, graphs_with_degree_sequence, regular_graphs, \
    share_degree_refinement, spanning_tree_feasible, topology_recognition_feasible, verify_counterexample_pair, \
    yk_sufficient_condition
from anoncover.graphs import UGraph, builtin, dir_graph
from anoncover.lifts import is_isomorphic

K33 = UGraph(n=6, edges=[(u, v) for u in range(3) for v in range(3, 6)], name="k33")
PRISM = UGraph(n=6, edges=[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)], name="prism")


@pytest.mark.parametrize("name,decision,reason", [
    ("k2", VerdictDecisions.feasible, VerdictReasons.two_sheet_loop),
    ("c4", VerdictDecisions.infeasible, VerdictReasons.q_gt_2_cover),
    ("h-g4", VerdictDecisions.feasible, VerdictReasons.two_sheet_loop),
    ("p3", VerdictDecisions.feasible, VerdictReasons.minimal),
    ("star-k13", VerdictDecisions.feasible, VerdictReasons.minimal),
    ("k4", VerdictDecisions.infeasible, VerdictReasons.q_gt_2_cover),
    ("c6", VerdictDecisions.infeasible, VerdictReasons.q_gt_2_cover),
    ("h-g5", VerdictDecisions.infeasible, VerdictReasons.q_gt_2_cover),
    ("h-g6", VerdictDecisions.infeasible, VerdictReasons.q_gt_2_cover),
    ("h-g7", VerdictDecisions.infeasible, VerdictReasons.q_gt_2_cover),
])
def test_spanning_tree(name: str, decision: str, reason: str):
    verdict = spanning_tree_feasible(builtin(name))
    assert verdict.decision == decision
    assert verdict.reason == reason
    assert verdict.certificate["complete"]


def test_spanning_tree_witnesses_verify(k2, c4):
    for g in [k2, c4, builtin("h-g4")]:
        verdict = spanning_tree_feasible(g)
        assert verdict.witnesses
        for w in verdict.witnesses:
            assert w.kind == "covering"
            assert classify_covering(w.cover).is_symmetric_covering


def test_spanning_tree_c4_witness_sheets():
    w = spanning_tree_feasible(builtin("c4")).witnesses[0]
    assert w.q == 4
    assert w.to_dict()["kind"] == "covering"


def test_spanning_tree_h_g4_witness_is_h_g1():
    w = spanning_tree_feasible(builtin("h-g4")).witnesses[0]
    assert is_isomorphic(w.base, builtin("h-g1"))[0]


def test_spanning_tree_budget_unknown():
    verdict = spanning_tree_feasible(builtin("c4"), budget=1)
    assert verdict.decision == VerdictDecisions.unknown
    assert verdict.reason == VerdictReasons.budget
    assert not verdict.certificate["complete"]


@pytest.mark.parametrize("name,decision,reason", [
    ("h-g4", VerdictDecisions.feasible, VerdictReasons.unique_lifts),
    ("h-g5", VerdictDecisions.infeasible, VerdictReasons.ambiguous_lifts),
    ("h-g6", VerdictDecisions.infeasible, VerdictReasons.ambiguous_lifts),
    ("h-g7", VerdictDecisions.infeasible, VerdictReasons.ambiguous_lifts),
    ("p3", VerdictDecisions.feasible, VerdictReasons.minimal),
    ("k2", VerdictDecisions.feasible, VerdictReasons.unique_lifts),
    ("c4", VerdictDecisions.feasible, VerdictReasons.unique_lifts),
])
def test_topology(name: str, decision: str, reason: str):
    verdict = topology_recognition_feasible(builtin(name))
    assert verdict.decision == decision
    assert verdict.reason == reason


def test_topology_h_g6_lift_pair():
    verdict = topology_recognition_feasible(builtin("h-g6"))
    pair = [w for w in verdict.witnesses if w.kind == "lift-pair"]
    assert len(pair) == 1
    a, b = pair[0].lifts
    assert a.is_simple() and b.is_simple()
    assert a.is_connected() and b.is_connected()
    assert a.n == b.n == 8
    assert not is_isomorphic(a, b)[0]
    assert "lifts" in pair[0].to_dict()


def test_topology_lift_budget_unknown():
    verdict = topology_recognition_feasible(builtin("h-g4"), lift_budget=1)
    assert verdict.decision == VerdictDecisions.unknown


@pytest.mark.parametrize("name", ["p3", "star-k13"])
def test_minimal_feasible_for_both(name: str):
    g = builtin(name)
    assert is_minimal(dir_graph(g)).minimal
    assert spanning_tree_feasible(g).decision == VerdictDecisions.feasible
    assert topology_recognition_feasible(g).decision == VerdictDecisions.feasible


@pytest.mark.parametrize("name", ["c4", "c6", "k4", "fig1-base", "h-g6"])
def test_larger_base_never_feasible(name: str):
    verdict = spanning_tree_feasible(builtin(name))
    if any(q > 2 for q, _ in verdict.certificate["bases"]):
        assert verdict.decision != VerdictDecisions.feasible


@pytest.mark.parametrize("name", ["k2", "c6", "k4"])
def test_yk_holds(name: str):
    assert yk_sufficient_condition(builtin(name)).holds is True


def test_yk_fails_k33():
    result = yk_sufficient_condition(K33)
    assert result.holds is False
    assert is_isomorphic(dir_graph(result.witness), dir_graph(PRISM))[0]
    assert result.to_dict()["witness"]["n"] == 6


def test_share_degree_refinement():
    assert share_degree_refinement(K33, PRISM)
    assert not share_degree_refinement(builtin("p3"), builtin("k2"))
    assert share_degree_refinement(builtin("c4"), builtin("c6"))


@pytest.mark.parametrize("degrees,count", [
    ([1, 1], 1),
    ([2, 2, 2, 2], 1),
    ([2, 1, 1], 1),
    ([3, 3, 3, 3], 1),
    ([3, 3, 3, 3, 3, 3], 2),
    ([2, 2, 1, 1], 1),
    ([3, 1, 1, 1], 1),
    ([2, 2], 0),
])
def test_graphs_with_degree_sequence(degrees: list, count: int):
    found = list(graphs_with_degree_sequence(degrees))
    assert len(found) == count
    for g in found:
        assert sorted(g.degrees) == sorted(degrees)


def test_regular_graphs_cubic_eight():
    assert len(list(regular_graphs(8, 3))) == 5


def test_counterexample_small_empty():
    report = counterexample_search(3, 6)
    assert report.complete
    assert report.pairs == []
    assert report.searched == [(4, 1, 0), (6, 2, 0)]


def test_counterexample_eight():
    report = counterexample_search(3, 8)
    assert report.pairs == []
    assert report.searched[-1] == (8, 5, 0)
    assert report.to_dict()["complete"]


def test_counterexample_ten():
    """No two cubic graphs on at most 10 vertices are both minimal."""
    report = counterexample_search(3, 10)
    assert report.complete
    assert report.pairs == []
    assert report.searched == [(4, 1, 0), (6, 2, 0), (8, 5, 0), (10, 19, 0)]


def test_counterexample_rejects_degree():
    with pytest.raises(ValueError):
        counterexample_search(2, 6)


def test_verify_pair_k33_prism():
    result = verify_counterexample_pair(K33, PRISM)
    assert result.same_size and result.non_isomorphic and result.common_covering
    assert result.regular_degree == 3
    assert result.minimal_a is False and result.minimal_b is False
    assert result.is_counterexample is False
