import pytest

from anoncover._settings import settings
from anoncover.consts import ProtocolIds, SchedulerIds, SpanningTreeDecisions, TarryRoles, VerdictDecisions
from anoncover.coverings import CoveringMap, enumerate_bases
from anoncover.errors import ProtocolInvariantError
from anoncover.feasibility import spanning_tree_feasible, topology_recognition_feasible
from anoncover.graphs import assign_arc_ports, assign_ports, builtin, dir_graph, lift_ports, load_graph, random_connected_graph, \
    random_tree
from anoncover.lifts import is_isomorphic
from anoncover.protocols import MazState, ProcessContext, SpanningTreeComposite, get_protocol, recognize, role_from_quotient, spanning_tree_outcome
from anoncover.simulator import SimConfig, lockstep_lifted_run, ported_covering, run


def _network(name: str, mode: str = "canonical", seed: int = 0):
    g = builtin(name)
    return dir_graph(g, assign_ports(g, mode=mode, seed=seed))


def test_registry():
    for x in [ProtocolIds.mazurkiewicz, ProtocolIds.election_tree, ProtocolIds.tarry, ProtocolIds.spanning_tree,
              ProtocolIds.topology]:
        assert get_protocol(x).id == x
    with pytest.raises(ValueError):
        get_protocol("flooding")
    assert ProtocolIds.output not in ProtocolIds.all()
    assert get_protocol(ProtocolIds.topology).phases()[-1].id == ProtocolIds.output


def test_role_of_minimal_quotient():
    network = _network("p3")
    result = run(SimConfig(network=network, protocol=ProtocolIds.mazurkiewicz))
    roles = [role_from_quotient(s, network.n).role for s in result.states]
    assert roles.count(TarryRoles.leader) == 1
    assert roles.count(TarryRoles.none) == 2


def test_role_of_k2_lockstep():
    network = _network("k2")
    result = run(SimConfig(network=network, protocol=ProtocolIds.mazurkiewicz, scheduler=SchedulerIds.lockstep))
    for s in result.states:
        state = role_from_quotient(s, 2)
        assert state.role == TarryRoles.co_leader
        assert state.co_port == 1


@pytest.mark.parametrize("name", ["p3", "h-g4", "k2", "star-k13", "fig1-base"])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_spanning_tree_on_feasible_graphs(name: str, seed: int):
    network = _network(name, mode="random", seed=seed)
    result = run(SimConfig(network=network, protocol=ProtocolIds.spanning_tree, seed=seed))
    assert result.phases == 2
    outcome = spanning_tree_outcome(result, network)
    assert outcome.decision in [SpanningTreeDecisions.leader, SpanningTreeDecisions.co_leaders]
    assert outcome.valid_tree
    assert len(outcome.edges) == network.n - 1


def test_spanning_tree_k2_lockstep_co_leaders():
    network = _network("k2")
    result = run(SimConfig(network=network, protocol=ProtocolIds.spanning_tree, scheduler=SchedulerIds.lockstep))
    outcome = spanning_tree_outcome(result, network)
    assert outcome.decision == SpanningTreeDecisions.co_leaders
    assert outcome.initiators == [0, 1]
    assert outcome.edges == [(0, 1)]
    assert outcome.to_dict()["valid_tree"]


def test_spanning_tree_manifest_on_c4_lockstep():
    """With port 1 clockwise everywhere all four processes keep number 1 and nobody can initiate."""
    g = builtin("c4")
    base = assign_arc_ports(builtin("arete-h-prime"))
    cover = CoveringMap(total=dir_graph(g), base=base.without_ports(), vmap=(0, 0, 0, 0),
                        amap=(0, 1, 1, 0, 0, 1, 0, 1))
    network = dir_graph(g, lift_ports(g, base, cover))
    result = run(SimConfig(network=network, protocol=ProtocolIds.spanning_tree, scheduler=SchedulerIds.lockstep))
    outcome = spanning_tree_outcome(result, network)
    assert outcome.k == 1
    assert outcome.decision == SpanningTreeDecisions.manifest
    assert outcome.manifest is not None
    assert not outcome.valid_tree


def test_composite_needs_size():
    state = run(SimConfig(network=_network("k2"), protocol=ProtocolIds.mazurkiewicz)).states[0]
    with pytest.raises(ProtocolInvariantError):
        SpanningTreeComposite().handoff(0, state, ProcessContext(degree=1, n_known=None))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_topology_h_g4(seed: int):
    network = _network("h-g4", mode="random", seed=seed)
    result = run(SimConfig(network=network, protocol=ProtocolIds.topology, seed=seed))
    outputs = {s.output for s in result.states}
    assert len(outputs) == 1
    out = outputs.pop()
    assert out is not None
    assert is_isomorphic(load_graph(out).without_ports(), dir_graph(builtin("h-g4")))[0]


def test_topology_minimal_graph_outputs_itself():
    network = _network("p3")
    result = run(SimConfig(network=network, protocol=ProtocolIds.topology))
    for s in result.states:
        assert s.k == 3 and s.q == 1
        assert is_isomorphic(load_graph(s.output).without_ports(), dir_graph(builtin("p3")))[0]


def test_topology_h_g6_over_h_g1_is_ambiguous():
    """The processes of h-g6 mirror a run on h-g1 and cannot tell h-g6 from the other 4-sheeted lifts."""
    g = builtin("h-g6")
    candidates = [c for b, c in enumerate_bases(dir_graph(g), sheets=[4]).of_sheets(4)
                  if is_isomorphic(b.without_ports(), builtin("h-g1"))[0]]
    assert candidates
    cover = ported_covering(g, candidates[0])
    lifted = lockstep_lifted_run(
        SimConfig(network=cover.total, protocol=ProtocolIds.topology),
        SimConfig(network=cover.base, protocol=ProtocolIds.topology),
        cover,
    )
    for s in lifted.total.states:
        assert s.k == 2 and s.q == 4
        assert s.output is None
        assert s.ambiguous


def test_recognize_rejects_indivisible_size():
    network = _network("p3")
    state = run(SimConfig(network=network, protocol=ProtocolIds.mazurkiewicz)).states[0]
    assert isinstance(state, MazState)
    with pytest.raises(ProtocolInvariantError):
        recognize(state, 4)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_spanning_tree_h_g4_lockstep_lifted_ports(seed: int):
    """Ports lifted from h-g1 keep both fibres symmetric; the degree-3 pair shares the quotient loop."""
    g = builtin("h-g4")
    (_, cover), = enumerate_bases(dir_graph(g)).bases
    network = ported_covering(g, cover, mode="random", seed=seed).total
    result = run(SimConfig(network=network, protocol=ProtocolIds.spanning_tree, scheduler=SchedulerIds.lockstep))
    outcome = spanning_tree_outcome(result, network)
    assert outcome.k == 2
    assert outcome.decision == SpanningTreeDecisions.co_leaders
    assert outcome.initiators == [0, 3]
    assert outcome.valid_tree
    assert (0, 3) in outcome.edges


def test_recognize_respects_lift_budget():
    g = builtin("h-g4")
    (_, cover), = enumerate_bases(dir_graph(g)).bases
    network = ported_covering(g, cover).total
    state = run(SimConfig(network=network, protocol=ProtocolIds.mazurkiewicz, scheduler=SchedulerIds.lockstep)).states[0]
    cut = recognize(state, 4, budget=1)
    assert cut.k == 2
    assert not cut.complete
    assert cut.output is None
    full = recognize(state, 4)
    assert full.complete
    assert full.classes == 1
    assert is_isomorphic(load_graph(full.output).without_ports(), dir_graph(g))[0]
    saved = settings.lift_budget
    try:
        settings.lift_budget = 1
        assert recognize(state, 4).output is None
    finally:
        settings.lift_budget = saved
    assert recognize(state, 4).output == full.output


def _random_graph(family: str, n: int, seed: int):
    return random_tree(n, seed=seed) if family == "tree" else random_connected_graph(n, p=0.3, seed=seed)


@pytest.mark.parametrize("family,n", [("tree", n) for n in range(2, 11)] + [("graph", n) for n in range(3, 11)])
@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_composites_on_random_feasible_graphs(family: str, n: int, seed: int):
    g = _random_graph(family, n, seed)
    network = dir_graph(g, assign_ports(g, mode="random", seed=seed))
    if spanning_tree_feasible(g).decision == VerdictDecisions.feasible:
        result = run(SimConfig(network=network, protocol=ProtocolIds.spanning_tree, seed=seed))
        outcome = spanning_tree_outcome(result, network)
        assert outcome.valid_tree
        assert len(outcome.edges) == n - 1
    if topology_recognition_feasible(g).decision == VerdictDecisions.feasible:
        result = run(SimConfig(network=network, protocol=ProtocolIds.topology, seed=seed))
        for s in result.states:
            assert s.output is not None
            assert is_isomorphic(load_graph(s.output).without_ports(), dir_graph(g))[0]
