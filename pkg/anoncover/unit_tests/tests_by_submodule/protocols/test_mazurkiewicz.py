import pytest

from anoncover.consts import EventKinds, ProtocolIds, SchedulerIds
from anoncover.coverings import classify_covering
from anoncover.errors import ProtocolInvariantError
from anoncover.graphs import assign_ports, builtin, dir_graph, random_connected_graph, random_tree
from anoncover.lifts import is_isomorphic
from anoncover.protocols import MazMessage, MazState, Mazurkiewicz, build_quotient_from_mailbox, \
    lemma_fundamental_violations, maz_message_report, maz_on_init, maz_on_receive, quotient_covering, view_order_cmp
from anoncover.simulator import Event, SimConfig, Simulation, run


def _network(name: str, mode: str = "canonical", seed: int = 0):
    g = builtin(name)
    return dir_graph(g, assign_ports(g, mode=mode, seed=seed))


def _drain(sim: Simulation):
    """Delivers in sorted event order until no event is enabled."""
    while not sim.quiescent():
        sim.apply(sim.enabled()[0])


@pytest.mark.parametrize("n1,n2,expected", [
    (frozenset(), frozenset({(1, 1, 1)}), -1),
    (frozenset({(1, 1, 1)}), frozenset({(1, 1, 1)}), 0),
    (frozenset({(1, 1, 1), (3, 2, 2)}), frozenset({(2, 1, 1), (3, 2, 2)}), -1),
    (frozenset({(2, 1, 1), (3, 2, 2)}), frozenset({(1, 1, 1), (3, 2, 2)}), 1),
])
def test_view_order(n1, n2, expected: int):
    assert view_order_cmp(n1, n2) == expected


def test_init_broadcasts():
    state, sends = maz_on_init(MazState(), 2)
    assert state.number == 1
    assert state.mailbox == frozenset({(1, frozenset())})
    assert [p for p, _ in sends] == [1, 2]
    assert sends[0][1] == MazMessage(number=1, old_number=0, mailbox=state.mailbox, port=1)
    assert len(maz_on_init(MazState(), 1)[1]) == 1


def test_init_after_delivery_is_noop():
    state = MazState(number=2, view=frozenset({(1, 1, 1)}))
    assert maz_on_init(state, 1) == (state, [])


def test_receive_unwoken():
    msg = MazMessage(number=1, old_number=0, mailbox=frozenset({(1, frozenset())}), port=1)
    state, sends = maz_on_receive(MazState(), msg, 1, 1)
    assert state.number == 2
    assert state.view == frozenset({(1, 1, 1)})
    assert len(sends) == 1


def test_receive_duplicate_is_idempotent():
    msg = MazMessage(number=1, old_number=0, mailbox=frozenset({(1, frozenset())}), port=1)
    state, _ = maz_on_receive(MazState(), msg, 1, 1)
    again, sends = maz_on_receive(state, msg, 1, 1)
    assert again == state
    assert sends == []


def test_k2_lockstep_gives_one_number():
    cfg = SimConfig(network=_network("k2"), protocol="mazurkiewicz", scheduler=SchedulerIds.lockstep)
    result = run(cfg)
    assert [s.number for s in result.states] == [1, 1]
    assert result.states[0].view == frozenset({(1, 1, 1)})
    quotient = build_quotient_from_mailbox(result.states[0])
    assert quotient.k == 1
    assert is_isomorphic(quotient.graph, builtin("arete-h"))[0]


def test_k2_sequential_gives_two_numbers():
    sim = Simulation(_network("k2"), Mazurkiewicz())
    sim.apply(Event(EventKinds.wakeup, 1))
    sim.apply(Event(EventKinds.deliver, 0, 1))
    assert sim.states[0].number == 2
    sim.apply(Event(EventKinds.wakeup, 0))
    _drain(sim)
    assert sorted(s.number for s in sim.states) == [1, 2]
    assert lemma_fundamental_violations(sim.states, sim.network) == []


@pytest.mark.parametrize("name", ["k2", "p3", "c4", "star-k13", "h-g4", "fig1-base", "k4"])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_final_states_consistent(name: str, seed: int):
    network = _network(name, mode="random", seed=seed)
    result = run(SimConfig(network=network, protocol="mazurkiewicz", seed=seed))
    assert lemma_fundamental_violations(result.states, network) == []
    cover = quotient_covering(network, result.states)
    report = classify_covering(cover)
    assert report.is_symmetric_covering
    assert report.is_port_preserving
    assert report.is_port_preserving


@pytest.mark.parametrize("name", ["p3", "star-k13"])
@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_minimal_graphs_get_distinct_numbers(name: str, seed: int):
    network = _network(name)
    result = run(SimConfig(network=network, protocol="mazurkiewicz", seed=seed))
    assert sorted(s.number for s in result.states) == list(range(1, network.n + 1))


def test_quotient_of_unchosen_process():
    with pytest.raises(ProtocolInvariantError):
        build_quotient_from_mailbox(MazState())


def test_violations_detected():
    network = _network("k2")
    state = MazState(number=1, view=frozenset({(1, 1, 1)}), mailbox=frozenset({(1, frozenset({(1, 1, 1)}))}))
    assert lemma_fundamental_violations([state, state], network) == []
    wrong = MazState(number=3, view=frozenset(), mailbox=frozenset())
    assert lemma_fundamental_violations([state, wrong], network)


def test_message_report_envelope():
    network = _network("c4")
    x = maz_message_report(10 ** 9, network)
    assert x["m"] == 4 and x["n"] == 4
    assert not x["within_envelope"]


def _random_network(family: str, n: int, seed: int):
    g = random_tree(n, seed=seed) if family == "tree" else random_connected_graph(n, p=0.3, seed=seed)
    return dir_graph(g, assign_ports(g, mode="random", seed=seed))


@pytest.mark.parametrize("family,n", [("tree", n) for n in range(2, 11)] + [("graph", n) for n in range(3, 11)])
@pytest.mark.parametrize("seed", list(range(12)))
def test_random_networks_quotient_is_covering(family: str, n: int, seed: int):
    network = _random_network(family, n, seed)
    result = run(SimConfig(network=network, protocol=ProtocolIds.mazurkiewicz, seed=seed))
    assert lemma_fundamental_violations(result.states, network) == []
    report = classify_covering(quotient_covering(network, result.states))
    assert report.is_symmetric_covering
    assert report.is_port_preserving
    assert report.q * max(s.number for s in result.states) == n
