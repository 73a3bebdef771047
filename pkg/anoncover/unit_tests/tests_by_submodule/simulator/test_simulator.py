import dataclasses

import pytest

from anoncover.consts import EventKinds, ProtocolIds, SchedulerIds
from anoncover.coverings import FibrePartition, enumerate_bases, identity_covering, partition_to_base
from anoncover.errors import CoveringError, GraphValidationError, StepCapExceededError, TraceMismatchError
from anoncover.graphs import assign_ports, builtin, dir_graph
from anoncover.lifts import is_isomorphic
from anoncover.simulator import SimConfig, SimTrace, lockstep_lifted_run, make_scheduler, ported_covering, \
    replay_trace, run


def _cfg(name: str = "fig1-base", protocol: str = ProtocolIds.mazurkiewicz, seed: int = 0, **kwargs) -> SimConfig:
    g = builtin(name)
    return SimConfig(network=dir_graph(g, assign_ports(g, mode="random", seed=seed)), protocol=protocol, seed=seed,
                     **kwargs)


def test_config_validation():
    with pytest.raises(GraphValidationError, match="outports"):
        SimConfig(network=dir_graph(builtin("k2")), protocol=ProtocolIds.mazurkiewicz)
    with pytest.raises(GraphValidationError, match="inputs"):
        _cfg("k2", protocol=ProtocolIds.tarry, inputs=("leader",))


def test_config_dict():
    cfg = _cfg("k2", protocol=ProtocolIds.tarry, seed=4, inputs=("leader", None), step_cap=100)
    assert SimConfig.from_dict(cfg.to_dict()) == cfg


def test_make_scheduler():
    with pytest.raises(ValueError):
        make_scheduler("adversarial")
    with pytest.raises(ValueError):
        make_scheduler(SchedulerIds.replay)


@pytest.mark.parametrize("name", ["fig1-base", "h-g4", "c4", "star-k13", "p3"])
@pytest.mark.parametrize("scheduler", [SchedulerIds.random, SchedulerIds.lockstep])
@pytest.mark.parametrize("protocol", [ProtocolIds.mazurkiewicz, ProtocolIds.spanning_tree])
def test_runs_are_deterministic(name: str, scheduler: str, protocol: str):
    cfg = _cfg(name, protocol=protocol, scheduler=scheduler, seed=7)
    a, b = run(cfg), run(cfg)
    assert a.trace.to_jsonl() == b.trace.to_jsonl()
    assert a.trace.digest() == b.trace.digest()
    assert a.states_digest() == b.states_digest()
    replayed = replay_trace(SimTrace.from_jsonl(a.trace.to_jsonl()), cfg)
    assert replayed.states_digest() == a.states_digest()


def test_seed_changes_schedule():
    digests = {run(dataclasses.replace(_cfg(), seed=s)).trace.digest() for s in range(5)}
    assert len(digests) > 1


def test_trace_bookkeeping():
    cfg = _cfg()
    result = run(cfg)
    assert result.quiescent
    assert result.trace.count(EventKinds.wakeup) == cfg.network.n
    assert result.trace.count(EventKinds.send) == result.messages
    assert result.trace.count(EventKinds.deliver) == result.messages
    result.trace.check_fifo(cfg.network)
    assert SimTrace.from_jsonl(result.trace.to_jsonl()) == result.trace
    assert result.to_dict()["trace_digest"] == result.trace.digest()


@pytest.mark.parametrize("protocol", [ProtocolIds.mazurkiewicz, ProtocolIds.spanning_tree, ProtocolIds.topology])
def test_replay_reproduces_states(protocol: str):
    cfg = _cfg("h-g4", protocol=protocol, seed=3)
    result = run(cfg)
    replayed = replay_trace(SimTrace.from_jsonl(result.trace.to_jsonl()), cfg)
    assert replayed.quiescent
    assert replayed.states_digest() == result.states_digest()
    assert replayed.trace.digest() == result.trace.digest()


def test_truncated_replay():
    cfg = _cfg()
    result = run(cfg)
    prefix = result.trace.truncated(6)
    assert len(prefix.inputs()) == 6
    partial = replay_trace(prefix, cfg)
    assert not partial.quiescent
    assert partial.trace.events == prefix.events


def test_tampered_trace_is_rejected():
    cfg = _cfg()
    events = list(run(cfg).trace.events)
    i = next(i for i, e in enumerate(events) if e.kind == EventKinds.deliver)
    tampered = SimTrace([events[i]] + events[:i] + events[i + 1:])
    with pytest.raises(TraceMismatchError):
        replay_trace(tampered, cfg)


def test_replay_against_other_network():
    result = run(_cfg("c4"))
    with pytest.raises(ValueError):
        replay_trace(result.trace, _cfg("p4"))


def test_malformed_trace():
    with pytest.raises(TraceMismatchError):
        SimTrace.from_jsonl("{\"step\": 0}\n")
    with pytest.raises(TraceMismatchError):
        SimTrace.from_jsonl("not json\n")


def test_step_cap():
    with pytest.raises(StepCapExceededError) as e:
        run(_cfg(step_cap=3))
    assert len(e.value.trace.inputs()) == 3


def test_lifted_run_h_g4_over_h_g1():
    g = builtin("h-g4")
    (_, cover), = enumerate_bases(dir_graph(g)).bases
    cover = ported_covering(g, cover, mode="random", seed=1)
    for seed in range(3):
        lifted = lockstep_lifted_run(
            SimConfig(network=cover.total, protocol=ProtocolIds.mazurkiewicz),
            SimConfig(network=cover.base, protocol=ProtocolIds.mazurkiewicz, seed=seed),
            cover,
        )
        assert sorted(s.number for s in lifted.base.states) == [1, 2]
        assert [s.number for s in lifted.total.states] == [lifted.base.states[x].number for x in cover.vmap]


def test_lifted_run_h_g6_over_h_g3():
    g = builtin("h-g6")
    candidates = [c for b, c in enumerate_bases(dir_graph(g), sheets=[2]).of_sheets(2)
                  if is_isomorphic(b.without_ports(), builtin("h-g3"))[0]]
    assert len(candidates) == 1
    cover = ported_covering(g, candidates[0])
    lifted = lockstep_lifted_run(
        SimConfig(network=cover.total, protocol=ProtocolIds.mazurkiewicz),
        SimConfig(network=cover.base, protocol=ProtocolIds.mazurkiewicz),
        cover,
    )
    assert cover.base.n == 4
    assert sorted(s.number for s in lifted.base.states) == [1, 2, 3, 4]
    assert [s.number for s in lifted.total.states] == [lifted.base.states[x].number for x in cover.vmap]
    assert sorted({s.number for s in lifted.total.states}) == [1, 2, 3, 4]


def test_lifted_run_c4_over_loop_pair():
    g = builtin("c4")
    _, cover = partition_to_base(dir_graph(g), FibrePartition(blocks=((0, 1, 2, 3),)))
    cover = ported_covering(g, cover)
    lifted = lockstep_lifted_run(
        SimConfig(network=cover.total, protocol=ProtocolIds.mazurkiewicz),
        SimConfig(network=cover.base, protocol=ProtocolIds.mazurkiewicz),
        cover,
    )
    assert [s.number for s in lifted.total.states] == [1, 1, 1, 1]


def test_lifted_run_identity():
    cfg = _cfg("p3", seed=2)
    lifted = lockstep_lifted_run(cfg, cfg, identity_covering(cfg.network))
    assert lifted.total.trace.digest() == lifted.base.trace.digest()
    assert lifted.total.states == lifted.base.states


def test_lifted_run_rejects_mismatched_covering():
    cfg = _cfg("p3")
    with pytest.raises(CoveringError):
        lockstep_lifted_run(_cfg("p4"), cfg, identity_covering(cfg.network))
