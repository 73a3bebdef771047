"""
Lifted co-execution: a run on a base is mirrored event by event onto every fibre of a covering total graph.
"""
import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional

from anoncover._settings import settings
from anoncover.coverings.morphism import CoveringMap, classify_covering
from anoncover.errors import CoveringError, FibreUniformityError, StepCapExceededError
from anoncover.graphs.base import UGraph, dir_graph
from anoncover.graphs.ports import assign_arc_ports, lift_ports
from anoncover.protocols.base import Protocol
from anoncover.protocols.registry import get_protocol
from anoncover.simulator.engine import SimConfig, SimResult, Simulation
from anoncover.simulator.schedulers import Event, make_scheduler

log = logging.getLogger(__name__)


@dataclass
class LiftedRunResult:
    total: SimResult
    base: SimResult
    cover: CoveringMap


def ported_covering(g: UGraph, cover: CoveringMap, mode: str = "canonical", seed: Optional[int] = None) -> CoveringMap:
    """
    Ports the base of a symmetric covering dir(g) -> base and lifts them to g.

    :return: The same vertex and arc maps between the ported graphs, a port-preserving symmetric covering.
    """
    base = assign_arc_ports(cover.base.without_ports(), mode=mode, seed=seed)
    plain = CoveringMap(total=dir_graph(g), base=base, vmap=cover.vmap, amap=cover.amap)
    ports = lift_ports(g, base, plain)
    return CoveringMap(total=dir_graph(g, ports), base=base, vmap=cover.vmap, amap=cover.amap)


def lockstep_lifted_run(
        total_cfg: SimConfig,
        base_cfg: SimConfig,
        cover: CoveringMap,
        protocol: Optional[Protocol] = None,
) -> LiftedRunResult:
    """
    Drives the base run with the scheduler of base_cfg and applies every base event to all preimages of its vertex.

    After every mirrored step each process of the total graph holds the state of its image in the base run.
    The base processes are told the size of the total network unless base_cfg sets n_known.

    :param total_cfg: Configuration on the total network.
    :param base_cfg: Configuration on the base network, its protocol is used for both runs.
    :param cover: Port-preserving symmetric covering total_cfg.network -> base_cfg.network.
    :raises CoveringError: if cover is not a port-preserving symmetric covering of the two networks.
    :raises FibreUniformityError: carrying both traces, if a process leaves the state of its image.
    """
    if cover.total != total_cfg.network or cover.base != base_cfg.network:
        raise CoveringError("covering map does not connect the two configured networks")
    report = classify_covering(cover)
    if not report.is_symmetric_covering or not report.is_port_preserving:
        raise CoveringError(f"lifted runs need a port-preserving symmetric covering: {report.witnesses}")
    if base_cfg.n_known is None:
        base_cfg = dataclasses.replace(base_cfg, n_known=total_cfg.network.n)
    n_known = total_cfg.n_known if total_cfg.n_known is not None else total_cfg.network.n
    proto = get_protocol(base_cfg.protocol) if protocol is None else protocol
    base = Simulation(base_cfg.network, proto, n_known=base_cfg.n_known, inputs=base_cfg.inputs)
    total = Simulation(total_cfg.network, proto, n_known=n_known,
                       inputs=None if base_cfg.inputs is None else [base_cfg.inputs[x] for x in cover.vmap])
    fibres = [cover.fibre(x) for x in range(cover.base.n)]
    scheduler = make_scheduler(base_cfg.scheduler, seed=base_cfg.seed)
    step_cap = settings.step_cap if base_cfg.step_cap is None else base_cfg.step_cap

    def check(where: str):
        for x, fibre in enumerate(fibres):
            for v in fibre:
                if total.states[v] != base.states[x]:
                    raise FibreUniformityError(
                        f"{where}: vertex {v} left the state of its image {x} in phase {base.phase}",
                        total_trace=total.trace,
                        base_trace=base.trace,
                    )

    check("initial states")
    scheduler.start_phase(base)
    while True:
        if base.quiescent():
            if not total.quiescent():
                raise FibreUniformityError("base run is quiescent while the lifted run is not",
                                           total_trace=total.trace, base_trace=base.trace)
            more = base.next_phase()
            total.next_phase()
            check(f"handoff after phase {base.phase}")
            if not more:
                break
            scheduler.start_phase(base)
            continue
        event = scheduler.choose(base)
        if base.step >= step_cap:
            raise StepCapExceededError(f"no quiescence within {step_cap} steps", trace=base.trace)
        base.apply(event)
        for v in fibres[event.vertex]:
            total.apply(Event(event.kind, v, event.port))
        check(f"step {base.step} ({event.kind} at base vertex {event.vertex})")
    log.debug(f"lifted run over {len(fibres)} fibres finished after {base.step} base steps")
    return LiftedRunResult(total=total.result(quiescent=True), base=base.result(quiescent=True), cover=cover)
