import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

import yaml
from tqdm import tqdm

from anoncover.commands.utils import emit, read_text, resolve_graph, stderr_console, write_text
from anoncover.consts import ExitCodes, ProtocolIds, SchedulerIds, SpanningTreeDecisions, TarryRoles
from anoncover.errors import GraphValidationError
from anoncover.graphs.base import SymDigraph, UGraph, dir_graph
from anoncover.graphs.io import graph_to_dict, load_ports
from anoncover.graphs.ports import PORT_MODES, assign_arc_ports, assign_ports
from anoncover.protocols.composite import spanning_tree_outcome
from anoncover.protocols.election import elected
from anoncover.protocols.mazurkiewicz import build_quotient_from_mailbox, lemma_fundamental_violations, \
    maz_message_report
from anoncover.protocols.tarry import is_spanning_tree, tree_from_states
from anoncover.simulator.engine import SimConfig, SimResult, replay_trace, run
from anoncover.simulator.trace import SimTrace

log = logging.getLogger(__name__)


def ported_network(ref: str, ports: str = "canonical", port_seed: Optional[int] = None) -> SymDigraph:
    """
    Ported symmetric digraph of a reference.

    :param ports: A port mode, see PORT_MODES, or the path of a port file read with load_ports. Ports stored with the
        graph take precedence over a port mode, a port file replaces them.
    """
    g, stored = resolve_graph(ref)
    if ports not in PORT_MODES:
        return load_ports(read_text(ports), g)
    if isinstance(g, UGraph):
        return dir_graph(g, stored if stored is not None else assign_ports(g, mode=ports, seed=port_seed))
    return g if g.has_ports else assign_arc_ports(g, mode=ports, seed=port_seed)


def tarry_inputs(network: SymDigraph, leader: Optional[int] = None,
                 co_leaders: Optional[Tuple[int, int]] = None) -> Optional[Tuple[Any, ...]]:
    """Per-vertex inputs of the traversal protocol for a leader or an adjacent co-leader pair."""
    if leader is None and co_leaders is None:
        return None
    if leader is not None and co_leaders is not None:
        raise GraphValidationError("give either a leader or co-leaders")
    inputs: List[Any] = [None] * network.n
    if leader is not None:
        inputs[leader] = TarryRoles.leader
        return tuple(inputs)
    u, v = co_leaders
    for x, y in ((u, v), (v, u)):
        arcs = [a for a in network.out_arcs(x) if network.tgt(a) == y]
        if not arcs:
            raise GraphValidationError(f"co-leaders {u} and {v} are not adjacent")
        inputs[x] = (TarryRoles.co_leader, network.outport(arcs[0]))
    return tuple(inputs)


def summarize(cfg: SimConfig, result: SimResult) -> Tuple[dict, int]:
    """Protocol specific outcome of a run and the exit code it maps to."""
    network, states = cfg.network, result.states
    code = ExitCodes.ok if result.quiescent else ExitCodes.unknown
    if cfg.protocol == ProtocolIds.mazurkiewicz:
        quotient = build_quotient_from_mailbox(states[0])
        violations = lemma_fundamental_violations(states, network)
        return {
            "k": quotient.k,
            "quotient": graph_to_dict(quotient.graph),
            "violations": violations,
            "message_report": maz_message_report(result.messages, network),
        }, code if not violations else ExitCodes.negative
    if cfg.protocol == ProtocolIds.election_tree:
        return {"elected": elected(states)}, code
    if cfg.protocol == ProtocolIds.tarry:
        edges = tree_from_states(network, states)
        valid = is_spanning_tree(network.n, edges)
        return {"edges": [list(e) for e in edges], "valid_tree": valid}, code if valid else ExitCodes.negative
    if cfg.protocol == ProtocolIds.spanning_tree:
        outcome = spanning_tree_outcome(result, network)
        ok = outcome.decision != SpanningTreeDecisions.manifest and outcome.valid_tree
        return outcome.to_dict(), code if ok else ExitCodes.negative
    if cfg.protocol == ProtocolIds.topology:
        outputs = sorted({s.output for s in states if s.output is not None})
        ambiguous = any(s.ambiguous for s in states)
        return {
            "k": states[0].k,
            "q": states[0].q,
            "classes": states[0].classes,
            "ambiguous": ambiguous,
            "outputs": [json.loads(x) for x in outputs],
        }, code if not ambiguous and len(outputs) == 1 else ExitCodes.negative
    return {}, code


class SimulationRunner:
    """Single simulation run from the command line."""

    def __init__(self, cfg: SimConfig):
        self.cfg = cfg
        self.console = stderr_console()

    @classmethod
    def from_options(cls, ref: str, protocol: str, seed: int = 0, scheduler: str = SchedulerIds.random,
                     ports: str = "canonical", port_seed: Optional[int] = None, n_known: Optional[int] = None,
                     leader: Optional[int] = None, co_leaders: Optional[Tuple[int, int]] = None,
                     step_cap: Optional[int] = None) -> "SimulationRunner":
        network = ported_network(ref, ports=ports, port_seed=port_seed)
        inputs = tarry_inputs(network, leader, co_leaders) if protocol == ProtocolIds.tarry else None
        cfg = SimConfig(network=network, protocol=protocol, seed=seed, scheduler=scheduler, n_known=n_known,
                        inputs=inputs, step_cap=step_cap)
        return cls(cfg)

    def run(self, trace_out: Optional[str] = None) -> int:
        result = run(self.cfg)
        summary, code = summarize(self.cfg, result)
        out = {"config": self.cfg.to_dict(), "result": result.to_dict(), "summary": summary}
        if trace_out is not None:
            write_text(trace_out, result.trace.to_jsonl())
        else:
            out["trace"] = [e.to_dict() for e in result.trace.events]
        emit(out)
        self.console.print(f"[bold blue]{self.cfg.protocol}: {result.messages} messages in {result.phases} phases")
        return code


@dataclass
class BatchSpec:
    """
    Runs of one protocol over every combination of graph, port mode and seed.

    The seed drives both the scheduler and the random port numbering of a run.
    """
    graphs: List[str]
    protocol: str
    seeds: List[int]
    port_modes: List[str] = field(default_factory=lambda: ["canonical"])
    out_dir: str = "."
    scheduler: str = SchedulerIds.random

    def __post_init__(self):
        for mode in self.port_modes:
            if mode not in PORT_MODES:
                raise ValueError(f"port mode {mode!r} not recognized, choose from {PORT_MODES}")
        if not self.graphs or not self.seeds:
            raise ValueError("a batch needs at least one graph and one seed")

    @classmethod
    def from_yaml(cls, fn: str) -> "BatchSpec":
        with open(fn, "r") as f:
            x = yaml.safe_load(f)
        seeds = x["seeds"]
        if isinstance(seeds, dict):
            seeds = list(range(int(seeds.get("start", 0)), int(seeds["stop"])))
        return cls(graphs=list(x["graphs"]), protocol=x["protocol"], seeds=[int(s) for s in seeds],
                   port_modes=list(x.get("port_modes", ["canonical"])), out_dir=x.get("out_dir", "."),
                   scheduler=x.get("scheduler", SchedulerIds.random))

    def runs(self) -> List[Tuple[str, str, int]]:
        return [(g, m, s) for g in self.graphs for m in self.port_modes for s in self.seeds]


def _run_name(ref: str, mode: str, seed: int) -> str:
    return f"{ref.replace('builtin:', '').replace(os.sep, '_')}_{mode}_{seed}"


class BatchRunner:

    def __init__(self, spec: BatchSpec, progress: bool = True):
        self.spec = spec
        self.progress = progress
        self.console = stderr_console()

    def run(self) -> int:
        rows = []
        code = ExitCodes.ok
        for ref, mode, seed in tqdm(self.spec.runs(), disable=not self.progress, desc="runs"):
            network = ported_network(ref, ports=mode, port_seed=seed)
            cfg = SimConfig(network=network, protocol=self.spec.protocol, seed=seed, scheduler=self.spec.scheduler)
            result = run(cfg)
            summary, run_code = summarize(cfg, result)
            code = max(code, run_code)
            name = _run_name(ref, mode, seed)
            config = cfg.to_dict()
            config["expected_states_digest"] = result.states_digest()
            write_text(os.path.join(self.spec.out_dir, f"{name}.config.json"), json.dumps(config, sort_keys=True))
            write_text(os.path.join(self.spec.out_dir, f"{name}.trace.jsonl"), result.trace.to_jsonl())
            rows.append({"run": name, "graph": ref, "port_mode": mode, "seed": seed, "messages": result.messages,
                         "trace_digest": result.trace.digest(), "states_digest": result.states_digest(),
                         "summary": summary})
        write_text(os.path.join(self.spec.out_dir, "batch.json"), json.dumps(rows, sort_keys=True, indent=2))
        emit(rows)
        self.console.print(f"[bold blue]{len(rows)} runs written to {self.spec.out_dir}")
        return code


class TraceReplayer:

    def __init__(self, trace_fn: str, config_fn: str):
        self.trace = SimTrace.from_jsonl(read_text(trace_fn))
        self.config = json.loads(read_text(config_fn))
        self.console = stderr_console()

    def replay(self) -> int:
        cfg = SimConfig.from_dict(self.config)
        result = replay_trace(self.trace, cfg)
        expected = self.config.get("expected_states_digest")
        matches = None if expected is None else expected == result.states_digest()
        emit({"states": result.states_dict(), "states_digest": result.states_digest(), "matches": matches,
              "quiescent": result.quiescent})
        if matches is False:
            self.console.print("[bold red]replayed states differ from the recorded ones")
            return ExitCodes.negative
        return ExitCodes.ok


def parse_seeds(text: str) -> Sequence[int]:
    """Seeds from "3", "0:20" (stop exclusive) or "1,4,9"."""
    if ":" in text:
        start, stop = text.split(":", 1)
        return list(range(int(start), int(stop)))
    return [int(x) for x in text.split(",") if x.strip()]
