import logging
import sys
from typing import List, Optional

import click
import rich
import rich.logging
from rich import traceback

from anoncover import __version__, settings
from anoncover.commands.cover_tools import CoveringInspector, LiftInspector
from anoncover.commands.feasibility_tools import FeasibilityChecker
from anoncover.commands.graph_tools import CorpusBrowser, GraphInspector
from anoncover.commands.simulation import BatchRunner, BatchSpec, SimulationRunner, TraceReplayer, parse_seeds
from anoncover.commands.utils import stderr_console
from anoncover.consts import ExitCodes, ProtocolIds, SchedulerIds
from anoncover.errors import BudgetExhaustedError, StepCapExceededError
from anoncover.graphs.ports import PORT_MODES

log = logging.getLogger()

LOG_FORMAT = "[%(asctime)s] %(name)-20s [%(levelname)-7s]  %(message)s"


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Runs the command line on argv and returns the exit code instead of exiting.

    0 success or feasible, 1 negative answer, 2 undecided within the budget, 3 usage or input error.
    """
    console = stderr_console()
    try:
        code = anoncover_cli.main(args=argv, prog_name="anoncover", standalone_mode=False)
    except click.exceptions.Abort:
        console.print("[bold red]aborted")
        return ExitCodes.usage
    except click.ClickException as e:
        e.show()
        return ExitCodes.usage
    except (BudgetExhaustedError, StepCapExceededError) as e:
        console.print(f"[bold yellow]{e}")
        return ExitCodes.unknown
    except (ValueError, OSError) as e:
        console.print(f"[bold red]{type(e).__name__}: {e}")
        return ExitCodes.usage
    return ExitCodes.ok if code is None else int(code)


def main():
    traceback.install(width=200, word_wrap=True)
    sys.exit(run_cli(sys.argv[1:]))


@click.group()
@click.version_option(__version__, message=click.style(f'anoncover Version: {__version__}', fg='blue'))
@click.option('-v', '--verbose', is_flag=True, default=False, help='Enable verbose output (print debug statements).')
@click.option("-l", "--log-file", help="Save a verbose log to a file.")
@click.option("--budget", type=int, default=None, help="Search budget, ANONCOVER_BUDGET takes precedence when set.")
def anoncover_cli(verbose, log_file, budget):
    """
    Symmetric coverings, lifts, feasibility verdicts and protocol simulation on anonymous networks.
    """
    # Set the base logger to output DEBUG
    log.setLevel(logging.DEBUG)
    for h in [h for h in log.handlers if getattr(h, "anoncover", False)]:
        log.removeHandler(h)

    # Set up logs to the console
    console_handler = rich.logging.RichHandler(
        level=logging.DEBUG if verbose else logging.INFO,
        console=rich.console.Console(file=sys.stderr),
        show_time=True,
        markup=True,
    )
    console_handler.anoncover = True
    log.addHandler(console_handler)

    # Set up logs to a file if we asked for one
    if log_file:
        log_fh = logging.FileHandler(log_file, encoding="utf-8")
        log_fh.setLevel(logging.DEBUG)
        log_fh.setFormatter(logging.Formatter(LOG_FORMAT))
        log_fh.anoncover = True
        log.addHandler(log_fh)
    if budget is not None:
        settings.search_budget = budget


@anoncover_cli.group()
def graph():
    """Validate, convert and measure graphs."""


@graph.command("validate")
@click.argument("ref")
def graph_validate(ref) -> int:
    """Checks a graph file (or builtin:<name>) against all structural invariants."""
    return GraphInspector(ref).validate()


@graph.command("dir")
@click.argument("ref")
@click.option("--port-mode", type=click.Choice(PORT_MODES), default=None, help="Add ports to an unported graph.")
@click.option("--seed", type=int, default=None, help="Seed of the random port mode.")
def graph_dir(ref, port_mode, seed) -> int:
    """Prints the symmetric digraph of a graph."""
    return GraphInspector(ref).dir(port_mode=port_mode, seed=seed)


@graph.command("metrics")
@click.argument("ref")
def graph_metrics(ref) -> int:
    """Prints vertex and edge count, maximal degree and diameter."""
    return GraphInspector(ref).metrics()


@anoncover_cli.group()
def cover():
    """Check maps, enumerate bases and decide minimality."""


@cover.command("check")
@click.option("--total", required=True, help="Total graph file or builtin:<name>.")
@click.option("--base", required=True, help="Base graph file or builtin:<name>.")
@click.option("--map", "map_fn", type=click.Path(exists=True), default=None, help="Covering map JSON.")
@click.option("--vmap", type=str, default=None, help="Comma separated vertex map, the arc map is searched.")
def cover_check(total, base, map_fn, vmap) -> int:
    """Classifies a map from the total graph to the base."""
    vmap = None if vmap is None else [int(x) for x in vmap.split(",")]
    return CoveringInspector().check(total, base, map_fn=map_fn, vmap=vmap)


@cover.command("bases")
@click.argument("ref")
@click.option("--max-q", type=int, default=None, help="Largest sheet count.")
@click.option("--budget", type=int, default=None, help="Maximal number of partition search nodes.")
def cover_bases(ref, max_q, budget) -> int:
    """Enumerates all proper symmetric covering bases up to isomorphism."""
    return CoveringInspector().bases(ref, max_q=max_q, budget=budget)


@cover.command("minimal")
@click.argument("ref")
@click.option("--budget", type=int, default=None, help="Maximal number of partition search nodes.")
def cover_minimal(ref, budget) -> int:
    """Decides whether a graph admits no proper symmetric covering."""
    return CoveringInspector().minimal(ref, budget=budget)


@anoncover_cli.group()
def lift():
    """Enumerate lifts and test isomorphism."""


@lift.command("enumerate")
@click.option("--base", required=True, help="Base graph file or builtin:<name>.")
@click.option("--sheets", "q", type=int, required=True, help="Number of sheets.")
@click.option("--simple", is_flag=True, default=False, help="Keep simple lifts only.")
@click.option("--connected", is_flag=True, default=False, help="Keep connected lifts only.")
@click.option("--lift-budget", type=int, default=None, help="Maximal number of permutation assignments.")
def lift_enumerate(base, q, simple, connected, lift_budget) -> int:
    """Lists the symmetric coverings of the base with the given number of sheets, up to isomorphism."""
    return LiftInspector().enumerate(base, q, simple=simple, connected=connected, budget=lift_budget)


@lift.command("iso")
@click.argument("a")
@click.argument("b")
def lift_iso(a, b) -> int:
    """Decides isomorphism of two graphs, ports are ignored."""
    return LiftInspector().iso(a, b)


@anoncover_cli.group()
def feasible():
    """Feasibility verdicts with witnesses."""


@feasible.command("spanning-tree")
@click.argument("ref")
def feasible_spanning_tree(ref) -> int:
    """Decides whether a spanning tree can be computed on the anonymous network REF."""
    return FeasibilityChecker().spanning_tree(ref)


@feasible.command("topology")
@click.argument("ref")
@click.option("--lift-budget", type=int, default=None, help="Maximal number of permutation assignments per base.")
def feasible_topology(ref, lift_budget) -> int:
    """Decides whether the anonymous network REF can recognize its topology, knowing its size."""
    return FeasibilityChecker().topology(ref, lift_budget=lift_budget)


@anoncover_cli.command("yk-check")
@click.argument("ref")
def yk_check(ref) -> int:
    """Checks whether no other graph of the same size shares the degree refinement of REF."""
    return FeasibilityChecker().yk_check(ref)


@anoncover_cli.command("counterexample")
@click.option("--degree", type=int, default=3, help="Vertex degree.")
@click.option("--max-n", type=int, default=10, help="Largest vertex count.")
@click.option("--pair", nargs=2, type=str, default=None, help="Verify the two given graphs instead of searching.")
def counterexample(degree, max_n, pair) -> int:
    """Searches minimal, same-size, regular, non-isomorphic graph pairs with a common covering."""
    if pair:
        return FeasibilityChecker().verify_pair(*pair)
    return FeasibilityChecker().counterexample(degree, max_n)


@anoncover_cli.command()
@click.option("--graph", "ref", required=True, help="Graph file or builtin:<name>.")
@click.option("--protocol", type=click.Choice(ProtocolIds.all()), required=True)
@click.option("--seed", type=int, default=0, help="Scheduler seed.")
@click.option("--scheduler", type=click.Choice([SchedulerIds.random, SchedulerIds.lockstep]),
              default=SchedulerIds.random)
@click.option("--ports", default="canonical", help="Port file, or a port mode: canonical or random.")
@click.option("--port-seed", type=int, default=None, help="Seed of the random port mode.")
@click.option("--n-known", type=int, default=None, help="Network size told to the processes.")
@click.option("--leader", type=int, default=None, help="Leader vertex of the tarry protocol.")
@click.option("--co-leaders", nargs=2, type=int, default=None, help="Adjacent co-leaders of the tarry protocol.")
@click.option("--step-cap", type=int, default=None)
@click.option("--trace", "trace_fn", type=click.Path(), default=None, help="Write the trace as JSONL instead of inlining it.")
def simulate(ref, protocol, seed, scheduler, ports, port_seed, n_known, leader, co_leaders, step_cap,
             trace_fn) -> int:
    """Runs a protocol to quiescence and prints trace, final states and a summary."""
    runner = SimulationRunner.from_options(ref, protocol, seed=seed, scheduler=scheduler, ports=ports,
                                           port_seed=port_seed, n_known=n_known, leader=leader,
                                           co_leaders=tuple(co_leaders) if co_leaders else None, step_cap=step_cap)
    return runner.run(trace_out=trace_fn)


@anoncover_cli.command()
@click.option("--spec", "spec_fn", type=click.Path(exists=True), default=None, help="Batch description YAML.")
@click.option("--graph", "refs", multiple=True, help="Graph file or builtin:<name>, repeatable.")
@click.option("--protocol", type=click.Choice(ProtocolIds.all()), default=None)
@click.option("--seeds", type=str, default="0:10", help='"0:10", "1,2,5" or a single seed.')
@click.option("--port-mode", "port_modes", multiple=True, type=click.Choice(PORT_MODES))
@click.option("--out", "out_dir", type=click.Path(), default=".", help="Output directory.")
def batch(spec_fn, refs, protocol, seeds, port_modes, out_dir) -> int:
    """Runs a protocol over graphs, port modes and seeds, writing configurations and traces."""
    if spec_fn is not None:
        spec = BatchSpec.from_yaml(spec_fn)
    else:
        if not refs or protocol is None:
            raise click.UsageError("give --spec or at least one --graph and --protocol")
        spec = BatchSpec(graphs=list(refs), protocol=protocol, seeds=list(parse_seeds(seeds)),
                         port_modes=list(port_modes) or ["canonical"], out_dir=out_dir)
    return BatchRunner(spec).run()


@anoncover_cli.command()
@click.argument("trace_fn", type=click.Path(exists=True))
@click.option("--config", "config_fn", type=click.Path(exists=True), required=True)
def replay(trace_fn, config_fn) -> int:
    """Re-executes a recorded trace and compares the final states."""
    return TraceReplayer(trace_fn, config_fn).replay()


@anoncover_cli.group("builtin")
def builtin_group():
    """Access the built-in graph corpus."""


@builtin_group.command("list")
def builtin_list() -> int:
    return CorpusBrowser().list()


@builtin_group.command("get")
@click.argument("name")
def builtin_get(name) -> int:
    return CorpusBrowser().get(name)


if __name__ == "__main__":
    traceback.install()
    sys.exit(main())  # pragma: no cover
