import logging
from typing import Optional

from anoncover.consts import ExitCodes
from anoncover.errors import GraphValidationError
from anoncover.graphs.base import UGraph, graph_metrics
from anoncover.graphs.builtin import builtin, builtin_names, vertex_labels
from anoncover.graphs.io import graph_to_dict
from anoncover.graphs.ports import assign_ports
from anoncover.commands.utils import as_symdigraph, as_ugraph, emit, resolve_graph, stderr_console

log = logging.getLogger(__name__)


class GraphInspector:
    """Validation, conversion and metrics of a single graph reference."""

    def __init__(self, ref: str):
        self.ref = ref
        self.console = stderr_console()

    def validate(self) -> int:
        try:
            g, ports = resolve_graph(self.ref)
        except GraphValidationError as e:
            emit({"valid": False, "error": str(e)})
            self.console.print(f"[bold red]{self.ref} is invalid: {e}")
            return ExitCodes.negative
        kind = "ugraph" if isinstance(g, UGraph) else "symdigraph"
        emit({"valid": True, "kind": kind, "n": g.n, "ported": ports is not None or getattr(g, "has_ports", False)})
        self.console.print(f"[bold green]{self.ref} is a valid {kind} with {g.n} vertices")
        return ExitCodes.ok

    def dir(self, port_mode: Optional[str] = None, seed: Optional[int] = None) -> int:
        g, ports = resolve_graph(self.ref)
        if isinstance(g, UGraph) and ports is None and port_mode is not None:
            ports = assign_ports(g, mode=port_mode, seed=seed)
        emit(graph_to_dict(as_symdigraph(g, ports)))
        return ExitCodes.ok

    def metrics(self) -> int:
        g = as_ugraph(resolve_graph(self.ref)[0], self.ref)
        m = graph_metrics(g)
        emit({"n": m.n, "m": m.m, "max_degree": m.max_degree, "diameter": m.diameter})
        return ExitCodes.ok


class CorpusBrowser:

    def __init__(self):
        self.console = stderr_console()

    def list(self) -> int:
        names = builtin_names()
        emit(names)
        self.console.print(f"[bold blue]{len(names)} built-in graphs")
        return ExitCodes.ok

    def get(self, name: str) -> int:
        g = builtin(name)
        x = graph_to_dict(g)
        x["labels"] = vertex_labels(name)
        emit(x)
        return ExitCodes.ok
