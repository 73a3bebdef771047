import json
import logging
import os
import sys
from typing import Any, Optional, Tuple, Union

import click
import rich.console

from anoncover.consts import ExitCodes
from anoncover.errors import GraphValidationError
from anoncover.graphs.base import PortNumbering, SymDigraph, UGraph, dir_graph
from anoncover.graphs.builtin import builtin
from anoncover.graphs.io import load_ported_graph

log = logging.getLogger(__name__)

BUILTIN_PREFIX = "builtin:"

Graph = Union[UGraph, SymDigraph]


def stderr_console() -> rich.console.Console:
    return rich.console.Console(file=sys.stderr)


def emit(obj: Any):
    """Writes obj as JSON to stdout."""
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def resolve_graph(ref: str) -> Tuple[Graph, Optional[PortNumbering]]:
    """
    Graph behind a command line reference: builtin:<name> or the path of a JSON file.

    :return: (graph, port numbering of an undirected graph or None).
    """
    if ref.startswith(BUILTIN_PREFIX):
        return builtin(ref[len(BUILTIN_PREFIX):]), None
    if not os.path.isfile(ref):
        raise GraphValidationError(f"{ref!r} is neither a built-in reference nor an existing file")
    with open(ref, "r") as f:
        return load_ported_graph(f.read())


def as_symdigraph(g: Graph, ports: Optional[PortNumbering] = None) -> SymDigraph:
    return g if isinstance(g, SymDigraph) else dir_graph(g, ports)


def as_ugraph(g: Graph, ref: str) -> UGraph:
    if not isinstance(g, UGraph):
        raise GraphValidationError(f"{ref} is a symmetric digraph, this command needs an undirected graph")
    return g


def read_text(fn: str) -> str:
    with open(fn, "r") as f:
        return f.read()


def write_text(fn: str, text: str):
    dirname = os.path.dirname(fn)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(fn, "w") as f:
        f.write(text)


def exit_code_of(decision: Optional[bool]) -> int:
    """Exit code of a tri-state answer: True, False or None for undecided."""
    if decision is None:
        return ExitCodes.unknown
    return ExitCodes.ok if decision else ExitCodes.negative
