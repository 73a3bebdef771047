"""
Built-in corpus of figure graphs, stored as one yaml file per graph in graphs/corpus.

Vertices are written as letters and receive ids in the order of the vertices list. Undirected files list edges.
Symmetric files list self-symmetric loops, sym-paired loop pairs and edges; their arcs are numbered in this order, an
edge {u, v} giving the arcs u -> v and v -> u.
"""
import logging
import os
from functools import lru_cache
from typing import Dict, List, Union

import yaml

from anoncover.errors import GraphValidationError
from anoncover.graphs.base import SymDigraph, UGraph

log = logging.getLogger(__name__)

DIR_CORPUS = os.path.join(os.path.dirname(__file__), "corpus")
KINDS = ["undirected", "symmetric"]


def builtin_names() -> List[str]:
    return sorted(x[:-len(".yaml")] for x in os.listdir(DIR_CORPUS) if x.endswith(".yaml"))


def _ids(spec: dict, fn: str) -> Dict[str, int]:
    vertices = spec.get("vertices")
    if not isinstance(vertices, list) or len(set(vertices)) != len(vertices):
        raise GraphValidationError(f"{fn}: vertices need to be a list of distinct labels")
    return {str(x): i for i, x in enumerate(vertices)}


def _lookup(ids: Dict[str, int], x, fn: str) -> int:
    if str(x) not in ids:
        raise GraphValidationError(f"{fn}: vertex {x!r} is not declared in the vertices list")
    return ids[str(x)]


def graph_from_yaml_dict(spec: dict, fn: str = "<yaml>") -> Union[UGraph, SymDigraph]:
    kind = spec.get("kind")
    if kind not in KINDS:
        raise GraphValidationError(f"{fn}: kind {kind!r} not recognized, choose from {KINDS}")
    ids = _ids(spec, fn)
    edges = [(_lookup(ids, u, fn), _lookup(ids, v, fn)) for u, v in (spec.get("edges") or [])]
    if kind == "undirected":
        return UGraph(n=len(ids), edges=edges, name=spec.get("name"))
    arcs, sym = [], []
    for x in spec.get("loops") or []:
        v = _lookup(ids, x, fn)
        sym.append(len(arcs))
        arcs.append((v, v))
    for x in spec.get("loop_pairs") or []:
        v = _lookup(ids, x, fn)
        a = len(arcs)
        arcs.extend([(v, v), (v, v)])
        sym.extend([a + 1, a])
    for u, v in edges:
        a = len(arcs)
        arcs.extend([(u, v), (v, u)])
        sym.extend([a + 1, a])
    return SymDigraph(n=len(ids), arcs=arcs, sym=sym, name=spec.get("name"))


@lru_cache(maxsize=None)
def builtin(name: str) -> Union[UGraph, SymDigraph]:
    """
    Graph of the built-in corpus.

    :param name: Corpus name, see builtin_names().
    :raises GraphValidationError: for unknown names, listing the valid ones.
    """
    names = builtin_names()
    if name not in names:
        raise GraphValidationError(f"unknown built-in graph {name!r}, choose from {names}")
    fn = os.path.join(DIR_CORPUS, f"{name}.yaml")
    with open(fn, "r") as f:
        spec = yaml.safe_load(f)
    return graph_from_yaml_dict(spec, fn=fn)


def vertex_labels(name: str) -> List[str]:
    """Letter labels of a corpus graph, indexed by vertex id."""
    builtin(name)
    with open(os.path.join(DIR_CORPUS, f"{name}.yaml"), "r") as f:
        return [str(x) for x in yaml.safe_load(f)["vertices"]]
