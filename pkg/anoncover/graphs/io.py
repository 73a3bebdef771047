"""
JSON serialization of graphs and covering maps.

UGraph: {"name": str?, "n": int, "edges": [[u, v], ...], "ports": [[u, v, p], ...]?}
SymDigraph: {"name": str?, "n": int, "arcs": [{"id": int, "s": int, "t": int, "sym": int, "outport": int?}, ...]}
CoveringMap: {"total": str?, "base": str?, "vmap": [...], "amap": [...], "q": int}
"""
import json
import logging
from typing import Optional, Tuple, Union

from anoncover.coverings.morphism import CoveringMap
from anoncover.errors import CoveringError, GraphValidationError
from anoncover.graphs.base import PortNumbering, SymDigraph, UGraph, dir_graph

log = logging.getLogger(__name__)

Graph = Union[UGraph, SymDigraph]


def _parse(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphValidationError(f"could not parse JSON: {e}") from e
    if not isinstance(obj, dict):
        raise GraphValidationError(f"expected a JSON object, got {type(obj).__name__}")
    return obj


def _require(obj: dict, key: str, kind: type):
    if key not in obj:
        raise GraphValidationError(f"missing field {key!r}")
    if not isinstance(obj[key], kind) or isinstance(obj[key], bool):
        raise GraphValidationError(f"field {key!r} needs to be of type {kind.__name__}, was {obj[key]!r}")
    return obj[key]


def _port_numbering(g: UGraph, triples: list) -> PortNumbering:
    table = {}
    for x in triples:
        if not isinstance(x, list) or len(x) != 3:
            raise GraphValidationError(f"port entry {x!r} needs to be [u, v, p]")
        u, v, p = x
        if (u, v) in table:
            raise GraphValidationError(f"edge {[u, v]} has two ports at vertex {u}")
        table[(u, v)] = p
    return PortNumbering(g, table)


def graph_from_dict(obj: dict) -> Tuple[Graph, Optional[PortNumbering]]:
    n = _require(obj, "n", int)
    name = obj.get("name")
    if "arcs" in obj:
        arcs = sorted(_require(obj, "arcs", list), key=lambda x: x.get("id", -1) if isinstance(x, dict) else -1)
        for i, a in enumerate(arcs):
            if not isinstance(a, dict) or any(k not in a for k in ("id", "s", "t", "sym")):
                raise GraphValidationError(f"arc record {a!r} needs the fields id, s, t and sym")
            if a["id"] != i:
                raise GraphValidationError(f"arc ids need to be exactly 0..{len(arcs) - 1}, found {a['id']} at "
                                           f"position {i}")
        ported = [("outport" in a) for a in arcs]
        if any(ported) and not all(ported):
            missing = [a["id"] for a, x in zip(arcs, ported) if not x]
            raise GraphValidationError(f"arcs {missing} have no outport while others have one")
        d = SymDigraph(
            n=n,
            arcs=[(a["s"], a["t"]) for a in arcs],
            sym=[a["sym"] for a in arcs],
            outports=[a["outport"] for a in arcs] if arcs and all(ported) else None,
            name=name,
        )
        return d, None
    edges = _require(obj, "edges", list)
    g = UGraph(n=n, edges=edges, name=name)
    ports = None
    if "ports" in obj:
        ports = _port_numbering(g, _require(obj, "ports", list))
    return g, ports


def load_ported_graph(text: str) -> Tuple[Graph, Optional[PortNumbering]]:
    """Parses and validates a serialized graph; ports of an undirected graph are returned separately."""
    return graph_from_dict(_parse(text))


def load_graph(text: str) -> Graph:
    """
    Parses and validates a serialized UGraph or SymDigraph.

    An optional port table of an undirected graph is validated but not returned, see load_ported_graph.

    :raises GraphValidationError: naming the offending vertex, edge or arc.
    """
    g, _ = load_ported_graph(text)
    return g


def graph_to_dict(g: Graph, ports: Optional[PortNumbering] = None) -> dict:
    obj = {}
    if g.name is not None:
        obj["name"] = g.name
    obj["n"] = g.n
    if isinstance(g, UGraph):
        obj["edges"] = [list(e) for e in g.edges]
        if ports is not None:
            obj["ports"] = ports.as_triples()
        return obj
    arcs = []
    for a in g.arcs:
        record = {"id": a.id, "s": a.s, "t": a.t, "sym": g.sym(a.id)}
        if g.has_ports:
            record["outport"] = g.outport(a.id)
        arcs.append(record)
    obj["arcs"] = arcs
    return obj


def dump_graph(g: Graph, ports: Optional[PortNumbering] = None) -> str:
    """Canonical JSON text of g, arrays in ascending order."""
    return json.dumps(graph_to_dict(g, ports), sort_keys=True)


def dump_covering(c: CoveringMap) -> str:
    return json.dumps(c.to_dict(), sort_keys=True)


def load_covering(text: str, total: SymDigraph, base: SymDigraph) -> CoveringMap:
    """
    Parses a covering map between two already loaded graphs.

    The map is only checked to be a total function here, see classify_morphism for the covering conditions.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise CoveringError(f"could not parse JSON: {e}") from e
    for key in ("vmap", "amap"):
        if not isinstance(obj.get(key), list):
            raise CoveringError(f"covering map needs a list field {key!r}")
    vmap, amap = obj["vmap"], obj["amap"]
    if len(vmap) != total.n or len(amap) != total.n_arcs:
        raise CoveringError(f"map sizes {len(vmap)}/{len(amap)} do not match the total graph with {total.n} vertices "
                            f"and {total.n_arcs} arcs")
    if any(not 0 <= x < base.n for x in vmap) or any(not 0 <= b < base.n_arcs for b in amap):
        raise CoveringError("covering map references vertices or arcs outside the base")
    c = CoveringMap(total=total, base=base, vmap=tuple(vmap), amap=tuple(amap))
    if "q" in obj and obj["q"] is not None and obj["q"] != c.q:
        log.warning(f"declared sheet count {obj['q']} differs from the fibre size {c.q}")
    return c


def load_ports(text: str, g: Graph) -> SymDigraph:
    """
    Ported symmetric digraph of g with the numbering read from a port file.

    Undirected graphs take {"ports": [[u, v, p], ...]} or the bare triple list, symmetric digraphs take
    {"outports": [...]} indexed by arc id.

    :raises GraphValidationError: if the numbering is not a bijection onto 1..deg at some vertex.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphValidationError(f"could not parse JSON: {e}") from e
    if isinstance(g, UGraph):
        if isinstance(obj, dict):
            obj = _require(obj, "ports", list)
        if not isinstance(obj, list):
            raise GraphValidationError("port file needs a triple list or an object with field 'ports'")
        return dir_graph(g, _port_numbering(g, obj))
    if not isinstance(obj, dict):
        raise GraphValidationError("port file of a symmetric digraph needs an object with field 'outports'")
    outports = _require(obj, "outports", list)
    if len(outports) != g.n_arcs:
        raise GraphValidationError(f"port file has {len(outports)} outports for {g.n_arcs} arcs")
    return g.with_outports(outports)
