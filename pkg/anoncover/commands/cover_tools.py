import logging
from typing import List, Optional

from anoncover.commands.utils import as_symdigraph, emit, exit_code_of, read_text, resolve_graph, stderr_console
from anoncover.consts import ExitCodes
from anoncover.coverings.morphism import classify_morphism, search_arc_maps
from anoncover.coverings.quotient import enumerate_bases, is_minimal
from anoncover.errors import CoveringError
from anoncover.graphs.io import graph_to_dict, load_covering
from anoncover.lifts.canonical import is_isomorphic
from anoncover.lifts.enumerate import enumerate_lifts

log = logging.getLogger(__name__)


class CoveringInspector:
    """Checks of given maps and searches for bases of a total graph."""

    def __init__(self):
        self.console = stderr_console()

    def check(self, total_ref: str, base_ref: str, map_fn: Optional[str] = None,
              vmap: Optional[List[int]] = None) -> int:
        """
        Classifies a map given as covering JSON, or searches a symmetric arc map over a vertex map.

        :return: ok if the map is a symmetric covering, negative otherwise.
        """
        total = as_symdigraph(*resolve_graph(total_ref))
        base = as_symdigraph(*resolve_graph(base_ref))
        if map_fn is not None:
            c = load_covering(read_text(map_fn), total, base)
            vmap, amap = c.vmap, c.amap
        elif vmap is not None:
            amap = search_arc_maps(total, base, vmap, symmetric=True)
            if amap is None:
                emit({"vmap": list(vmap), "amap": None, "is_symmetric_covering": False})
                self.console.print("[bold red]no arc map over this vertex map is a symmetric covering")
                return ExitCodes.negative
        else:
            raise CoveringError("either a map file or a vertex map is needed")
        report = classify_morphism(total, base, vmap, amap)
        x = report.to_dict()
        x["vmap"], x["amap"] = list(vmap), list(amap)
        emit(x)
        self.console.print(f"[bold blue]symmetric covering: {report.is_symmetric_covering}")
        return exit_code_of(report.is_symmetric_covering)

    def bases(self, ref: str, max_q: Optional[int] = None, budget: Optional[int] = None) -> int:
        d = as_symdigraph(*resolve_graph(ref))
        result = enumerate_bases(d, max_q=max_q, budget=budget)
        emit({
            "complete": result.complete,
            "partitions_seen": result.partitions_seen,
            "bases": [{"base": graph_to_dict(b), "map": c.to_dict()} for b, c in result.bases],
        })
        self.console.print(f"[bold blue]{len(result.bases)} bases, complete: {result.complete}")
        return ExitCodes.ok if result.complete else ExitCodes.unknown

    def minimal(self, ref: str, budget: Optional[int] = None) -> int:
        d = as_symdigraph(*resolve_graph(ref))
        result = is_minimal(d, budget=budget)
        emit({
            "minimal": "unknown" if result.minimal is None else result.minimal,
            "witness": None if result.witness is None else
            {"base": graph_to_dict(result.witness.base), "map": result.witness.to_dict()},
            "partitions_seen": result.partitions_seen,
            "sheets_checked": result.sheets_checked,
        })
        return exit_code_of(result.minimal)


class LiftInspector:

    def __init__(self):
        self.console = stderr_console()

    def enumerate(self, base_ref: str, q: int, simple: bool = False, connected: bool = False,
                  budget: Optional[int] = None) -> int:
        base = as_symdigraph(*resolve_graph(base_ref))
        result = enumerate_lifts(base, q, simple=simple, connected=connected, budget=budget)
        emit({
            "q": q,
            "complete": result.complete,
            "assignments_tried": result.assignments_tried,
            "classes": [{"total": graph_to_dict(x.total), "assignment": x.assignment.to_dict()}
                        for x in result.classes],
        })
        self.console.print(f"[bold blue]{len(result.classes)} lift classes over {result.assignments_tried} "
                           f"assignments")
        return ExitCodes.ok if result.complete else ExitCodes.unknown

    def iso(self, ref_a: str, ref_b: str) -> int:
        a = as_symdigraph(*resolve_graph(ref_a))
        b = as_symdigraph(*resolve_graph(ref_b))
        decision, iso = is_isomorphic(a, b)
        emit({"isomorphic": decision, "isomorphism": None if iso is None else iso.to_dict()})
        return exit_code_of(decision)
