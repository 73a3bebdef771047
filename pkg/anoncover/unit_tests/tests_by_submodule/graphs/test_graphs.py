import json

import pytest

from anoncover.coverings import CoveringMap, identity_covering
from anoncover.errors import CoveringError, GraphValidationError
from anoncover.graphs import SymDigraph, UGraph, assign_arc_ports, assign_ports, builtin, builtin_names, dir_graph, \
    dump_graph, graph_metrics, lift_ports, load_graph, load_ported_graph, load_ports, relabel, undirected_of, vertex_labels


def test_load_k2():
    g = load_graph('{"n": 2, "edges": [[0, 1]]}')
    assert isinstance(g, UGraph)
    assert g.n == 2 and g.m == 1


@pytest.mark.parametrize("text,match", [
    ('{"n": 3, "edges": [[0, 1], [0, 1]]}', "duplicate"),
    ('{"n": 2, "edges": [[0, 0]]}', "loop"),
    ('{"n": 3, "edges": [[0, 1]]}', "disconnected"),
    ('{"n": 2, "edges": [[0, 2]]}', "outside"),
    ('{"edges": [[0, 1]]}', "missing field"),
    ('[1, 2]', "JSON object"),
    ('{"n": 2', "parse"),
])
def test_load_rejects(text: str, match: str):
    with pytest.raises(GraphValidationError, match=match):
        load_graph(text)


def test_fig1_base_is_valid():
    g = builtin("fig1-base")
    assert g.n == 5 and g.m == 6
    labels = vertex_labels("fig1-base")
    named = {(labels[u], labels[v]) for u, v in g.edges}
    assert named == {("a", "b"), ("a", "c"), ("c", "d"), ("c", "e"), ("b", "d"), ("d", "e")}


def test_dir_graph_counts():
    d = dir_graph(builtin("k2"))
    assert d.n == 2 and d.n_arcs == 2
    assert d.sym(0) == 1 and d.sym(1) == 0
    assert len(dir_graph(builtin("c4")).sym_pairs()) == 4
    assert dir_graph(builtin("fig1-base")).n_arcs == 12


def test_dir_graph_roundtrip():
    g = builtin("h-g4")
    assert undirected_of(dir_graph(g)) == g


def test_symdigraph_rejects_broken_sym():
    with pytest.raises(GraphValidationError, match="involution"):
        SymDigraph(n=2, arcs=[(0, 1), (1, 0), (0, 1)], sym=[1, 2, 0])
    with pytest.raises(GraphValidationError, match="starts at"):
        SymDigraph(n=2, arcs=[(0, 1), (0, 1)], sym=[1, 0])


def test_symdigraph_rejects_bad_outports():
    with pytest.raises(GraphValidationError, match="bijection"):
        SymDigraph(n=2, arcs=[(0, 1), (1, 0)], sym=[1, 0], outports=[2, 1])


def test_symdigraph_loops():
    d = builtin("h-g1")
    assert d.n == 2 and d.n_arcs == 5
    assert d.has_loops() and d.loop_vertices() == [0]
    assert d.self_symmetric_loop_counts() == [1, 0]
    assert not d.is_simple()
    assert d.degrees == [3, 2]


def test_canonical_ports_k2():
    ports = assign_ports(builtin("k2"))
    assert ports.port(0, 1) == 1 and ports.port(1, 0) == 1


def test_canonical_ports_star():
    g = builtin("star-k13")
    ports = assign_ports(g)
    assert [ports.port(0, v) for v in (1, 2, 3)] == [1, 2, 3]
    assert ports.neighbor(0, 2) == 2


@pytest.mark.parametrize("seed", [0, 7, 123])
def test_random_ports_deterministic(seed: int):
    g = builtin("c4")
    assert assign_ports(g, mode="random", seed=seed) == assign_ports(g, mode="random", seed=seed)


def test_unknown_port_mode():
    with pytest.raises(ValueError, match="port mode"):
        assign_ports(builtin("k2"), mode="sorted")


def test_ported_dir_inport():
    g = builtin("star-k13")
    d = dir_graph(g, assign_ports(g))
    for a in range(d.n_arcs):
        assert d.inport(a) == d.outport(d.sym(a))
        assert d.arc_at_inport(d.tgt(a), d.inport(a)) == a


def test_lift_ports_k2():
    g = builtin("k2")
    base = assign_arc_ports(builtin("arete-h"))
    cover = CoveringMap(total=dir_graph(g), base=base.without_ports(), vmap=(0, 0), amap=(0, 0))
    ports = lift_ports(g, base, cover)
    assert ports.port(0, 1) == 1 and ports.port(1, 0) == 1


def test_lift_ports_c4_orientation():
    """Arcs 0, 4, 6, 3 run clockwise around the cycle 0-1-2-3."""
    g = builtin("c4")
    base = assign_arc_ports(builtin("arete-h-prime"))
    cover = CoveringMap(total=dir_graph(g), base=base.without_ports(), vmap=(0, 0, 0, 0),
                        amap=(0, 1, 1, 0, 0, 1, 0, 1))
    ports = lift_ports(g, base, cover)
    for v in range(4):
        assert ports.port(v, (v + 1) % 4) == 1
        assert ports.port(v, (v - 1) % 4) == 2


def test_lift_ports_identity():
    g = builtin("p3")
    ported = dir_graph(g, assign_ports(g, mode="random", seed=3))
    ports = lift_ports(g, ported, identity_covering(dir_graph(g)))
    assert ports == assign_ports(g, mode="random", seed=3)


def test_lift_ports_rejects_non_covering():
    g = builtin("p3")
    base = assign_arc_ports(builtin("arete-h-prime"))
    cover = CoveringMap(total=dir_graph(g), base=base.without_ports(), vmap=(0, 0, 0), amap=(0, 1, 0, 1))
    with pytest.raises(CoveringError):
        lift_ports(g, base, cover)


@pytest.mark.parametrize("name", builtin_names())
def test_builtin_corpus_loads(name: str):
    g = builtin(name)
    assert isinstance(g, (UGraph, SymDigraph))
    assert len(vertex_labels(name)) == g.n


def test_builtin_unknown_name():
    with pytest.raises(GraphValidationError, match="choose from"):
        builtin("g28")


@pytest.mark.parametrize("name,n,m", [
    ("h-g4", 4, 5),
    ("fig4-nonsym", 16, 24),
    ("fig1-total", 15, 18),
])
def test_builtin_sizes(name: str, n: int, m: int):
    g = builtin(name)
    assert g.n == n and g.m == m


def test_fig4_nonsym_cubic():
    assert set(builtin("fig4-nonsym").degrees) == {3}


def test_dump_ported_graph():
    g = builtin("c4")
    ports = assign_ports(g, mode="random", seed=1)
    g2, ports2 = load_ported_graph(dump_graph(g, ports))
    assert g2 == g and ports2 == ports


def test_dump_symdigraph_keeps_ports():
    d = assign_arc_ports(builtin("h-g1"), mode="random", seed=5)
    assert load_graph(dump_graph(d)) == d
    assert [x["id"] for x in json.loads(dump_graph(d))["arcs"]] == list(range(d.n_arcs))


def test_relabel():
    d = dir_graph(builtin("p3"))
    r = relabel(d, [2, 1, 0])
    assert r.degrees == [1, 2, 1]
    assert r.src(0) == 2 and r.tgt(0) == 1


def test_metrics():
    x = graph_metrics(builtin("star-k13"))
    assert (x.n, x.m, x.max_degree, x.diameter) == (4, 3, 3, 2)


def test_load_ports_ugraph():
    g = builtin("c4")
    ports = assign_ports(g, mode="random", seed=5)
    expected = dir_graph(g, ports)
    assert load_ports(json.dumps(ports.as_triples()), g) == expected
    assert load_ports(json.dumps({"ports": ports.as_triples()}), g) == expected


def test_load_ports_symdigraph(h_g1):
    d = assign_arc_ports(h_g1, mode="random", seed=2)
    assert load_ports(json.dumps({"outports": [d.outport(a) for a in range(d.n_arcs)]}), h_g1) == d
    with pytest.raises(GraphValidationError, match="outports"):
        load_ports(json.dumps({"outports": [1, 2]}), h_g1)
    with pytest.raises(GraphValidationError):
        load_ports(json.dumps([[0, 1, 1]]), h_g1)
