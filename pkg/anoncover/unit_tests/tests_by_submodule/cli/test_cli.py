import json
import os

import pytest

from anoncover.cli import run_cli
from anoncover.consts import ExitCodes
from anoncover.graphs import UGraph, dump_graph


def _call(capsys, *argv) -> tuple:
    capsys.readouterr()
    code = run_cli(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_version(capsys):
    assert run_cli(["--version"]) == ExitCodes.ok
    assert "anoncover Version" in capsys.readouterr().out


def test_builtin_list(capsys):
    code, names = _call(capsys, "builtin", "list")
    assert code == ExitCodes.ok
    assert "h-g4" in names and "fig4-nonsym" in names


def test_builtin_get_labels(capsys):
    code, x = _call(capsys, "builtin", "get", "fig1-base")
    assert code == ExitCodes.ok
    assert x["labels"] == ["a", "b", "c", "d", "e"]


def test_graph_validate(capsys, tmp_path):
    assert _call(capsys, "graph", "validate", "builtin:k2")[0] == ExitCodes.ok
    fn = os.path.join(tmp_path, "loop.json")
    with open(fn, "w") as f:
        f.write(json.dumps({"n": 2, "edges": [[0, 0], [0, 1]]}))
    code, x = _call(capsys, "graph", "validate", fn)
    assert code == ExitCodes.negative
    assert not x["valid"]


def test_graph_metrics(capsys):
    code, x = _call(capsys, "graph", "metrics", "builtin:c4")
    assert code == ExitCodes.ok
    assert x == {"n": 4, "m": 4, "max_degree": 2, "diameter": 2}


def test_graph_dir_ports(capsys):
    code, x = _call(capsys, "graph", "dir", "builtin:p3", "--port-mode", "canonical")
    assert code == ExitCodes.ok
    assert len(x["arcs"]) == 4
    assert all("outport" in a for a in x["arcs"])


@pytest.mark.parametrize("base,code", [("builtin:arete-h-prime", ExitCodes.ok), ("builtin:arete-h", ExitCodes.negative)])
def test_cover_check_vmap(capsys, base: str, code: int):
    assert _call(capsys, "cover", "check", "--total", "builtin:c4", "--base", base, "--vmap", "0,0,0,0")[0] == code


def test_cover_check_needs_map(capsys):
    assert _call(capsys, "cover", "check", "--total", "builtin:c4", "--base", "builtin:arete-h")[0] == ExitCodes.usage


def test_cover_bases(capsys):
    code, x = _call(capsys, "cover", "bases", "builtin:h-g4")
    assert code == ExitCodes.ok
    assert x["complete"]
    assert len(x["bases"]) == 1


@pytest.mark.parametrize("ref,code", [("builtin:p3", ExitCodes.ok), ("builtin:c4", ExitCodes.negative)])
def test_cover_minimal(capsys, ref: str, code: int):
    assert _call(capsys, "cover", "minimal", ref)[0] == code


def test_lift_enumerate(capsys):
    code, x = _call(capsys, "lift", "enumerate", "--base", "builtin:h-g1", "--sheets", "2", "--simple", "--connected")
    assert code == ExitCodes.ok
    assert len(x["classes"]) == 1
    assert x["classes"][0]["total"]["n"] == 4


def test_lift_enumerate_budget(capsys):
    code, x = _call(capsys, "lift", "enumerate", "--base", "builtin:h-g1", "--sheets", "4", "--lift-budget", "10")
    assert code == ExitCodes.unknown
    assert not x["complete"]


def test_lift_iso(capsys):
    assert _call(capsys, "lift", "iso", "builtin:h-g6", "builtin:h-g7")[0] == ExitCodes.negative
    code, x = _call(capsys, "lift", "iso", "builtin:h-g4", "builtin:h-g4")
    assert code == ExitCodes.ok
    assert x["isomorphic"]


@pytest.mark.parametrize("ref,code", [
    ("builtin:h-g4", ExitCodes.ok),
    ("builtin:c4", ExitCodes.negative),
    ("builtin:h-g1", ExitCodes.usage),
])
def test_feasible_spanning_tree(capsys, ref: str, code: int):
    assert _call(capsys, "feasible", "spanning-tree", ref)[0] == code


def test_feasible_topology(capsys):
    code, x = _call(capsys, "feasible", "topology", "builtin:h-g6")
    assert code == ExitCodes.negative
    assert x["decision"] == "infeasible"


def test_yk_check(capsys):
    assert _call(capsys, "yk-check", "builtin:k4")[0] == ExitCodes.ok


def test_counterexample_search(capsys):
    code, x = _call(capsys, "counterexample", "--degree", "3", "--max-n", "6")
    assert code == ExitCodes.ok
    assert x["pairs"] == []


def test_counterexample_bad_degree(capsys):
    assert _call(capsys, "counterexample", "--degree", "2", "--max-n", "6")[0] == ExitCodes.usage


def test_counterexample_pair(capsys, tmp_path):
    k33 = UGraph(n=6, edges=[(u, v) for u in range(3) for v in range(3, 6)], name="k33")
    prism = UGraph(n=6, edges=[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)], name="prism")
    fns = []
    for g in [k33, prism]:
        fn = os.path.join(tmp_path, f"{g.name}.json")
        with open(fn, "w") as f:
            f.write(dump_graph(g))
        fns.append(fn)
    code, x = _call(capsys, "counterexample", "--pair", *fns)
    assert code == ExitCodes.negative


def test_simulate_k2_lockstep(capsys):
    code, x = _call(capsys, "simulate", "--graph", "builtin:k2", "--protocol", "mazurkiewicz", "--scheduler",
                    "lockstep")
    assert code == ExitCodes.ok
    assert x["summary"]["k"] == 1
    assert x["summary"]["violations"] == []
    assert x["trace"]


def test_simulate_tarry_leader(capsys, run_dir):
    trace_fn = os.path.join(run_dir, "tarry.trace.jsonl")
    code, x = _call(capsys, "simulate", "--graph", "builtin:c4", "--protocol", "tarry", "--leader", "0",
                    "--trace", trace_fn)
    assert code == ExitCodes.ok
    assert x["summary"]["valid_tree"]
    assert "trace" not in x
    assert os.path.isfile(trace_fn)


def test_simulate_co_leaders_not_adjacent(capsys):
    assert _call(capsys, "simulate", "--graph", "builtin:c4", "--protocol", "tarry", "--co-leaders", "0",
                 "2")[0] == ExitCodes.usage


def test_simulate_step_cap(capsys):
    assert _call(capsys, "simulate", "--graph", "builtin:c4", "--protocol", "mazurkiewicz", "--step-cap",
                 "2")[0] == ExitCodes.unknown


def test_simulate_unknown_protocol(capsys):
    assert _call(capsys, "simulate", "--graph", "builtin:c4", "--protocol", "flooding")[0] == ExitCodes.usage


def test_batch_and_replay(capsys, run_dir):
    out = os.path.join(run_dir, "batch")
    code, rows = _call(capsys, "batch", "--graph", "builtin:p3", "--protocol", "mazurkiewicz", "--seeds", "0:2",
                       "--port-mode", "random", "--out", out)
    assert code == ExitCodes.ok
    assert [r["run"] for r in rows] == ["p3_random_0", "p3_random_1"]
    assert os.path.isfile(os.path.join(out, "batch.json"))
    trace_fn = os.path.join(out, "p3_random_1.trace.jsonl")
    config_fn = os.path.join(out, "p3_random_1.config.json")
    code, x = _call(capsys, "replay", trace_fn, "--config", config_fn)
    assert code == ExitCodes.ok
    assert x["matches"] and x["quiescent"]
    with open(config_fn, "r") as f:
        config = json.load(f)
    config["expected_states_digest"] = "0" * 64
    with open(config_fn, "w") as f:
        json.dump(config, f)
    assert _call(capsys, "replay", trace_fn, "--config", config_fn)[0] == ExitCodes.negative


def test_batch_from_yaml(capsys, run_dir):
    out = os.path.join(run_dir, "runs")
    spec_fn = os.path.join(run_dir, "batch.yaml")
    with open(spec_fn, "w") as f:
        f.write(f"graphs: [builtin:k2, builtin:star-k13]\nprotocol: election-tree\nseeds: {{start: 0, stop: 3}}\n"
                f"out_dir: {out}\n")
    code, rows = _call(capsys, "batch", "--spec", spec_fn)
    assert code == ExitCodes.ok
    assert len(rows) == 6


def test_batch_needs_graph(capsys):
    assert _call(capsys, "batch", "--protocol", "mazurkiewicz")[0] == ExitCodes.usage


def test_builtin_get_h_g1(capsys):
    code, x = _call(capsys, "builtin", "get", "h-g1")
    assert code == ExitCodes.ok
    assert len(x["arcs"]) == 5


def test_feasible_topology_h_g4(capsys):
    code, x = _call(capsys, "feasible", "topology", "builtin:h-g4")
    assert code == ExitCodes.ok
    assert x["decision"] == "feasible"


def test_cover_check_map_from_bases(capsys, run_dir):
    """A base and map printed by cover bases verify again through cover check."""
    _, x = _call(capsys, "cover", "bases", "builtin:h-g4")
    base_fn, map_fn = os.path.join(run_dir, "base.json"), os.path.join(run_dir, "map.json")
    with open(base_fn, "w") as f:
        json.dump(x["bases"][0]["base"], f)
    with open(map_fn, "w") as f:
        json.dump(x["bases"][0]["map"], f)
    code, y = _call(capsys, "cover", "check", "--total", "builtin:h-g4", "--base", base_fn, "--map", map_fn)
    assert code == ExitCodes.ok
    assert y["is_symmetric_covering"]


@pytest.mark.parametrize("budget,code", [("1", ExitCodes.unknown), ("100000", ExitCodes.ok)])
def test_cover_bases_budget(capsys, budget: str, code: int):
    exit_code, x = _call(capsys, "cover", "bases", "builtin:c4", "--budget", budget)
    assert exit_code == code
    assert x["complete"] == (code == ExitCodes.ok)


def test_cover_minimal_budget(capsys):
    code, x = _call(capsys, "cover", "minimal", "builtin:p3", "--budget", "100000")
    assert code == ExitCodes.ok and x["minimal"] is True
    code, x = _call(capsys, "cover", "minimal", "builtin:c4", "--budget", "1")
    assert code == ExitCodes.unknown
    assert x["minimal"] == "unknown"


def test_simulate_k2_seed(capsys):
    code, x = _call(capsys, "simulate", "--protocol", "mazurkiewicz", "--graph", "builtin:k2", "--seed", "1")
    assert code == ExitCodes.ok
    assert x["config"]["seed"] == 1
    assert len(x["result"]["states"]) == 2
    assert x["summary"]["k"] in [1, 2]
    assert x["trace"]


def test_simulate_random_ports_trace_file(capsys, run_dir):
    texts = []
    for i in range(2):
        trace_fn = os.path.join(run_dir, f"run{i}.trace.jsonl")
        code, x = _call(capsys, "simulate", "--protocol", "mazurkiewicz", "--graph", "builtin:fig1-base", "--ports",
                        "random", "--port-seed", "1", "--seed", "3", "--trace", trace_fn)
        assert code == ExitCodes.ok
        assert "trace" not in x
        with open(trace_fn, "r") as f:
            texts.append(f.read())
    assert texts[0] == texts[1]


def test_simulate_port_file(capsys, run_dir):
    ports_fn = os.path.join(run_dir, "p3.ports.json")
    with open(ports_fn, "w") as f:
        json.dump({"ports": [[0, 1, 1], [1, 0, 2], [1, 2, 1], [2, 1, 1]]}, f)
    code, x = _call(capsys, "simulate", "--protocol", "tarry", "--graph", "builtin:p3", "--ports", ports_fn,
                    "--leader", "1")
    assert code == ExitCodes.ok
    assert [a["outport"] for a in x["config"]["network"]["arcs"]] == [1, 2, 1, 1]
    assert x["summary"]["edges"] == [[0, 1], [1, 2]]


def test_simulate_bad_port_file(capsys, run_dir):
    ports_fn = os.path.join(run_dir, "p3.ports.json")
    with open(ports_fn, "w") as f:
        json.dump([[0, 1, 1], [1, 0, 1], [1, 2, 1], [2, 1, 1]], f)
    assert _call(capsys, "simulate", "--protocol", "tarry", "--graph", "builtin:p3", "--ports", ports_fn, "--leader",
                 "1")[0] == ExitCodes.usage
