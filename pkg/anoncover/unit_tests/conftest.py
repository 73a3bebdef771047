from pytest import fixture

from anoncover.graphs import builtin, dir_graph
from anoncover.unit_tests.directories import fresh_run_dir


def pytest_addoption(parser):
    parser.addoption(
        "--search_budget",
        action="store",
        default=None,
    )


@fixture()
def search_budget(request):
    x = request.config.getoption("--search_budget")
    return None if x is None else int(x)


@fixture()
def k2():
    return builtin("k2")


@fixture()
def c4():
    return builtin("c4")


@fixture()
def h_g1():
    return builtin("h-g1")


@fixture()
def h_g4_dir():
    return dir_graph(builtin("h-g4"))


@fixture()
def run_dir(request):
    return fresh_run_dir(request.node.name.replace("[", "_").replace("]", ""))
