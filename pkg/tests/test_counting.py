import itertools

from cogkit.catalog import load_catalog
from cogkit.counting import count_graph_instances, count_instances, count_report
from cogkit.operators import free_slots
from cogkit.taskspec import build_graph


def brute_force_count(graph, grid):
    """Oracle: enumerate every distinct binding tuple explicitly."""
    domains = []
    for _node_id, _slot, param in free_slots(graph):
        if param.domain == "box":
            domains.append([(i, j) for i in range(grid) for j in range(grid)])
        else:
            domains.append(list(param.domain))
    if not domains:
        return 1
    return sum(1 for _ in itertools.product(*domains))


def test_color_times_time():
    graph = build_graph(
        "task T\n"
        "node sel select color=free time=free\n"
        "node shp getshape objects=@sel\n"
        "root shp\n")
    assert count_graph_instances(graph, 32) == 19 * 3 == 57
    assert brute_force_count(graph, 32) == 57


def test_brute_force_agreement_with_anchor():
    graph = build_graph(
        "task T\n"
        "node sel select color=free relation=free anchor=free time=free{now,latest}\n"
        "node ex exist objects=@sel\n"
        "root ex\n")
    for grid in (1, 2, 3):
        assert count_graph_instances(graph, grid) == brute_force_count(graph, grid)


def test_brute_force_agreement_equal_literal():
    graph = build_graph(
        "task T\n"
        "node sel select shape=free time=free\n"
        "node col getcolor objects=@sel\n"
        "node eq equal lhs=@col rhs=free:color\n"
        "root eq\n")
    assert count_graph_instances(graph, 4) == 32 * 3 * 19
    assert brute_force_count(graph, 4) == 32 * 3 * 19


def test_empty_catalog_counts_zero():
    assert count_instances([], 32) == 0


def test_fully_fixed_graph_counts_one():
    graph = build_graph(
        "task T\n"
        "node sel select color=red shape=circle time=now\n"
        "node ex exist objects=@sel\n"
        "root ex\n")
    assert count_graph_instances(graph, 32) == 1


def test_catalog_count_is_exact_integer_and_scale():
    graphs = {name: doc.graph for name, doc in load_catalog().items()}
    report = count_report(graphs, 32)
    assert report["total"] == sum(report["per_task"].values())
    assert isinstance(report["total"], int)
    # Catalog scale lands within one order of magnitude of 2e12.
    assert 2e11 <= report["total"] <= 2e13
    assert "32x32" in report["note"]


def test_count_scales_with_grid():
    graph = build_graph(
        "task T\n"
        "node sel select relation=free anchor=free time=now\n"
        "node ex exist objects=@sel\n"
        "root ex\n")
    at_8 = count_graph_instances(graph, 8)
    at_16 = count_graph_instances(graph, 16)
    assert at_16 == at_8 * 4
