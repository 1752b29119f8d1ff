from statistics import fmean

import pytest

from cliquecover.graph import (
    Graph,
    GraphFormatError,
    degeneracy_ordering,
    gnp_generate,
    read_edge_list,
    trivial_cliques,
    write_edge_list,
)

from .conftest import complete, cycle, grid


def test_g6_shape(g6):
    assert (g6.n, g6.m) == (6, 10)
    assert list(g6.labels) == [1, 2, 3, 4, 5, 6]
    assert degeneracy_ordering(g6).degeneracy == 3
    assert trivial_cliques(g6) == set()


def test_complete_graph_degeneracy():
    assert degeneracy_ordering(complete(5)).degeneracy == 4


def test_tree_and_grid_degeneracy():
    assert degeneracy_ordering(grid(5, 5)).degeneracy == 2
    assert degeneracy_ordering(cycle(7)).degeneracy == 2
    star = Graph.from_edges([(0, i) for i in range(1, 6)])
    assert degeneracy_ordering(star).degeneracy == 1


def test_edges_sorted_and_indexed(g6):
    es = g6.edges()
    assert es == sorted(es) and all(u < v for u, v in es)
    assert all(g6.edge_id(v, u) == i for i, (u, v) in enumerate(es))


def test_self_loop_rejected():
    with pytest.raises(GraphFormatError, match=r"\(3, 3\)"):
        Graph.from_edges([(1, 2), (3, 3)])


def test_duplicate_edges_collapse():
    g = Graph.from_edges([(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


def test_sorted_mode_matches_set_mode(g6):
    s = Graph.from_edges([(1, 5), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)], mode="sorted")
    assert s.edges() == g6.edges()
    assert all(set(s.adj[v]) == set(g6.adj[v]) for v in range(6))
    assert 2 in s.adj[0] and 1 not in s.adj[0]


def test_gnp_deterministic():
    a, b = gnp_generate(40, 0.2, 7), gnp_generate(40, 0.2, 7)
    assert a.edges() == b.edges()
    assert gnp_generate(40, 0.2, 8).edges() != a.edges()


def test_gnp_extremes():
    assert gnp_generate(10, 0.0, 1).m == 0
    assert gnp_generate(10, 1.0, 1).m == 45
    with pytest.raises(ValueError):
        gnp_generate(5, 1.5, 0)


def test_gnp_mean_edge_count():
    ms = [gnp_generate(150, 0.10, s).m for s in range(32)]
    assert abs(fmean(ms) - 1117.5) <= 0.1 * 1117.5


def test_trivial_cliques_definition():
    # triangle with a pendant edge: only the pendant edge has no shared neighbour
    g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3)])
    assert trivial_cliques(g) == {(2, 3)}


def test_edge_list_round_trip(tmp_path, g6):
    p = tmp_path / "g.txt"
    write_edge_list(g6, p, header="fixture")
    assert p.read_text().startswith("# fixture\n")
    back = read_edge_list(p)
    assert back.labels == g6.labels and back.edges() == g6.edges()


@pytest.mark.parametrize("text, fragment", [
    ("1 2\n3\n", "expected 'u v'"),
    ("1 x\n", "non-integer"),
    ("4 4\n", "self-loop"),
])
def test_edge_list_errors(tmp_path, text, fragment):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(GraphFormatError, match=fragment):
        read_edge_list(p)


def test_edge_list_comments_and_blank_lines(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# header\n\n10 20\n20 30 extra\n")
    g = read_edge_list(p)
    assert g.m == 2 and list(g.labels) == [10, 20, 30]
