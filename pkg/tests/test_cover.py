import pytest
from hypothesis import given, settings

from cliquecover.cover import (
    CandidateCliqueSets,
    CliqueCover,
    InvalidCliqueError,
    candidate_sets_from_scratch,
    cover_weight,
    edge_appearance_total,
    is_candidate,
    is_cover,
    read_cover,
    redundant_by_few,
    trivial_count,
    validate_locally_minimal_characterizations,
    write_cover,
)
from cliquecover.graph import Graph
from cliquecover.greedy import improved_greedy

from .conftest import complete, graphs


def ids(g, *cliques):
    """Translate label cliques to dense ids."""
    index = {lab: i for i, lab in enumerate(g.labels)}
    return [{index[v] for v in q} for q in cliques]


def test_g6_minimum_cover_is_cover(g6):
    assert is_cover(g6, ids(g6, {1, 3, 5}, {2, 3, 4}, {3, 4, 5, 6}))


def test_missing_edge_is_not_cover(g6):
    assert not is_cover(g6, ids(g6, {1, 3, 5}, {2, 3, 4}))


def test_non_edge_clique_named(g6):
    with pytest.raises(InvalidCliqueError, match=r"non-edge \(1, 2\)"):
        is_cover(g6, ids(g6, {1, 2, 3}))


def test_g6_minimal_but_not_locally_minimal_cover(g6):
    # {4,5,6} and {3,5,6} together span the K4 {3,4,5,6}, so no non-edge separates them
    c = ids(g6, {1, 3, 5}, {2, 3, 4}, {4, 5, 6}, {3, 6, 5})
    assert is_cover(g6, c)
    rep = validate_locally_minimal_characterizations(g6, c)
    assert rep.over_used == [] and rep.nested == []
    assert rep.fully_joined == [(2, 3)]


def test_characterization_violations_reported():
    g = complete(3)
    rep = validate_locally_minimal_characterizations(g, [{0, 1}, {0, 1, 2}])
    assert rep.nested == [(0, 1)]
    assert rep.fully_joined == [(0, 1)]
    rep = validate_locally_minimal_characterizations(g, [{0, 1}, {0, 2}, {0, 1, 2}])
    assert rep.over_used == [(0, 3, 2)]


def test_weight():
    g = complete(3)
    assert cover_weight([{0, 1, 2}]) == 3
    assert cover_weight(CliqueCover(g, [{0, 1}, {1, 2}, {0, 2}])) == 6


def test_cover_tracking_add_absorb_uncover():
    g = complete(4)
    c = CliqueCover(g)
    first = c.add((0, 1))
    assert len(first) == 1 and c.is_covered(0, 1)
    fresh = c.absorb(0, 2, 3)
    assert sorted(g.edges()[e] for e in fresh) == [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert c.complete
    c.uncover(fresh)
    assert c.n_covered == 1 and not c.is_covered(2, 3)


def test_candidate_definition():
    g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3)], n=4)
    assert is_candidate(g, 2, {0, 1})
    assert is_candidate(g, 0, {0, 1})
    assert not is_candidate(g, 3, {0, 1})


def test_candidate_sets_reverse_index():
    ccs = CandidateCliqueSets(3)
    l = ccs.new_clique()
    ccs.add(0, l)
    ccs.add(2, l)
    ccs.add(2, l)
    assert ccs.total == 2 and ccs.consistent()
    ccs.discard(0, l)
    assert ccs.S[0] == set() and ccs.R[l] == {2}
    ccs.drop_last()
    assert ccs.total == 0 and ccs.R == [] and ccs.consistent()


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_from_scratch_sets_match_definition(g):
    c, _ = improved_greedy(g, postprocess=False)
    ccs = candidate_sets_from_scratch(g, c)
    assert ccs.consistent()
    for x in range(g.n):
        assert ccs.S[x] == {l for l, q in enumerate(c.cliques) if is_candidate(g, x, q)}


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_edge_appearances_bounded_by_min_degree(g):
    c, _ = improved_greedy(g, postprocess=False)
    assert edge_appearance_total(c) <= sum(min(g.degree(x), g.degree(y)) for x, y in g.edges())


def test_redundant_by_few_finds_two_helper_redundancy():
    g = complete(3)
    assert redundant_by_few(g, [{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}]) == (0, (3,))
    assert redundant_by_few(g, [{0, 1, 2}]) is None


def test_trivial_count():
    g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3)], n=4)
    assert trivial_count(g, [{0, 1, 2}, {2, 3}]) == 1


def test_cover_file_round_trip(tmp_path, g6):
    c = ids(g6, {1, 3, 5}, {2, 3, 4}, {3, 4, 5, 6})
    p = tmp_path / "c.txt"
    write_cover(p, g6, c)
    lines = p.read_text().splitlines()
    assert lines[0] == "# cliques=3 weight=10"
    assert lines[1:] == ["1 3 5", "2 3 4", "3 4 5 6"]
    back = read_cover(p, g6)
    assert back == c and is_cover(g6, back)


def test_cover_file_unknown_vertex(tmp_path, g6):
    p = tmp_path / "c.txt"
    p.write_text("1 3 99\n")
    with pytest.raises(InvalidCliqueError):
        read_cover(p, g6)
