from itertools import combinations

import pytest
from hypothesis import given, settings

from cliquecover.cover import cover_weight, is_cover
from cliquecover.graph import Graph, gnp_generate
from cliquecover.oracle import (
    OracleCapError,
    exact_minimum_size,
    exact_minimum_weight,
    exhaustive_minimum_weight,
)

from .conftest import complete, cycle, graphs, path


def test_g6(g6):
    size = exact_minimum_size(g6)
    assert size.min_size == 3 and is_cover(g6, size.witness_cover)
    weight = exact_minimum_weight(g6)
    assert weight.min_weight == 10 == exhaustive_minimum_weight(g6)
    assert is_cover(g6, weight.witness_cover)


@pytest.mark.parametrize("g, size, weight", [
    (cycle(5), 5, 10),
    (complete(6), 1, 6),
    (complete(3), 1, 3),
    (path(3), 2, 4),
    (Graph(2, [set(), set()]), 0, 0),
])
def test_small_fixtures(g, size, weight):
    assert exact_minimum_size(g).min_size == size
    assert exact_minimum_weight(g).min_weight == weight


def brute_size(g):
    cliques = [set(c) for r in range(2, g.n + 1) for c in combinations(range(g.n), r)
               if all(g.has_edge(a, b) for a, b in combinations(c, 2))]
    for k in range(g.m + 1):
        for pick in combinations(cliques, k):
            if is_cover(g, pick):
                return k


@given(graphs(max_n=6))
@settings(max_examples=60, deadline=None)
def test_size_matches_unpruned_search(g):
    assert exact_minimum_size(g).min_size == brute_size(g)


@given(graphs(max_n=6))
@settings(max_examples=60, deadline=None)
def test_weight_matches_unpruned_search(g):
    assert exact_minimum_weight(g).min_weight == exhaustive_minimum_weight(g)


@given(graphs(max_n=8))
@settings(max_examples=60, deadline=None)
def test_result_invariants(g):
    s, w = exact_minimum_size(g), exact_minimum_weight(g)
    assert s.min_size <= w.min_weight / 2 <= g.m
    assert s.min_size <= w.min_size
    assert s.min_weight >= w.min_weight
    for r in (s, w):
        assert is_cover(g, r.witness_cover)
        assert cover_weight(r.witness_cover) == r.min_weight
        assert len(r.witness_cover) == r.min_size


def test_caps():
    with pytest.raises(OracleCapError):
        exact_minimum_size(gnp_generate(13, 0.3, 1))
    with pytest.raises(OracleCapError):
        exact_minimum_weight(gnp_generate(10, 0.3, 1))
    assert exact_minimum_size(gnp_generate(13, 0.3, 1), limit_n=13).min_size > 0
