"""Bron-Kerbosch enumeration of maximal cliques anchored on an edge."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph, degeneracy_ordering


@dataclass(frozen=True)
class InducedSubgraphSpec:
    anchor_edge: tuple[int, int]
    candidate_set: frozenset


def moon_moser_cap(s: int) -> int:
    return 3 ** math.ceil(s / 3)


def _pivot(P, X, adj):
    # max |P ∩ N(u)| over P ∪ X, lowest id on ties
    best, best_cnt = None, -1
    for u in sorted(P | X):
        nu = adj[u]
        cnt = sum(1 for v in P if v in nu)
        if cnt > best_cnt:
            best, best_cnt = u, cnt
    return best


def _bron_kerbosch(R, P, X, adj):
    if not P:
        if not X:
            yield frozenset(R)
        return
    u = _pivot(P, X, adj)
    nu = adj[u]
    for v in sorted(w for w in P if w not in nu):
        nv = adj[v]
        yield from _bron_kerbosch(R + [v], {w for w in P if w in nv}, {w for w in X if w in nv}, adj)
        P.remove(v)
        X.add(v)


def iter_maximal_cliques_containing_edge(g: Graph, spec: InducedSubgraphSpec):
    """Lazily yield maximal cliques of ``g[candidate_set ∪ {x, y}]`` that contain ``x`` and ``y``.

    The order is deterministic (pivoting with ascending vertex iteration), so
    callers may stop at the first clique that works for them.
    """
    x, y = spec.anchor_edge
    if x == y or not g.has_edge(x, y):
        raise ValueError(f"anchor ({x}, {y}) is not an edge")
    cand = set(spec.candidate_set)
    ax, ay = g.adj[x], g.adj[y]
    stray = [v for v in cand if v not in ax or v not in ay]
    if stray:
        raise ValueError(f"candidates {sorted(stray)} are not common neighbours of ({x}, {y})")
    cap = moon_moser_cap(len(cand))
    count = 0
    for clique in _bron_kerbosch([x, y], cand, set(), g.adj):
        count += 1
        if count > cap:
            raise AssertionError(f"{count} maximal cliques exceed Moon-Moser cap {cap}")
        yield clique


def maximal_cliques_containing_edge(g: Graph, spec: InducedSubgraphSpec) -> list[frozenset]:
    """All anchored maximal cliques, sorted lexicographically by their sorted vertex lists."""
    return sorted(iter_maximal_cliques_containing_edge(g, spec), key=lambda c: sorted(c))


def maximal_cliques(g: Graph) -> list[frozenset]:
    """Every maximal clique of ``g`` with at least one edge (debug listing)."""
    dv = degeneracy_ordering(g)
    out = []
    for v in dv.order:
        later = set(dv.later[v])
        if not g.adj[v]:
            continue
        earlier = set(g.adj[v]) - later
        out.extend(_bron_kerbosch([v], later, earlier, g.adj))
    return sorted(out, key=lambda c: sorted(c))
