"""Brute-force ground truth for tiny graphs.

Size optimum: only maximal cliques need to be considered, because any cover
can be grown clique-by-clique into maximal cliques without adding cliques.
Weight optimum: that argument fails (growing a clique adds vertices), so every
clique with at least two vertices is a candidate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .cover import CliqueCover
from .graph import Graph

SIZE_CAP = 12
WEIGHT_CAP = 9


class OracleCapError(ValueError):
    pass


@dataclass
class OracleResult:
    min_size: int
    min_weight: int
    witness_cover: CliqueCover


def _all_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Every clique of at least two vertices, by extension of sorted prefixes."""
    out = []

    def grow(clique, cands):
        for i, v in enumerate(cands):
            c = clique + (v,)
            if len(c) >= 2:
                out.append(c)
            grow(c, [w for w in cands[i + 1:] if w in g.adj[v]])

    grow((), list(range(g.n)))
    return out


def _maximal(g: Graph, cliques):
    out = []
    for c in cliques:
        s = set(c)
        common = set(range(g.n)) - s
        for v in c:
            common &= set(g.adj[v])
        if not common:
            out.append(c)
    return out


def _edge_masks(g: Graph, cliques):
    idx = g.edge_index
    masks = []
    for c in cliques:
        m = 0
        for e in combinations(c, 2):
            m |= 1 << idx[e]
        masks.append(m)
    return masks


def _set_cover(g: Graph, cliques, cost):
    """Exact min-cost cover of all edges by the given cliques (branch and bound).

    Branches on the uncovered edge with fewest covering cliques.  The bound adds
    ``lb(remaining)`` from ``cost`` being the clique weight or 1.
    """
    full = (1 << g.m) - 1
    masks = _edge_masks(g, cliques)
    by_edge = [[] for _ in range(g.m)]
    for i, m in enumerate(masks):
        for e in range(g.m):
            if m >> e & 1:
                by_edge[e].append(i)
    costs = [cost(c) for c in cliques]
    # cheapest cost per covered edge, for an admissible remaining-cost bound
    per_edge = min((costs[i] / bin(masks[i]).count("1") for i in range(len(cliques))), default=1.0)
    best = [math.inf, None]

    def lower(covered):
        left = g.m - bin(covered).count("1")
        return 0 if left == 0 else max(min(costs), math.ceil(left * per_edge - 1e-9))

    def search(covered, chosen, total):
        if covered == full:
            if total < best[0]:
                best[0], best[1] = total, list(chosen)
            return
        if total + lower(covered) >= best[0]:
            return
        pick, pick_opts = None, None
        for e in range(g.m):
            if not covered >> e & 1:
                opts = by_edge[e]
                if pick is None or len(opts) < len(pick_opts):
                    pick, pick_opts = e, opts
                    if len(opts) == 1:
                        break
        for i in sorted(pick_opts, key=lambda i: (costs[i], -bin(masks[i] & ~covered).count("1"), i)):
            chosen.append(i)
            search(covered | masks[i], chosen, total + costs[i])
            chosen.pop()

    search(0, [], 0)
    return best[0], [set(cliques[i]) for i in best[1]]


def exact_minimum_size(g: Graph, limit_n: int = SIZE_CAP) -> OracleResult:
    if g.n > limit_n:
        raise OracleCapError(f"graph has {g.n} vertices, size oracle cap is {limit_n}")
    if g.m == 0:
        return OracleResult(0, 0, CliqueCover(g))
    cands = _maximal(g, _all_cliques(g))
    size, witness = _set_cover(g, cands, lambda c: 1)
    return OracleResult(size, sum(len(c) for c in witness), CliqueCover(g, witness))


def exact_minimum_weight(g: Graph, limit_n: int = WEIGHT_CAP) -> OracleResult:
    if g.n > limit_n:
        raise OracleCapError(f"graph has {g.n} vertices, weight oracle cap is {limit_n}")
    if g.m == 0:
        return OracleResult(0, 0, CliqueCover(g))
    weight, witness = _set_cover(g, _all_cliques(g), len)
    return OracleResult(len(witness), weight, CliqueCover(g, witness))


def exhaustive_minimum_weight(g: Graph) -> int:
    """Unpruned enumeration of all sets of cliques; only for cross-checking on very small graphs."""
    cliques = _all_cliques(g)
    masks = _edge_masks(g, cliques)
    full = (1 << g.m) - 1
    best = math.inf

    def walk(i, covered, total):
        nonlocal best
        if covered == full:
            best = min(best, total)
        if i == len(cliques):
            return
        walk(i + 1, covered | masks[i], total + len(cliques[i]))
        walk(i + 1, covered, total)

    walk(0, 0, 0)
    return 0 if g.m == 0 else best
