"""Greedy edge clique cover solvers built on candidate clique sets.

``basic_greedy`` recomputes candidate sets from scratch for every uncovered
edge; ``improved_greedy`` maintains them incrementally and produces the same
cover; ``degeneracy_greedy`` restricts propagation to later neighbours of a
degeneracy ordering.  ``post_process`` drops redundant cliques.
"""
from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass
from itertools import combinations

from .cover import CliqueCover, cover_weight, is_candidate, trivial_count
from .graph import Graph, degeneracy_ordering, trivial_cliques
from .stats import UNBOUNDED, Deadline, RunStats

_CHECK_EVERY = 256


class EdgeOrder(str, enum.Enum):
    DEGREE = "degree"
    DEGENERACY = "degeneracy"
    INPUT = "input"


@dataclass(frozen=True)
class CliqueSelect:
    """Which clique absorbs an edge when several candidates qualify."""

    kind: str = "largest"
    seed: int = 0

    KINDS = ("smallest", "largest", "earliest", "random")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown clique selection {self.kind!r}")

    def chooser(self):
        if self.kind == "earliest":
            return lambda cands, cliques: min(cands)
        if self.kind == "smallest":
            return lambda cands, cliques: min(cands, key=lambda l: (len(cliques[l]), l))
        if self.kind == "largest":
            return lambda cands, cliques: min(cands, key=lambda l: (-len(cliques[l]), l))
        rng = random.Random(self.seed)
        return lambda cands, cliques: rng.choice(sorted(cands))

    def __str__(self):
        return f"random({self.seed})" if self.kind == "random" else self.kind


def as_select(select) -> CliqueSelect:
    if isinstance(select, CliqueSelect):
        return select
    return CliqueSelect(select)


def edge_sequence(g: Graph, order=EdgeOrder.DEGREE, dv=None):
    """Yield every edge once as ``(x, y)`` in the processing order of ``order``."""
    order = EdgeOrder(order)
    if order is EdgeOrder.INPUT:
        yield from g.edges()
        return
    if order is EdgeOrder.DEGENERACY:
        if dv is None:
            dv = degeneracy_ordering(g)
        for x in dv.order:
            for y in dv.later[x]:
                yield x, y
        return
    # Vertices by ascending degree; each vertex then covers all its incident edges.
    key = lambda v: (len(g.adj[v]), v)
    done = bytearray(g.n)
    for x in sorted(range(g.n), key=key):
        for y in sorted(g.adj[x], key=key):
            if not done[y]:
                yield x, y
        done[x] = 1


def _stats(g, algorithm, policy, seed, cover, t0, trivial=None, **extra) -> RunStats:
    if trivial is None:
        trivial = trivial_cliques(g)
    st = RunStats(
        n=g.n,
        m=g.m,
        max_degree=g.max_degree,
        algorithm=algorithm,
        policy=policy,
        cover_size=len(cover),
        nontrivial_size=len(cover) - trivial_count(g, cover, trivial),
        weight=cover_weight(cover),
        wall_ms=(time.perf_counter() - t0) * 1000.0,
        seed=seed,
    )
    for k, v in extra.items():
        setattr(st, k, v)
    return st


def basic_greedy(g: Graph, order=EdgeOrder.DEGREE, select="largest", trace=None, deadline: Deadline = UNBOUNDED):
    """Locally minimal cover; candidate sets are rebuilt from the cliques for every edge.

    ``trace(x, y, S_x, S_y, cover)`` is called before each uncovered edge is handled.
    """
    t0 = time.perf_counter()
    deadline.check()
    select = as_select(select)
    choose = select.chooser()
    cover = CliqueCover(g)
    cliques = cover.cliques
    tsi = 0
    for i, (x, y) in enumerate(edge_sequence(g, order)):
        if i % _CHECK_EVERY == 0:
            deadline.check()
        if cover.covered[g.edge_id(x, y)]:
            continue
        sx = {l for l, q in enumerate(cliques) if is_candidate(g, x, q)}
        sy = {l for l, q in enumerate(cliques) if is_candidate(g, y, q)}
        tsi += min(len(sx), len(sy))
        if trace is not None:
            trace(x, y, sx, sy, cover)
        common = sx & sy
        if common:
            cover.absorb(choose(common, cliques), x, y)
        else:
            cover.add((x, y))
    return cover, _stats(g, "basic", f"{EdgeOrder(order).value}/{select}", select.seed, cover, t0, ccs_tsi=tsi)


def _incremental(g, seq, select, deadline, trace, dv=None):
    """Shared loop of the improved and degeneracy variants.

    With ``dv`` given, the scan vertex is the earliest clique member in the
    ordering and only later neighbours are touched.
    """
    choose = select.chooser()
    cover = CliqueCover(g)
    cliques = cover.cliques
    adj = g.adj
    S = [set() for _ in range(g.n)]
    first = []
    total = peak = tsi = 0
    for i, (x, y) in enumerate(seq):
        if i % _CHECK_EVERY == 0:
            deadline.check()
        if cover.covered[g.edge_id(x, y)]:
            continue
        sx, sy = S[x], S[y]
        tsi += min(len(sx), len(sy))
        if trace is not None:
            trace(x, y, sx, sy, cover)
        common = sx & sy
        if common:
            l = choose(common, cliques)
            if dv is None:
                w = first[l]
                scan = adj[w]
            else:
                w = min(cliques[l], key=dv.position.__getitem__)
                scan = dv.later[w]
            nx, ny = adj[x], adj[y]
            for z in scan:
                if z == x or z == y:
                    continue
                if l in S[z] and not (z in nx and z in ny):
                    S[z].remove(l)
                    total -= 1
            cover.absorb(l, x, y)
        else:
            l = len(cliques)
            cover.add((x, y))
            first.append(x)
            if dv is None:
                reach = adj[x] & adj[y]
            else:
                if dv.position[x] > dv.position[y]:
                    x, y = y, x
                reach = {z for z in dv.later[x] if z in adj[y]}
            reach = set(reach)
            reach.add(x)
            reach.add(y)
            for z in reach:
                S[z].add(l)
            total += len(reach)
            if total > peak:
                peak = total
    return cover, S, peak, tsi


def improved_greedy(
    g: Graph,
    order=EdgeOrder.DEGREE,
    select="largest",
    postprocess: bool = True,
    trace=None,
    deadline: Deadline = UNBOUNDED,
):
    """Incremental candidate-set greedy ("CCSG"); post-processed to a minimal cover by default."""
    t0 = time.perf_counter()
    deadline.check()
    select = as_select(select)
    cover, S, peak, tsi = _incremental(g, edge_sequence(g, order), select, deadline, trace)
    if postprocess:
        cover = post_process(g, cover)
    st = _stats(g, "ccsg", f"{EdgeOrder(order).value}/{select}", select.seed, cover, t0, ccs_max=peak, ccs_tsi=tsi)
    st.final_ccs = sum(len(s) for s in S)
    return cover, st


def degeneracy_greedy(
    g: Graph,
    select="largest",
    postprocess: bool = False,
    dv=None,
    trace=None,
    deadline: Deadline = UNBOUNDED,
):
    """Degeneracy-ordered variant ("CCSD"): locally minimal, every clique has at most d+1 vertices."""
    t0 = time.perf_counter()
    deadline.check()
    select = as_select(select)
    if dv is None:
        dv = degeneracy_ordering(g)
    seq = edge_sequence(g, EdgeOrder.DEGENERACY, dv)
    cover, S, peak, tsi = _incremental(g, seq, select, deadline, trace, dv=dv)
    if postprocess:
        cover = post_process(g, cover)
    st = _stats(g, "ccsd", f"degeneracy/{select}", select.seed, cover, t0, ccs_max=peak, ccs_tsi=tsi, d=dv.degeneracy)
    st.final_ccs = sum(len(s) for s in S)
    return cover, st


def post_process(g: Graph, c) -> CliqueCover:
    """Drop, in creation order, every clique whose edges all appear elsewhere in the cover."""
    cliques = c.cliques if isinstance(c, CliqueCover) else list(c)
    app = {}
    for q in cliques:
        for e in combinations(sorted(q), 2):
            app[e] = app.get(e, 0) + 1
    if len(app) != g.m or any(not g.has_edge(x, y) for x, y in app):
        raise ValueError("post_process requires a full clique cover of the graph")
    kept = []
    for q in cliques:
        es = list(combinations(sorted(q), 2))
        if all(app[e] > 1 for e in es):
            for e in es:
                app[e] -= 1
        else:
            kept.append(set(q))
    return CliqueCover(g, kept)
