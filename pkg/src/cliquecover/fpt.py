"""Exact edge clique cover search trees parameterized by degeneracy and cover size.

Two decision procedures answer "is there a cover with at most k cliques?":

* :func:`cfpt_decide` grows cliques one edge at a time, branching over the
  candidate cliques shared by the endpoints of an uncovered edge, with a final
  branch that opens a new clique.  Mutations are undone through the W / x_l /
  y_l records rather than by copying state.
* :func:`mfpt_decide` branches over maximal cliques around an uncovered edge,
  restricted to later neighbours in the degeneracy ordering.

Trivial edges (no common neighbour) are emitted as 2-cliques before either
search starts and count against the budget.
"""
from __future__ import annotations

import sys
import time
from contextlib import contextmanager

from . import _kernels
from ._search import EXHAUSTED, FOUND, CandidateArrays
from .cover import CandidateCliqueSets, CliqueCover, candidate_sets_from_scratch, cover_weight
from .graph import DegeneracyView, Graph, degeneracy_ordering, trivial_cliques
from .mce import InducedSubgraphSpec, iter_maximal_cliques_containing_edge
from .stats import UNBOUNDED, Deadline, SearchStats

CFPT = "cfpt"
MFPT = "mfpt"
_CHECK_EVERY = 512
# nodes per jitted slice between deadline checks
_SLICE = 100_000
ENGINES = ("auto", "arrays", "sets")


@contextmanager
def _recursion_room(depth):
    old = sys.getrecursionlimit()
    need = 4 * depth + 1000
    if need > old:
        sys.setrecursionlimit(need)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class _Search:
    """State shared by both search trees: cover, covered flags, pending later-edge counts."""

    def __init__(self, g: Graph, dv: DegeneracyView, trivial, deadline: Deadline, debug: bool, stats: SearchStats):
        self.g = g
        self.dv = dv
        self.deadline = deadline
        self.debug = debug
        self.stats = stats
        self.cover = CliqueCover(g)
        # pending[x]: uncovered edges {x, y} with y later than x
        self.pending = [len(dv.later[x]) for x in range(g.n)]
        self.n_fixed = 0
        self._ticks = 0
        self._preload(trivial)

    def _preload(self, trivial):
        for x, y in sorted(trivial):
            self._open(x, y)
        self.n_fixed = len(self.cover)

    def _open(self, x, y):
        fresh = self.cover.add((x, y))
        self._covered(fresh)
        return fresh

    def _covered(self, fresh):
        edges = self.g.edges()
        pos = self.dv.position
        for e in fresh:
            u, v = edges[e]
            self.pending[u if pos[u] < pos[v] else v] -= 1

    def _uncovered(self, fresh):
        edges = self.g.edges()
        pos = self.dv.position
        for e in fresh:
            u, v = edges[e]
            self.pending[u if pos[u] < pos[v] else v] += 1
        self.cover.uncover(fresh)

    def _tick(self, depth):
        self.stats.visit(depth)
        self._ticks += 1
        if self._ticks % _CHECK_EVERY == 0:
            self.deadline.check()

    def _first_uncovered_later(self, x):
        cov = self.cover.covered
        eid = self.g.edge_id
        for y in self.dv.later[x]:
            if not cov[eid(x, y)]:
                return y
        raise AssertionError(f"pending count of {x} out of sync")

    def select_latest(self):
        """Uncovered ``{x, y}`` with ``y`` later than ``x`` and ``x`` as late as possible."""
        order, pending = self.dv.order, self.pending
        for i in range(len(order) - 1, -1, -1):
            x = order[i]
            if pending[x]:
                return x, self._first_uncovered_later(x)
        raise AssertionError("no uncovered edge")

    def select_earliest(self):
        """Uncovered ``{x, y}`` with ``y`` later than ``x`` and ``x`` as early as possible."""
        for x in self.dv.order:
            if self.pending[x]:
                return x, self._first_uncovered_later(x)
        raise AssertionError("no uncovered edge")

    def naive_selection(self, latest: bool):
        """Reference selection by full edge scan, used to test the pending counters."""
        pos = self.dv.position
        best = None
        for u, v in self.g.edges():
            if self.cover.is_covered(u, v):
                continue
            x, y = (u, v) if pos[u] < pos[v] else (v, u)
            key = (pos[x], -pos[y]) if latest else (-pos[x], -pos[y])
            if best is None or key > best[0]:
                best = (key, (x, y))
        return best[1]

    def result(self):
        return CliqueCover(self.g, [set(c) for c in self.cover.cliques])


class _CandidateSearch(_Search):
    """Candidate-clique-set search tree; with ``assignment=True`` it explores every cover
    and keeps the one of least total vertex count."""

    def __init__(self, *args, assignment=False, **kwargs):
        self.ccs = None
        self.assignment = assignment
        self.best = None
        self.best_weight = None
        super().__init__(*args, **kwargs)

    def _preload(self, trivial):
        self.ccs = CandidateCliqueSets(self.g.n)
        for x, y in sorted(trivial):
            self.add_new_clique(x, y)
        self.n_fixed = len(self.cover)

    def add_new_clique(self, x, y):
        g, ccs = self.g, self.ccs
        p = ccs.new_clique()
        fresh = self._open(x, y)
        for z in g.adj[x] & g.adj[y]:
            ccs.add(z, p)
        ccs.add(x, p)
        ccs.add(y, p)
        if ccs.total > self.stats.ccs_peak:
            self.stats.ccs_peak = ccs.total
        return fresh

    def remove_new_clique(self, fresh):
        self.ccs.drop_last()
        self.cover.cliques.pop()
        self._uncovered(fresh)

    def prepare(self, l, x, y):
        g, ccs = self.g, self.ccs
        ax, ay = g.adj[x], g.adj[y]
        W = [z for z in ccs.R[l] if z != x and z != y and (z not in ax or z not in ay)]
        for z in W:
            ccs.discard(z, l)
        c = self.cover.cliques[l]
        return W, x in c, y in c

    def restore(self, l, x, y, W, x_l, y_l, fresh):
        for z in W:
            self.ccs.add(z, l)
        c = self.cover.cliques[l]
        if not x_l:
            c.discard(x)
        if not y_l:
            c.discard(y)
        self._uncovered(fresh)

    def _check_node(self, x):
        pos = self.dv.position
        for c in self.cover.cliques[self.n_fixed:]:
            if any(pos[v] < pos[x] for v in c):
                raise AssertionError(f"clique {sorted(c)} reaches before x={x}")
        if not self.ccs.consistent():
            raise AssertionError("reverse index out of sync")
        scratch = candidate_sets_from_scratch(self.g, self.cover)
        if [set(s) for s in scratch.S] != self.ccs.S:
            raise AssertionError("candidate sets differ from definition")

    def _snapshot(self):
        return self.cover.snapshot(), self.ccs.snapshot(), list(self.pending)

    def run(self, k, depth=0):
        self._tick(depth)
        if self.cover.complete:
            if not self.assignment:
                return True
            w = cover_weight(self.cover)
            if self.best_weight is None or w < self.best_weight:
                self.best_weight = w
                self.best = [set(c) for c in self.cover.cliques]
            return False
        x, y = self.select_latest()
        if self.debug:
            self._check_node(x)
        S = self.ccs.S
        common = sorted(S[x] & S[y])
        self.stats.branches[len(common) + (1 if k > 0 else 0)] += 1
        for l in common:
            before = self._snapshot() if self.debug else None
            W, x_l, y_l = self.prepare(l, x, y)
            fresh = self.cover.absorb(l, x, y)
            self._covered(fresh)
            if self.run(k, depth + 1):
                return True
            self.restore(l, x, y, W, x_l, y_l, fresh)
            if self.debug and self._snapshot() != before:
                raise AssertionError("restore left state changed")
        if k > 0:
            before = self._snapshot() if self.debug else None
            fresh = self.add_new_clique(x, y)
            if self.run(k - 1, depth + 1):
                return True
            self.remove_new_clique(fresh)
            if self.debug and self._snapshot() != before:
                raise AssertionError("remove-new-clique left state changed")
        return False


class _MaximalSearch(_Search):
    def _check_node(self, x):
        pos = self.dv.position
        for u, v in self.g.edges():
            if min(pos[u], pos[v]) < pos[x] and not self.cover.is_covered(u, v):
                raise AssertionError(f"edge ({u}, {v}) before x={x} left uncovered")

    def run(self, k, depth=0):
        self._tick(depth)
        if self.cover.complete:
            return True
        if k <= 0:
            return False
        x, y = self.select_earliest()
        if self.debug:
            self._check_node(x)
        ay = self.g.adj[y]
        spec = InducedSubgraphSpec((x, y), frozenset(z for z in self.dv.later[x] if z in ay))
        tried = 0
        for clique in iter_maximal_cliques_containing_edge(self.g, spec):
            tried += 1
            fresh = self.cover.add(clique)
            self._covered(fresh)
            if self.run(k - 1, depth + 1):
                self.stats.branches[tried] += 1
                return True
            self.cover.cliques.pop()
            self._uncovered(fresh)
        self.stats.branches[tried] += 1
        return False


def _decide(search_cls, g, dv, k, deadline, debug, stats, trivial):
    if dv is None:
        dv = degeneracy_ordering(g)
    if stats is None:
        stats = SearchStats()
    if trivial is None:
        trivial = trivial_cliques(g)
    if k < len(trivial):
        return None
    s = search_cls(g, dv, trivial, deadline, debug, stats)
    t0 = time.perf_counter()
    with _recursion_room(dv.degeneracy * max(k, 1) + 2):
        ok = s.run(k - s.n_fixed)
    stats.wall_ms += (time.perf_counter() - t0) * 1000.0
    stats.iterations += 1
    return s.result() if ok else None


def _pick_engine(engine, g, dv, n_trivial, k, debug):
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "auto":
        # debug checks live in the set-based search only
        return "arrays" if (_kernels.HAS_NUMBA and not debug and CandidateArrays.fits(g, dv, n_trivial, k)) else "sets"
    return engine


def _run_arrays(g, dv, k, deadline, stats, trivial, assignment=False):
    """Drive the array search in slices, checking the deadline between them."""
    t0 = time.perf_counter()
    arr = CandidateArrays(g, dv, trivial, k, assignment=assignment)
    try:
        while True:
            status = arr.step(_SLICE, use_jit=_kernels.HAS_NUMBA)
            if status in (EXHAUSTED, FOUND):
                break
            deadline.check()
    finally:
        stats.nodes_visited += arr.nodes
        stats.max_depth = max(stats.max_depth, arr.max_depth)
        stats.ccs_peak = max(stats.ccs_peak, arr.ccs_peak)
        stats.branches.update(arr.branch_counts())
        stats.wall_ms += (time.perf_counter() - t0) * 1000.0
        stats.iterations += 1
    if assignment:
        return arr.best()
    return CliqueCover(g, arr.cliques()) if status == FOUND else None


def cfpt_decide(g: Graph, dv: DegeneracyView | None, k: int, deadline: Deadline = UNBOUNDED,
                debug: bool = False, stats: SearchStats | None = None, trivial=None, engine: str = "auto"):
    """A cover with at most ``k`` cliques, or ``None`` if none exists.

    ``engine`` picks the set-based search (``"sets"``, required for ``debug``)
    or the array search (``"arrays"``, jitted when numba is available); both
    visit the same nodes in the same order.
    """
    if dv is None:
        dv = degeneracy_ordering(g)
    if trivial is None:
        trivial = trivial_cliques(g)
    if _pick_engine(engine, g, dv, len(trivial), k, debug) == "sets":
        return _decide(_CandidateSearch, g, dv, k, deadline, debug, stats, trivial)
    if k < len(trivial):
        return None
    if stats is None:
        stats = SearchStats()
    return _run_arrays(g, dv, k, deadline, stats, trivial)


def mfpt_decide(g: Graph, dv: DegeneracyView | None, k: int, deadline: Deadline = UNBOUNDED,
                debug: bool = False, stats: SearchStats | None = None, trivial=None):
    """A cover with at most ``k`` cliques, or ``None`` if none exists."""
    return _decide(_MaximalSearch, g, dv, k, deadline, debug, stats, trivial)


def minimum_cover(g: Graph, algo: str = MFPT, dv: DegeneracyView | None = None,
                  deadline: Deadline = UNBOUNDED, debug: bool = False, engine: str = "auto"):
    """Smallest cover found by raising ``k`` until the decision procedure succeeds.

    ``k`` starts at the number of trivial edges (at least 1), since those are
    forced cliques.  Returns ``(cover, stats)``; stats aggregate all attempts.
    """
    if algo not in (CFPT, MFPT):
        raise ValueError(f"unknown search {algo!r}")
    stats = SearchStats()
    t0 = time.perf_counter()
    deadline.check()
    if g.m == 0:
        stats.k_found = 0
        return CliqueCover(g), stats
    if dv is None:
        dv = degeneracy_ordering(g)
    trivial = trivial_cliques(g)
    for k in range(max(1, len(trivial)), g.m + 1):
        if algo == CFPT:
            cover = cfpt_decide(g, dv, k, deadline, debug, stats, trivial, engine)
        else:
            cover = mfpt_decide(g, dv, k, deadline, debug, stats, trivial)
        if cover is not None:
            stats.k_found = k
            stats.wall_ms = (time.perf_counter() - t0) * 1000.0
            return cover, stats
    raise AssertionError("no cover within m cliques")


def assignment_minimum(g: Graph, dv: DegeneracyView | None = None, deadline: Deadline = UNBOUNDED,
                       debug: bool = False, stats: SearchStats | None = None, engine: str = "auto") -> CliqueCover:
    """Cover of least total vertex count, by exhausting the candidate-set search tree with k = m."""
    if stats is None:
        stats = SearchStats()
    if g.m == 0:
        return CliqueCover(g)
    if dv is None:
        dv = degeneracy_ordering(g)
    trivial = trivial_cliques(g)
    if _pick_engine(engine, g, dv, len(trivial), g.m, debug) == "arrays":
        best = _run_arrays(g, dv, g.m, deadline, stats, trivial, assignment=True)
        stats.k_found = len(best)
        return CliqueCover(g, best)
    s = _CandidateSearch(g, dv, trivial, deadline, debug, stats, assignment=True)
    t0 = time.perf_counter()
    with _recursion_room(dv.degeneracy * g.m + 2):
        s.run(g.m - s.n_fixed)
    stats.wall_ms += (time.perf_counter() - t0) * 1000.0
    stats.k_found = len(s.best)
    return CliqueCover(g, s.best)
