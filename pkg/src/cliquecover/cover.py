"""Clique covers, candidate clique sets, and structural validators."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph


class InvalidCliqueError(ValueError):
    pass


class CliqueCover:
    """Cliques in creation order plus a covered flag per edge of the host graph."""

    def __init__(self, g: Graph, cliques=()):
        self.graph = g
        self.cliques: list[set[int]] = []
        self.covered = bytearray(g.m)
        self.n_covered = 0
        for c in cliques:
            self.add(c)

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def __repr__(self):
        return f"CliqueCover({[sorted(c) for c in self.cliques]})"

    def _mark(self, x, y, fresh):
        e = self.graph.edge_id(x, y)
        if not self.covered[e]:
            self.covered[e] = 1
            self.n_covered += 1
            fresh.append(e)

    def add(self, vertices) -> list[int]:
        """Append a clique; returns ids of edges it newly covers."""
        c = set(vertices)
        fresh = []
        for x, y in combinations(sorted(c), 2):
            self._mark(x, y, fresh)
        self.cliques.append(c)
        return fresh

    def absorb(self, l: int, x: int, y: int) -> list[int]:
        """Insert ``x`` and ``y`` into clique ``l``; returns newly covered edge ids."""
        c = self.cliques[l]
        fresh = []
        for v in (x, y):
            if v not in c:
                for z in c:
                    self._mark(v, z, fresh)
                c.add(v)
        if x not in c or y not in c:
            raise AssertionError("absorb failed")
        self._mark(x, y, fresh)
        return fresh

    def uncover(self, edge_ids) -> None:
        for e in edge_ids:
            self.covered[e] = 0
        self.n_covered -= len(edge_ids)

    def is_covered(self, x: int, y: int) -> bool:
        return bool(self.covered[self.graph.edge_id(x, y)])

    @property
    def complete(self) -> bool:
        return self.n_covered == self.graph.m

    def snapshot(self):
        return [frozenset(c) for c in self.cliques], bytes(self.covered)


def _clique_list(c):
    return c.cliques if isinstance(c, CliqueCover) else list(c)


def cover_weight(c) -> int:
    """Total vertex count summed over cliques."""
    return sum(len(q) for q in _clique_list(c))


def check_clique(g: Graph, clique) -> None:
    for x, y in combinations(sorted(clique), 2):
        if not g.has_edge(x, y):
            lab = g.labels
            raise InvalidCliqueError(
                f"clique {sorted(lab[v] for v in clique)} contains non-edge ({lab[x]}, {lab[y]})"
            )


def is_cover(g: Graph, c) -> bool:
    """True iff every edge of ``g`` lies in some clique; every clique is checked for completeness."""
    seen = set()
    for q in _clique_list(c):
        check_clique(g, q)
        for x, y in combinations(sorted(q), 2):
            seen.add((x, y))
    return len(seen) == g.m


class CandidateCliqueSets:
    """Per-vertex candidate sets ``S[x]`` with reverse index ``R[l]``."""

    def __init__(self, n: int):
        self.S: list[set[int]] = [set() for _ in range(n)]
        self.R: list[set[int]] = []
        self.total = 0

    def new_clique(self) -> int:
        self.R.append(set())
        return len(self.R) - 1

    def add(self, z: int, l: int) -> None:
        if l not in self.S[z]:
            self.S[z].add(l)
            self.R[l].add(z)
            self.total += 1

    def discard(self, z: int, l: int) -> None:
        if l in self.S[z]:
            self.S[z].remove(l)
            self.R[l].discard(z)
            self.total -= 1

    def drop_last(self) -> None:
        l = len(self.R) - 1
        for z in self.R[l]:
            self.S[z].discard(l)
        self.total -= len(self.R[l])
        self.R.pop()

    def consistent(self) -> bool:
        pairs_s = {(z, l) for z, s in enumerate(self.S) for l in s}
        pairs_r = {(z, l) for l, r in enumerate(self.R) for z in r}
        return pairs_s == pairs_r and self.total == len(pairs_s)

    def snapshot(self):
        return [frozenset(s) for s in self.S], [frozenset(r) for r in self.R]


def is_candidate(g: Graph, x: int, clique) -> bool:
    """Clique is a candidate of ``x``: contains it, or sits inside its neighbourhood."""
    if x in clique:
        return True
    nbrs = g.adj[x]
    return all(v in nbrs for v in clique)


def candidate_sets_from_scratch(g: Graph, c) -> CandidateCliqueSets:
    cliques = _clique_list(c)
    ccs = CandidateCliqueSets(g.n)
    for l, q in enumerate(cliques):
        ccs.new_clique()
        for x in range(g.n):
            if is_candidate(g, x, q):
                ccs.add(x, l)
    return ccs


@dataclass
class LocalMinimalityReport:
    """Violations of the three necessary conditions for a locally minimal cover.

    * ``over_used``: ``(x, appearances, degree)`` where x is in more cliques than it has neighbours
    * ``nested``: ``(i, j)`` where clique i is a subset of clique j
    * ``fully_joined``: ``(i, j)`` where no cross pair of distinct vertices is a non-edge
    """

    over_used: list = field(default_factory=list)
    nested: list = field(default_factory=list)
    fully_joined: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.over_used or self.nested or self.fully_joined)


def _has_non_edge_between(g, a, b):
    for x in a:
        nbrs = g.adj[x]
        for y in b:
            if x != y and y not in nbrs:
                return True
    return False


def validate_locally_minimal_characterizations(g: Graph, c) -> LocalMinimalityReport:
    cliques = _clique_list(c)
    report = LocalMinimalityReport()
    count = [0] * g.n
    for q in cliques:
        for v in q:
            count[v] += 1
    for x in range(g.n):
        if count[x] > g.degree(x):
            report.over_used.append((x, count[x], g.degree(x)))
    for i, j in combinations(range(len(cliques)), 2):
        a, b = cliques[i], cliques[j]
        if a <= b:
            report.nested.append((i, j))
        elif b <= a:
            report.nested.append((j, i))
        if not _has_non_edge_between(g, a, b):
            report.fully_joined.append((i, j))
    return report


def clique_edges(q) -> set[tuple[int, int]]:
    return set(combinations(sorted(q), 2))


def redundant_by_few(g: Graph, c, max_helpers: int = 2):
    """Find a clique whose edges are all inside the union of at most ``max_helpers`` others.

    Returns ``(l, helpers)`` for the first hit, or ``None``.  A locally minimal
    cover never has one with ``max_helpers=2``.
    """
    cliques = _clique_list(c)
    edge_sets = [clique_edges(q) for q in cliques]
    k = len(cliques)
    for l in range(k):
        others = [i for i in range(k) if i != l]
        for r in range(1, max_helpers + 1):
            for helpers in combinations(others, r):
                union = set().union(*(edge_sets[i] for i in helpers))
                if edge_sets[l] <= union:
                    return l, helpers
    return None


def edge_appearance_total(c) -> int:
    """Sum over edges of the number of cliques containing that edge."""
    return sum(len(q) * (len(q) - 1) // 2 for q in _clique_list(c))


def trivial_count(g: Graph, c, trivial=None) -> int:
    """Number of cliques that are trivial edges of ``g``."""
    from .graph import trivial_cliques

    if trivial is None:
        trivial = trivial_cliques(g)
    n = 0
    for q in _clique_list(c):
        if len(q) == 2:
            x, y = sorted(q)
            if (x, y) in trivial:
                n += 1
    return n


def write_cover(path, g: Graph, c) -> None:
    cliques = _clique_list(c)
    with open(path, "w") as fh:
        fh.write(f"# cliques={len(cliques)} weight={cover_weight(cliques)}\n")
        for labels in g.relabel_cliques(cliques):
            fh.write(" ".join(str(v) for v in labels) + "\n")


def read_cover(path, g: Graph) -> list[set[int]]:
    """Parse a cover file written by :func:`write_cover` back into dense-id cliques."""
    index = {lab: i for i, lab in enumerate(g.labels)}
    cliques = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                cliques.append({index[int(tok)] for tok in line.split()})
            except (KeyError, ValueError) as exc:
                raise InvalidCliqueError(f"unknown vertex in cover line {line!r}") from exc
    return cliques
