"""Undirected simple graphs, degeneracy orderings, G(n, p) generation and edge-list I/O."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


class GraphFormatError(ValueError):
    """Raised for malformed edge lists and self-loops."""


class SortedNeighbors:
    """Read-only sorted neighbour list with bisect membership.

    Used by the memory-saving ``mode="sorted"`` adjacency; supports the subset
    of the ``frozenset`` interface the solvers rely on.
    """

    __slots__ = ("_items",)

    def __init__(self, items):
        self._items = tuple(sorted(items))

    def __contains__(self, v):
        i = bisect.bisect_left(self._items, v)
        return i < len(self._items) and self._items[i] == v

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __and__(self, other):
        return {v for v in self._items if v in other}

    __rand__ = __and__

    def __sub__(self, other):
        return {v for v in self._items if v not in other}

    def isdisjoint(self, other):
        return not any(v in other for v in self._items)

    def __repr__(self):
        return f"SortedNeighbors({list(self._items)})"


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    ``adj[x]`` is the neighbour set of ``x``.  ``labels[x]`` is the original
    label of dense vertex ``x`` (identity unless the graph came from an edge
    list with sparse or shifted ids).
    """

    __slots__ = ("n", "m", "adj", "labels", "mode", "_edges", "_edge_index", "_csr")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]], labels=None, mode: str = "set"):
        if mode not in ("set", "sorted"):
            raise ValueError(f"unknown adjacency mode {mode!r}")
        if len(adjacency) != n:
            raise ValueError("adjacency length does not match vertex count")
        wrap = frozenset if mode == "set" else SortedNeighbors
        self.n = n
        self.adj = tuple(wrap(a) for a in adjacency)
        self.mode = mode
        total = 0
        for x, nbrs in enumerate(self.adj):
            if x in nbrs:
                raise GraphFormatError(f"self-loop on vertex {x}")
            for y in nbrs:
                if x not in self.adj[y]:
                    raise ValueError(f"asymmetric adjacency between {x} and {y}")
            total += len(nbrs)
        self.m = total // 2
        self.labels = tuple(range(n)) if labels is None else tuple(labels)
        self._edges = None
        self._edge_index = None
        self._csr = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def has_edge(self, x: int, y: int) -> bool:
        return y in self.adj[x]

    def degree(self, x: int) -> int:
        return len(self.adj[x])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        if self._edges is None:
            self._edges = [(x, y) for x in range(self.n) for y in sorted(self.adj[x]) if x < y]
        return self._edges

    @property
    def edge_index(self) -> dict[tuple[int, int], int]:
        if self._edge_index is None:
            self._edge_index = {e: i for i, e in enumerate(self.edges())}
        return self._edge_index

    def edge_id(self, x: int, y: int) -> int:
        return self.edge_index[(x, y) if x < y else (y, x)]

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` with each neighbour list sorted ascending."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for x in range(self.n):
                indptr[x + 1] = indptr[x] + len(self.adj[x])
            indices = np.empty(indptr[-1], dtype=np.int64)
            for x in range(self.n):
                indices[indptr[x]:indptr[x + 1]] = sorted(self.adj[x])
            self._csr = (indptr, indices)
        return self._csr

    def relabel_cliques(self, cliques):
        """Map cliques of dense ids back to original labels."""
        return [sorted(self.labels[v] for v in c) for c in cliques]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None, mode: str = "set") -> "Graph":
        """Build a graph from vertex-id pairs.

        Without ``n``, the distinct ids are remapped to dense ids in ascending
        label order.  With ``n``, ids are taken as dense already and vertices
        ``0..n-1`` that appear in no pair become isolated vertices.
        """
        pairs = []
        for e in edges:
            u, v = e
            if u == v:
                raise GraphFormatError(f"self-loop pair ({u}, {v})")
            if u < 0 or v < 0:
                raise GraphFormatError(f"negative vertex id in pair ({u}, {v})")
            pairs.append((u, v))
        if n is None:
            labels = sorted({v for p in pairs for v in p})
            remap = {lab: i for i, lab in enumerate(labels)}
            pairs = [(remap[u], remap[v]) for u, v in pairs]
            n = len(labels)
        else:
            labels = None
            if any(max(p) >= n for p in pairs):
                raise GraphFormatError(f"vertex id out of range for n={n}")
        adjacency = [set() for _ in range(n)]
        for u, v in pairs:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls(n, adjacency, labels=labels, mode=mode)


@dataclass(frozen=True)
class DegeneracyView:
    """A degeneracy ordering with inverse positions and later-neighbour lists.

    ``later[x]`` holds the neighbours of ``x`` that come after it, sorted by
    position in the ordering.
    """

    order: tuple[int, ...]
    position: tuple[int, ...]
    degeneracy: int
    later: tuple[tuple[int, ...], ...]

    def earlier(self, x: int, y: int) -> bool:
        return self.position[x] < self.position[y]


def degeneracy_ordering(g: Graph, use_jit=None) -> DegeneracyView:
    indptr, indices = g.csr()
    order, d = _kernels.peel_order(indptr, indices, g.n, use_jit=use_jit)
    order = tuple(int(v) for v in order)
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    later = tuple(
        tuple(sorted((y for y in g.adj[x] if position[y] > position[x]), key=position.__getitem__))
        for x in range(g.n)
    )
    return DegeneracyView(order=order, position=tuple(position), degeneracy=d, later=later)


def gnp_generate(n: int, p: float, seed: int) -> Graph:
    """Sample G(n, p): every unordered pair kept independently with probability ``p``.

    Pairs are drawn row by row from a PCG64 stream seeded with ``seed``, so the
    same ``(n, p, seed)`` always yields the same edge set.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed & 0xFFFFFFFFFFFFFFFF))
    adjacency = [set() for _ in range(n)]
    for u in range(n - 1):
        draws = rng.random(n - 1 - u)
        for off in np.flatnonzero(draws < p):
            v = u + 1 + int(off)
            adjacency[u].add(v)
            adjacency[v].add(u)
    return Graph(n, adjacency)


def trivial_cliques(g: Graph, use_jit=None) -> set[tuple[int, int]]:
    """Edges whose endpoints share no neighbour; each must be its own 2-clique."""
    edges = g.edges()
    if not edges:
        return set()
    indptr, indices = g.csr()
    arr = np.asarray(edges, dtype=np.int64)
    mask = _kernels.trivial_edge_mask(indptr, indices, arr[:, 0].copy(), arr[:, 1].copy(), use_jit=use_jit)
    return {edges[i] for i in np.flatnonzero(mask)}


def read_edge_list(path, mode: str = "set") -> Graph:
    """Parse a whitespace-separated ``u v`` edge list; ``#`` lines are comments."""
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphFormatError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"{path}:{lineno}: non-integer vertex id in {line!r}") from None
            if u == v:
                raise GraphFormatError(f"{path}:{lineno}: self-loop pair ({u}, {v})")
            pairs.append((u, v))
    return Graph.from_edges(pairs, mode=mode)


def write_edge_list(g: Graph, path, header: str | None = None) -> None:
    with open(Path(path), "w") as fh:
        if header:
            fh.write(f"# {header}\n")
        for u, v in g.edges():
            fh.write(f"{g.labels[u]} {g.labels[v]}\n")
