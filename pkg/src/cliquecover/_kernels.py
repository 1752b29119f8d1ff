"""Array kernels over CSR adjacency, with a numba path and a pure Python/numpy path.

Set ``CLIQUECOVER_DISABLE_JIT=1`` to force the fallback.  Both paths must give
bit-identical results; ``tests/test_kernels.py`` checks that.
"""
import heapq
import os

import numpy as np

_DISABLED = os.environ.get("CLIQUECOVER_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("disabled by CLIQUECOVER_DISABLE_JIT")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def backend():
    return "numba" if HAS_NUMBA else "python"


# -- degeneracy peeling ------------------------------------------------------


def _peel_python(indptr, indices, n):
    # Min-heap keyed by degree * n + vertex: lowest degree first, lowest id on ties.
    # Stale entries are skipped lazily; (degree, vertex) pairs are never pushed twice.
    deg = np.diff(indptr).astype(np.int64)
    removed = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int64)
    heap = [int(deg[v]) * n + v for v in range(n)]
    heapq.heapify(heap)
    d = 0
    i = 0
    while heap:
        key = heapq.heappop(heap)
        v = key % n
        if removed[v] or key // n != deg[v]:
            continue
        removed[v] = True
        order[i] = v
        i += 1
        if deg[v] > d:
            d = int(deg[v])
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, int(deg[u]) * n + int(u))
    return order, d


def _heap_push(heap, size, key):
    i = size
    heap[i] = key
    while i > 0:
        parent = (i - 1) >> 1
        if heap[parent] <= heap[i]:
            break
        heap[parent], heap[i] = heap[i], heap[parent]
        i = parent
    return size + 1


def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        child = left
        if left + 1 < size and heap[left + 1] < heap[left]:
            child = left + 1
        if heap[i] <= heap[child]:
            break
        heap[i], heap[child] = heap[child], heap[i]
        i = child
    return top, size


def _peel_array(indptr, indices, n):
    deg = np.empty(n, dtype=np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    removed = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int64)
    heap = np.empty(n + indices.shape[0] + 1, dtype=np.int64)
    size = 0
    for v in range(n):
        size = _heap_push(heap, size, deg[v] * n + v)
    d = 0
    i = 0
    while size > 0:
        key, size = _heap_pop(heap, size)
        v = key % n
        if removed[v] or key // n != deg[v]:
            continue
        removed[v] = True
        order[i] = v
        i += 1
        if deg[v] > d:
            d = deg[v]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if not removed[u]:
                deg[u] -= 1
                size = _heap_push(heap, size, deg[u] * n + u)
    return order, d


# -- common-neighbour test per edge ------------------------------------------


def _trivial_python(indptr, indices, us, vs):
    out = np.zeros(us.shape[0], dtype=np.bool_)
    nbrs = [set(indices[indptr[v]:indptr[v + 1]].tolist()) for v in range(indptr.shape[0] - 1)]
    for e in range(us.shape[0]):
        out[e] = nbrs[us[e]].isdisjoint(nbrs[vs[e]])
    return out


def _trivial_array(indptr, indices, us, vs):
    # Neighbour lists are sorted, so a merge scan finds any shared vertex.
    out = np.zeros(us.shape[0], dtype=np.bool_)
    for e in range(us.shape[0]):
        a, a_end = indptr[us[e]], indptr[us[e] + 1]
        b, b_end = indptr[vs[e]], indptr[vs[e] + 1]
        shared = False
        while a < a_end and b < b_end:
            if indices[a] == indices[b]:
                shared = True
                break
            if indices[a] < indices[b]:
                a += 1
            else:
                b += 1
        out[e] = not shared
    return out


if HAS_NUMBA:
    _heap_push = njit(cache=True)(_heap_push)
    _heap_pop = njit(cache=True)(_heap_pop)
    _peel_jit = njit(cache=True)(_peel_array)
    _trivial_jit = njit(cache=True)(_trivial_array)


def peel_order(indptr, indices, n, use_jit=None):
    """Degeneracy order by repeated min-degree removal; returns ``(order, d)``."""
    if n == 0:
        return np.empty(0, dtype=np.int64), 0
    if use_jit is None:
        use_jit = HAS_NUMBA
    if use_jit:
        order, d = _peel_jit(indptr, indices, n)
    else:
        order, d = _peel_python(indptr, indices, n)
    return order, int(d)


def trivial_edge_mask(indptr, indices, us, vs, use_jit=None):
    """``mask[e]`` is True when edge ``(us[e], vs[e])`` has no common neighbour."""
    if us.shape[0] == 0:
        return np.zeros(0, dtype=np.bool_)
    if use_jit is None:
        use_jit = HAS_NUMBA
    if use_jit:
        return _trivial_jit(indptr, indices, us, vs)
    return _trivial_python(indptr, indices, us, vs)


def warmup():
    """Compile the jitted kernels on a toy input so later timings exclude compilation."""
    if not HAS_NUMBA:
        return
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    peel_order(indptr, indices, 2)
    trivial_edge_mask(indptr, indices, np.array([0], dtype=np.int64), np.array([1], dtype=np.int64))
    from .fpt import CFPT, minimum_cover
    from .graph import Graph

    minimum_cover(Graph.from_edges([(0, 1), (1, 2), (0, 2)]), CFPT, engine="arrays")
